//! The three decision procedures and their parameter formulas.
//!
//! * Learn+RES learns a clause table from the first `m0` samples, narrows
//!   the query with it, and tries a width-`2w` refutation of the restricted
//!   `φ' ∧ ψ` on each of the last `m1` samples.
//! * CNF-Eval learns with a stricter threshold and only checks whether some
//!   narrowed clause is witnessed false on each testing sample.
//! * The uniform decider skips learning and refutes `φ|ρ` at width `w`.
//!
//! Testing samples are processed in fixed chunks; within a chunk all
//! outcomes are computed (possibly in parallel), then scanned in order, and
//! the scan stops at the first sample that pushes the failure count past the
//! bound. The outcome list therefore ends at the same index whatever the
//! execution mode.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::GapReport;
use crate::exec::Execution;
use crate::learner::{floor_fraction_of, learn_clause_table, narrow_cnf, LearnedTable};
use crate::logic::{Clause, Cnf, PartialAssignment, RestrictedCnf};
use crate::resolution::w_refute;

/// Largest sample count or width a formula may produce.
pub const MAX_FORMULA_VALUE: u64 = 1 << 40;

/// Testing samples evaluated per scheduling unit.
pub const DECISION_CHUNK: usize = 64;

/// Width multiplier used by the uniform decider: `w = ⌈(c/μ) ln(2·m·p_n/δ)⌉`
/// with balance `1/2`, so `c = 1/β = 2`.
pub const UNIFORM_WIDTH_CONSTANT: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("override {0} must be a positive integer")]
    ZeroOverride(&'static str),
    #[error("proof-size bound must be at least 1")]
    ZeroProofBound,
    #[error("{name} from its formula is {value:e}, beyond the supported maximum {MAX_FORMULA_VALUE}; supply an override")]
    Unbounded { name: &'static str, value: f64 },
    #[error("{0}")]
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeciderError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("got {got} samples, the run needs {expected}")]
    SampleCount { got: usize, expected: usize },
    #[error("sample {index} has {got} coordinates, expected {expected}")]
    SampleLength { index: usize, got: usize, expected: usize },
    #[error("query has {query} variables, configuration says {n}")]
    QueryVars { query: usize, n: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overrides {
    pub w: Option<usize>,
    pub m0: Option<usize>,
    pub m1: Option<usize>,
}

impl Overrides {
    pub fn any(&self) -> bool {
        self.w.is_some() || self.m0.is_some() || self.m1.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mu: f64,
    pub beta: f64,
    pub gamma: f64,
    pub eps: f64,
    pub delta: f64,
    /// Bound on the size of the refutations searched for.
    pub p_n: u64,
    pub n: usize,
    pub overrides: Overrides,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in
            [("mu", self.mu), ("beta", self.beta), ("gamma", self.gamma), ("eps", self.eps), ("delta", self.delta)]
        {
            if !(0.0..=1.0).contains(&value) {
                return Err(ParamError::InvalidProbability { name, value });
            }
        }
        if self.p_n == 0 {
            return Err(ParamError::ZeroProofBound);
        }
        let o = &self.overrides;
        for (name, v) in [("w", o.w), ("m0", o.m0), ("m1", o.m1)] {
            if v == Some(0) {
                return Err(ParamError::ZeroOverride(name));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParameterSource {
    TheoryFaithful,
    Overridden,
}

impl ParameterSource {
    fn of(overridden: bool) -> Self {
        if overridden {
            ParameterSource::Overridden
        } else {
            ParameterSource::TheoryFaithful
        }
    }
}

/// `⌈x⌉` as a count, at least 1.
fn ceil_count(name: &'static str, x: f64) -> Result<usize, ParamError> {
    if !x.is_finite() || x > MAX_FORMULA_VALUE as f64 {
        return Err(ParamError::Unbounded { name, value: x });
    }
    Ok((x.ceil() as usize).max(1))
}

fn pick(name: &'static str, over: Option<usize>, formula: impl FnOnce() -> f64) -> Result<usize, ParamError> {
    match over {
        Some(v) => Ok(v),
        None => ceil_count(name, formula()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearnResParams {
    pub w: usize,
    pub m0: usize,
    pub m1: usize,
    pub learn_threshold_fraction: f64,
    pub source: ParameterSource,
}

pub fn learnres_m1(gamma: f64, delta: f64) -> f64 {
    (1.0 / (2.0 * gamma * gamma)) * (2.0 / delta).ln()
}

pub fn learnres_w(mu: f64, beta: f64, m1: usize, p_n: u64, delta: f64) -> f64 {
    (1.0 / (mu * beta)) * (2.0 * m1 as f64 * p_n as f64 / delta).ln()
}

pub fn learnres_m0(n: usize, w: usize, mu: f64, gamma: f64, delta: f64) -> f64 {
    let b = (2 * n + 1) as f64;
    let w2 = 2.0 * w as f64;
    (w2 * b.powf(w2) / (mu.powf(w2) * gamma * gamma)) * (4.0 * b / delta).ln()
}

pub fn learnres_threshold(n: usize, w: usize, mu: f64, gamma: f64) -> f64 {
    gamma * mu.powi(w as i32) / (2.0 * ((2 * n + 1) as f64).powi(w as i32))
}

/// Parameters of Learn+RES: `m1` first, then `w` from the `m1` in use,
/// then `m0` from that `w`. Each may be overridden.
pub fn params_learnres(cfg: &RunConfig) -> Result<LearnResParams, ParamError> {
    cfg.validate()?;
    let o = cfg.overrides;
    let m1 = pick("m1", o.m1, || learnres_m1(cfg.gamma, cfg.delta))?;
    let w = pick("w", o.w, || learnres_w(cfg.mu, cfg.beta, m1, cfg.p_n, cfg.delta))?;
    let m0 = pick("m0", o.m0, || learnres_m0(cfg.n, w, cfg.mu, cfg.gamma, cfg.delta))?;
    Ok(LearnResParams {
        w,
        m0,
        m1,
        learn_threshold_fraction: learnres_threshold(cfg.n, w, cfg.mu, cfg.gamma),
        source: ParameterSource::of(o.any()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CnfEvalParams {
    pub w: usize,
    pub m0: usize,
    pub m1: usize,
    pub learn_threshold_fraction: f64,
    pub reject_fraction: f64,
    pub source: ParameterSource,
}

pub fn cnfeval_w(beta: f64, clauses: usize, gamma: f64) -> f64 {
    (2.0 / beta) * (4.0 * clauses as f64 / gamma).ln()
}

pub fn cnfeval_m0(n: usize, w: usize, mu: f64, gamma: f64, delta: f64) -> f64 {
    let b = (2 * n + 1) as f64;
    let w = w as f64;
    (32.0 * w * b.powf(2.0 * w) / (mu.powf(4.0 * w) * gamma * gamma)) * ((4 * n + 2) as f64 / delta).ln()
}

pub fn cnfeval_m1(w: usize, mu: f64, gamma: f64, delta: f64) -> f64 {
    let s = mu.powi(w as i32) * gamma;
    (32.0 / (s * s)) * (2.0 / delta).ln()
}

pub fn cnfeval_threshold(n: usize, w: usize, mu: f64, gamma: f64) -> f64 {
    gamma * mu.powi(2 * w as i32) / (4.0 * ((2 * n + 1) as f64).powi(w as i32))
}

pub fn cnfeval_reject_fraction(w: usize, mu: f64, gamma: f64) -> f64 {
    5.0 * mu.powi(w as i32) * gamma / 8.0
}

pub fn params_cnfeval(cfg: &RunConfig, clauses: usize) -> Result<CnfEvalParams, ParamError> {
    cfg.validate()?;
    let o = cfg.overrides;
    if clauses == 0 && o.w.is_none() {
        return Err(ParamError::NotApplicable("the CNF-Eval width formula needs at least one clause".into()));
    }
    let w = pick("w", o.w, || cnfeval_w(cfg.beta, clauses, cfg.gamma))?;
    let m0 = pick("m0", o.m0, || cnfeval_m0(cfg.n, w, cfg.mu, cfg.gamma, cfg.delta))?;
    let m1 = pick("m1", o.m1, || cnfeval_m1(w, cfg.mu, cfg.gamma, cfg.delta))?;
    Ok(CnfEvalParams {
        w,
        m0,
        m1,
        learn_threshold_fraction: cnfeval_threshold(cfg.n, w, cfg.mu, cfg.gamma),
        reject_fraction: cnfeval_reject_fraction(w, cfg.mu, cfg.gamma),
        source: ParameterSource::of(o.any()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformParams {
    pub m: usize,
    pub w: usize,
    pub width_constant: f64,
    pub source: ParameterSource,
}

pub fn uniform_m(gamma: f64, delta: f64) -> f64 {
    (1.0 / (gamma * gamma)) * (1.0 / delta).ln()
}

pub fn uniform_w(mu: f64, m: usize, p_n: u64, delta: f64) -> f64 {
    (UNIFORM_WIDTH_CONSTANT / mu) * (2.0 * m as f64 * p_n as f64 / delta).ln()
}

/// The uniform decider has a single sample phase; its size is overridden
/// through `m1`.
pub fn params_uniform(cfg: &RunConfig) -> Result<UniformParams, ParamError> {
    cfg.validate()?;
    let o = cfg.overrides;
    if o.m0.is_some() {
        return Err(ParamError::NotApplicable("the uniform decider has no training phase; use m1 for the sample count".into()));
    }
    let m = pick("m", o.m1, || uniform_m(cfg.gamma, cfg.delta))?;
    let w = pick("w", o.w, || uniform_w(cfg.mu, m, cfg.p_n, cfg.delta))?;
    Ok(UniformParams { m, w, width_constant: UNIFORM_WIDTH_CONSTANT, source: ParameterSource::of(o.any()) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeciderKind {
    LearnRes,
    CnfEval,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Accept,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleOutcome {
    /// The restriction contains the empty clause.
    Bottom,
    Refuted,
    /// No refutation within the width bound.
    Failed,
    /// Some narrowed clause is witnessed false.
    Falsified,
    NotFalsified,
}

impl SampleOutcome {
    pub fn counts_against(self) -> bool {
        matches!(self, SampleOutcome::Failed | SampleOutcome::Falsified)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub decider: DeciderKind,
    pub decision: Decision,
    pub parameter_source: ParameterSource,
    pub config: RunConfig,
    pub w: usize,
    /// Width handed to the refutation search, when there is one.
    pub refute_width: Option<usize>,
    pub width_constant: Option<f64>,
    pub m0: usize,
    pub m1: usize,
    pub learn_threshold_fraction: Option<f64>,
    pub learn_threshold_count: Option<u64>,
    pub reject_fraction: f64,
    /// Reject once the failure count exceeds this.
    pub reject_above: u64,
    pub learned_clause_count: Option<usize>,
    pub narrowed_query: Option<Vec<Clause>>,
    pub failures: u64,
    /// One entry per testing sample examined, in order.
    pub outcomes: Vec<SampleOutcome>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<GapReport>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub report: RunReport,
    pub table: Option<LearnedTable>,
}

fn check_inputs(phi: &Cnf, cfg: &RunConfig, samples: &[PartialAssignment], expected: usize) -> Result<(), DeciderError> {
    if phi.num_vars() != cfg.n {
        return Err(DeciderError::QueryVars { query: phi.num_vars(), n: cfg.n });
    }
    if samples.len() != expected {
        return Err(DeciderError::SampleCount { got: samples.len(), expected });
    }
    if let Some((index, s)) = samples.iter().enumerate().find(|(_, s)| s.len() != cfg.n) {
        return Err(DeciderError::SampleLength { index, got: s.len(), expected: cfg.n });
    }
    Ok(())
}

/// Evaluate testing samples chunk by chunk and stop once failures exceed
/// `bound`.
fn scan<F>(samples: &[PartialAssignment], bound: u64, exec: Execution, f: F) -> (Vec<SampleOutcome>, u64, Decision)
where
    F: Fn(&PartialAssignment) -> SampleOutcome + Sync + Send,
{
    let mut outcomes = Vec::with_capacity(samples.len());
    let mut failures = 0u64;
    for chunk in samples.chunks(DECISION_CHUNK) {
        for outcome in exec.map(chunk, &f) {
            outcomes.push(outcome);
            failures += outcome.counts_against() as u64;
            if failures > bound {
                return (outcomes, failures, Decision::Reject);
            }
        }
    }
    (outcomes, failures, Decision::Accept)
}

fn refute_outcome(phi: &Cnf, rho: &PartialAssignment, w: usize) -> SampleOutcome {
    match phi.restrict(rho).expect("sample lengths checked") {
        RestrictedCnf::Bottom => SampleOutcome::Bottom,
        RestrictedCnf::Cnf(r) if w_refute(&r, w).is_refuted() => SampleOutcome::Refuted,
        RestrictedCnf::Cnf(_) => SampleOutcome::Failed,
    }
}

pub fn learn_res(
    phi: &Cnf,
    cfg: &RunConfig,
    samples: &[PartialAssignment],
    exec: Execution,
) -> Result<RunOutput, DeciderError> {
    let start = Instant::now();
    let p = params_learnres(cfg)?;
    check_inputs(phi, cfg, samples, p.m0 + p.m1)?;
    let (train, test) = samples.split_at(p.m0);
    let threshold = floor_fraction_of(p.learn_threshold_fraction, p.m0 as u64);
    let table = learn_clause_table(train, cfg.n, p.w.min(cfg.n), threshold, exec).expect("inputs checked");
    let narrowed = narrow_cnf(phi, &table);
    let combined = narrowed.conjoin(&table.to_clauses()).expect("same variable count");
    let bound = floor_fraction_of(cfg.eps, p.m1 as u64);
    let refute_width = 2 * p.w;
    let (outcomes, failures, decision) = scan(test, bound, exec, |rho| refute_outcome(&combined, rho, refute_width));
    let report = RunReport {
        decider: DeciderKind::LearnRes,
        decision,
        parameter_source: p.source,
        config: cfg.clone(),
        w: p.w,
        refute_width: Some(refute_width),
        width_constant: None,
        m0: p.m0,
        m1: p.m1,
        learn_threshold_fraction: Some(p.learn_threshold_fraction),
        learn_threshold_count: Some(threshold),
        reject_fraction: cfg.eps,
        reject_above: bound,
        learned_clause_count: Some(table.len()),
        narrowed_query: Some(narrowed.clauses().to_vec()),
        failures,
        outcomes,
        seed: cfg.seed,
        audit: None,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(RunOutput { report, table: Some(table) })
}

pub fn cnf_eval(
    phi: &Cnf,
    cfg: &RunConfig,
    samples: &[PartialAssignment],
    exec: Execution,
) -> Result<RunOutput, DeciderError> {
    let start = Instant::now();
    let p = params_cnfeval(cfg, phi.len())?;
    check_inputs(phi, cfg, samples, p.m0 + p.m1)?;
    let (train, test) = samples.split_at(p.m0);
    let threshold = floor_fraction_of(p.learn_threshold_fraction, p.m0 as u64);
    let table = learn_clause_table(train, cfg.n, p.w.min(cfg.n), threshold, exec).expect("inputs checked");
    let narrowed = narrow_cnf(phi, &table);
    let bound = floor_fraction_of(p.reject_fraction, p.m1 as u64);
    let (outcomes, failures, decision) = scan(test, bound, exec, |rho| {
        if narrowed.witnessed_false(rho) {
            SampleOutcome::Falsified
        } else {
            SampleOutcome::NotFalsified
        }
    });
    let report = RunReport {
        decider: DeciderKind::CnfEval,
        decision,
        parameter_source: p.source,
        config: cfg.clone(),
        w: p.w,
        refute_width: None,
        width_constant: None,
        m0: p.m0,
        m1: p.m1,
        learn_threshold_fraction: Some(p.learn_threshold_fraction),
        learn_threshold_count: Some(threshold),
        reject_fraction: p.reject_fraction,
        reject_above: bound,
        learned_clause_count: Some(table.len()),
        narrowed_query: Some(narrowed.clauses().to_vec()),
        failures,
        outcomes,
        seed: cfg.seed,
        audit: None,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(RunOutput { report, table: Some(table) })
}

/// `samples` should come from the masked uniform distribution; the decider
/// has no way to check that.
pub fn uniform_decider(
    phi: &Cnf,
    cfg: &RunConfig,
    samples: &[PartialAssignment],
    exec: Execution,
) -> Result<RunOutput, DeciderError> {
    let start = Instant::now();
    let p = params_uniform(cfg)?;
    check_inputs(phi, cfg, samples, p.m)?;
    let bound = floor_fraction_of(cfg.eps, p.m as u64);
    let (outcomes, failures, decision) = scan(samples, bound, exec, |rho| refute_outcome(phi, rho, p.w));
    let report = RunReport {
        decider: DeciderKind::Uniform,
        decision,
        parameter_source: p.source,
        config: cfg.clone(),
        w: p.w,
        refute_width: Some(p.w),
        width_constant: Some(p.width_constant),
        m0: 0,
        m1: p.m,
        learn_threshold_fraction: None,
        learn_threshold_count: None,
        reject_fraction: cfg.eps,
        reject_above: bound,
        learned_clause_count: None,
        narrowed_query: None,
        failures,
        outcomes,
        seed: cfg.seed,
        audit: None,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(RunOutput { report, table: None })
}

/// Number of samples a decider consumes under `cfg`.
pub fn required_samples(kind: DeciderKind, cfg: &RunConfig, clauses: usize) -> Result<usize, ParamError> {
    Ok(match kind {
        DeciderKind::LearnRes => {
            let p = params_learnres(cfg)?;
            p.m0 + p.m1
        }
        DeciderKind::CnfEval => {
            let p = params_cnfeval(cfg, clauses)?;
            p.m0 + p.m1
        }
        DeciderKind::Uniform => params_uniform(cfg)?.m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{AffineSystem, Uniform};
    use crate::masking::draw_masked_samples;

    fn cnf(n: usize, cls: &[&[i64]]) -> Cnf {
        Cnf::new(n, cls.iter().map(|c| Clause::from_dimacs(c)).collect()).unwrap()
    }

    fn cfg(n: usize) -> RunConfig {
        RunConfig {
            mu: 0.5,
            beta: 0.5,
            gamma: 0.1,
            eps: 0.1,
            delta: 0.1,
            p_n: 10,
            n,
            overrides: Overrides::default(),
            seed: 0,
        }
    }

    #[test]
    fn learnres_formula_values() {
        assert_eq!(ceil_count("m1", learnres_m1(0.1, 0.1)).unwrap(), 150);
        assert_eq!(ceil_count("w", learnres_w(0.5, 0.5, 150, 10, 0.1)).unwrap(), 42);
        assert_eq!(ceil_count("m0", learnres_m0(1, 1, 0.5, 0.5, 0.4)).unwrap(), 980);
        let mut c = cfg(10);
        c.overrides.m0 = Some(1);
        let p = params_learnres(&c).unwrap();
        assert_eq!((p.m1, p.w, p.source), (150, 42, ParameterSource::Overridden));
        // without the override the m0 formula leaves the supported range
        c.overrides.m0 = None;
        assert!(matches!(params_learnres(&c), Err(ParamError::Unbounded { name: "m0", .. })));
    }

    #[test]
    fn cnfeval_formula_values() {
        assert_eq!(ceil_count("w", cnfeval_w(0.5, 4, 0.4)).unwrap(), 15);
        assert_eq!(ceil_count("m1", cnfeval_m1(7, 1.0, 0.5, 0.5)).unwrap(), 178);
        assert_eq!(cnfeval_reject_fraction(3, 1.0, 0.4), 0.25);
    }

    #[test]
    fn parameter_validation() {
        let mut c = cfg(2);
        c.mu = 1.5;
        assert!(matches!(params_uniform(&c), Err(ParamError::InvalidProbability { name: "mu", .. })));
        let mut c = cfg(2);
        c.overrides.w = Some(0);
        assert_eq!(params_uniform(&c), Err(ParamError::ZeroOverride("w")));
        let mut c = cfg(2);
        c.gamma = 0.0;
        assert!(matches!(params_learnres(&c), Err(ParamError::Unbounded { name: "m1", .. })));
    }

    #[test]
    fn eps_one_always_accepts() {
        let a = AffineSystem::from_rows(3, &[(vec![0, 1], false)]).unwrap();
        let mut c = cfg(3);
        c.eps = 1.0;
        c.overrides = Overrides { w: Some(1), m0: Some(50), m1: Some(50) };
        let s = draw_masked_samples(&a, 0.5, 100, 3, Execution::default()).unwrap();
        let out = learn_res(&Cnf::empty(3), &c, &s.samples, Execution::default()).unwrap();
        assert_eq!(out.report.decision, Decision::Accept);
        assert_eq!(out.report.outcomes.len(), 50);
    }

    #[test]
    fn cnfeval_fully_masked_testing_accepts() {
        let mut c = cfg(2);
        c.mu = 0.0;
        c.overrides = Overrides { w: Some(2), m0: Some(10), m1: Some(10) };
        let full = |b| PartialAssignment::full(&[b, b]);
        let mut samples: Vec<_> = (0..10).map(|i| full(i % 2 == 0)).collect();
        samples.extend(vec![PartialAssignment::unassigned(2); 10]);
        let out = cnf_eval(&cnf(2, &[&[1], &[-2]]), &c, &samples, Execution::default()).unwrap();
        assert_eq!(out.report.decision, Decision::Accept);
        assert_eq!(out.report.failures, 0);
    }

    #[test]
    fn uniform_examples() {
        let mut c = cfg(4);
        c.eps = 0.2;
        c.gamma = 0.2;
        let m = params_uniform(&c).unwrap().m;
        let s = draw_masked_samples(&Uniform::new(4), c.mu, m, 9, Execution::default()).unwrap();
        let run = |phi: &Cnf| uniform_decider(phi, &c, &s.samples, Execution::default()).unwrap().report;
        assert_eq!(run(&cnf(4, &[&[1], &[-1]])).decision, Decision::Accept);
        assert_eq!(run(&cnf(4, &[&[1]])).decision, Decision::Reject);
        let empty = run(&Cnf::empty(4));
        assert_eq!(empty.decision, Decision::Reject);
        assert_eq!(empty.outcomes.len() as u64, empty.reject_above + 1);
    }

    #[test]
    fn input_checks() {
        let mut c = cfg(2);
        c.overrides = Overrides { w: Some(1), m0: Some(2), m1: Some(2) };
        let s = vec![PartialAssignment::unassigned(2); 3];
        assert_eq!(
            learn_res(&Cnf::empty(2), &c, &s, Execution::Sequential).unwrap_err(),
            DeciderError::SampleCount { got: 3, expected: 4 }
        );
        assert!(matches!(
            learn_res(&Cnf::empty(3), &c, &s, Execution::Sequential),
            Err(DeciderError::QueryVars { .. })
        ));
    }
}
