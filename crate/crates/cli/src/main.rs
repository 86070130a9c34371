//! `pacres`: sample, mask, decide, refute, audit and verify from the shell.
//!
//! Exit status: 0 accept or success, 10 reject (or no refutation found),
//! 2 usage or input error, 3 size guard or infeasible parameters, 1 I/O.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use pacres::deciders::{
    cnf_eval, learn_res, params_cnfeval, params_learnres, params_uniform, required_samples, uniform_decider,
    DeciderError, DeciderKind, Decision, Overrides, ParamError, RunConfig, RunOutput,
};
use pacres::distributions::{audit_correlation_gap, DistError, Distribution, Uniform};
use pacres::io;
use pacres::masking::{draw_masked_samples, remask, MaskError, MaskedSampleSet};
use pacres::oracles::{brute_sat, brute_validity, brute_width_refutable, OracleError, SatResult};
use pacres::resolution::{check_proof, w_refute_with, SearchOptions, SearchOutcome};
use pacres::{Cnf, Execution};

use pacres_cli::report::{InputDigest, RefutationReport, ReportBody, ReportDocument, SampleSummary, VerifyReport};

const EXIT_OK: u8 = 0;
const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_REJECT: u8 = 10;

#[derive(Parser)]
#[command(name = "pacres", version, about = "PAC-semantics query deciders over masked samples")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Draw samples from a distribution file and mask them.
    Sample(SampleArgs),
    /// Mask an existing sample file further.
    Mask(MaskArgs),
    /// Learn+RES: learned clauses plus bounded-width refutation.
    Learnres(DecideArgs),
    /// CNF-Eval: learned clauses plus witnessed evaluation.
    Cnfeval(DecideArgs),
    /// Bounded-width refutation on masked uniform samples.
    Unifdecide(DecideArgs),
    /// Search for a bounded-width resolution refutation.
    Wrefute(WrefuteArgs),
    /// Exhaustive correlation-gap audit of a distribution.
    Auditgap(AuditArgs),
    /// Brute-force oracles.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    dist: PathBuf,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MaskArgs {
    #[arg(long)]
    samples: PathBuf,
    #[arg(long)]
    mu: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long, default_value_t = 0.5)]
    mu: f64,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    #[arg(long, default_value_t = 0.1)]
    gamma: f64,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Bound on refutation size.
    #[arg(long, default_value_t = 100)]
    pn: u64,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    m0: Option<usize>,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ParamArgs {
    fn config(&self, n: usize) -> RunConfig {
        RunConfig {
            mu: self.mu,
            beta: self.beta,
            gamma: self.gamma,
            eps: self.eps,
            delta: self.delta,
            p_n: self.pn,
            n,
            overrides: Overrides { w: self.w, m0: self.m0, m1: self.m1 },
            seed: self.seed,
        }
    }

    fn record(&self, args: &mut BTreeMap<String, String>) {
        for (k, v) in [
            ("mu", self.mu),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("eps", self.eps),
            ("delta", self.delta),
        ] {
            args.insert(k.into(), v.to_string());
        }
        args.insert("pn".into(), self.pn.to_string());
        args.insert("seed".into(), self.seed.to_string());
        for (k, v) in [("w", self.w), ("m0", self.m0), ("m1", self.m1)] {
            if let Some(v) = v {
                args.insert(k.into(), v.to_string());
            }
        }
    }
}

#[derive(Args)]
struct DecideArgs {
    /// Query CNF in DIMACS format.
    #[arg(long)]
    query: PathBuf,
    /// Distribution file to draw samples from (`unifdecide` defaults to uniform).
    #[arg(long)]
    dist: Option<PathBuf>,
    /// Use these masked samples instead of drawing.
    #[arg(long, conflicts_with = "dist")]
    samples: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    /// Dump the learned clause table here.
    #[arg(long)]
    psi_out: Option<PathBuf>,
    /// Embed a correlation-gap audit of the distribution at this width.
    #[arg(long, requires = "dist")]
    audit_width: Option<usize>,
}

#[derive(Args)]
struct WrefuteArgs {
    #[arg(long)]
    query: PathBuf,
    #[arg(long)]
    w: usize,
    /// Also seed the search with axioms wider than `w`.
    #[arg(long)]
    include_wide: bool,
    #[arg(long)]
    proof_out: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    dist: PathBuf,
    #[arg(long)]
    w: usize,
    /// Margin separating balanced from implied variables.
    #[arg(long)]
    cutoff: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeciderName {
    Learnres,
    Cnfeval,
    Unifdecide,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Exhaustive satisfiability.
    Sat {
        #[arg(long)]
        query: PathBuf,
    },
    /// Exact probability that the query holds under the distribution.
    Validity {
        #[arg(long)]
        query: PathBuf,
        #[arg(long)]
        dist: PathBuf,
    },
    /// Fixpoint check for a refutation of width at most `w`.
    Widthref {
        #[arg(long)]
        query: PathBuf,
        #[arg(long)]
        w: usize,
    },
    /// Evaluate a decider's parameter formulas.
    Params {
        #[arg(long, value_enum)]
        decider: DeciderName,
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Query clause count (CNF-Eval width formula).
        #[arg(long, default_value_t = 1)]
        clauses: usize,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Usage(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(..) => EXIT_IO,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Guard(_) => EXIT_GUARD,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Usage(m) | Failure::Guard(m) => f.write_str(m),
        }
    }
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Self {
        match e {
            ParamError::Unbounded { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<DeciderError> for Failure {
    fn from(e: DeciderError) -> Self {
        match e {
            DeciderError::Param(p) => p.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } => Failure::Guard(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<DistError> for Failure {
    fn from(e: DistError) -> Self {
        match e {
            DistError::TooLarge { .. } => Failure::Guard(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<MaskError> for Failure {
    fn from(e: MaskError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Result of one command before the report is written.
struct Done {
    exit: u8,
    summary: String,
    body: ReportBody,
}

/// Reads inputs and remembers their digests for the report.
#[derive(Default)]
struct Inputs {
    digests: Vec<InputDigest>,
}

impl Inputs {
    fn read(&mut self, role: &str, format: &str, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
        self.digests.push(InputDigest::new(role, &path.display().to_string(), format, &bytes));
        String::from_utf8(bytes).map_err(|_| Failure::Usage(format!("{}: not UTF-8 text", path.display())))
    }

    fn parsed<T>(
        &mut self,
        role: &str,
        format: &str,
        path: &Path,
        parse: impl FnOnce(&str) -> Result<T, io::ParseError>,
    ) -> Result<T, Failure> {
        let text = self.read(role, format, path)?;
        parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }

    fn query(&mut self, path: &Path) -> Result<Cnf, Failure> {
        self.parsed("query", "dimacs", path, io::parse_dimacs)
    }

    fn dist(&mut self, path: &Path) -> Result<Distribution, Failure> {
        self.parsed("dist", "distribution", path, io::parse_distribution)
    }

    fn samples(&mut self, path: &Path) -> Result<MaskedSampleSet, Failure> {
        self.parsed("samples", "samples", path, io::parse_samples)
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn check_vars(what: &str, got: usize, n: usize) -> Result<(), Failure> {
    if got != n {
        return Err(Failure::Usage(format!("{what} has {got} variables, the query has {n}")));
    }
    Ok(())
}

fn sample(a: &SampleArgs, inputs: &mut Inputs, args: &mut BTreeMap<String, String>, exec: Execution) -> Result<Done, Failure> {
    let dist = inputs.dist(&a.dist)?;
    args.extend([
        ("count".into(), a.count.to_string()),
        ("mu".into(), a.mu.to_string()),
        ("seed".into(), a.seed.to_string()),
    ]);
    let set = draw_masked_samples(dist.as_source(), a.mu, a.count, a.seed, exec)?;
    samples_done(set, &a.out)
}

fn samples_done(set: MaskedSampleSet, out: &Path) -> Result<Done, Failure> {
    let text = io::write_samples(&set);
    write(out, &text)?;
    let cells = (set.n * set.samples.len()).max(1);
    let revealed: usize = set.samples.iter().map(|s| s.revealed()).sum();
    let summary = format!("wrote {} samples over {} variables to {}", set.samples.len(), set.n, out.display());
    let body = ReportBody::Samples(SampleSummary {
        n: set.n,
        m: set.samples.len(),
        mu: set.mu,
        seed: set.seed,
        provenance: set.provenance,
        revealed_fraction: revealed as f64 / cells as f64,
        output: out.display().to_string(),
        output_sha256: hex::encode(Sha256::digest(text.as_bytes())),
    });
    Ok(Done { exit: EXIT_OK, summary, body })
}

fn mask(a: &MaskArgs, inputs: &mut Inputs, args: &mut BTreeMap<String, String>, exec: Execution) -> Result<Done, Failure> {
    let set = inputs.samples(&a.samples)?;
    args.extend([("mu".into(), a.mu.to_string()), ("seed".into(), a.seed.to_string())]);
    samples_done(remask(&set, a.mu, a.seed, exec)?, &a.out)
}

fn decide(
    kind: DeciderKind,
    a: &DecideArgs,
    inputs: &mut Inputs,
    args: &mut BTreeMap<String, String>,
    exec: Execution,
) -> Result<Done, Failure> {
    let phi = inputs.query(&a.query)?;
    let n = phi.num_vars();
    let cfg = a.params.config(n);
    a.params.record(args);
    cfg.validate()?;
    let dist = match &a.dist {
        Some(p) => Some(inputs.dist(p)?),
        None if kind == DeciderKind::Uniform && a.samples.is_none() => Some(Distribution::Uniform(Uniform::new(n))),
        None => None,
    };
    let samples = match (&a.samples, &dist) {
        (Some(p), _) => {
            let set = inputs.samples(p)?;
            check_vars("sample file", set.n, n)?;
            set.samples
        }
        (None, Some(d)) => {
            check_vars("distribution", d.num_vars(), n)?;
            let m = required_samples(kind, &cfg, phi.len())?;
            draw_masked_samples(d.as_source(), cfg.mu, m, cfg.seed, exec)?.samples
        }
        (None, None) => return Err(Failure::Usage("one of --dist or --samples is required".into())),
    };
    let RunOutput { mut report, table } = match kind {
        DeciderKind::LearnRes => learn_res(&phi, &cfg, &samples, exec)?,
        DeciderKind::CnfEval => cnf_eval(&phi, &cfg, &samples, exec)?,
        DeciderKind::Uniform => uniform_decider(&phi, &cfg, &samples, exec)?,
    };
    if let (Some(t), Some(path)) = (&table, &a.psi_out) {
        write(path, &io::write_learned_table(t))?;
    }
    if let (Some(w), Some(d)) = (a.audit_width, &dist) {
        let exact = d.as_source().exact().ok_or_else(|| Failure::Usage("distribution has no exact probabilities".into()))?;
        report.audit = Some(audit_correlation_gap(exact, w, None, exec)?);
    }
    let exit = match report.decision {
        Decision::Accept => EXIT_OK,
        Decision::Reject => EXIT_REJECT,
    };
    let summary = format!(
        "{:?}: {} failures over {} samples (reject above {}), w={} m0={} m1={} ({:?})",
        report.decision,
        report.failures,
        report.outcomes.len(),
        report.reject_above,
        report.w,
        report.m0,
        report.m1,
        report.parameter_source
    );
    Ok(Done { exit, summary, body: ReportBody::Decider(Box::new(report)) })
}

fn wrefute(a: &WrefuteArgs, inputs: &mut Inputs, args: &mut BTreeMap<String, String>) -> Result<Done, Failure> {
    let phi = inputs.query(&a.query)?;
    args.insert("w".into(), a.w.to_string());
    args.insert("include-wide".into(), a.include_wide.to_string());
    let start = Instant::now();
    let (outcome, stats) = w_refute_with(&phi, a.w, SearchOptions { include_wide_axioms: a.include_wide });
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let proof = match outcome {
        SearchOutcome::Refuted(p) => {
            check_proof(&phi, &p, true).map_err(|e| Failure::Usage(format!("internal proof check failed: {e}")))?;
            Some(p)
        }
        SearchOutcome::NoBoundedRefutation => None,
    };
    let text = proof.as_ref().map(io::write_proof);
    if let (Some(t), Some(path)) = (&text, &a.proof_out) {
        write(path, t)?;
    }
    let summary = match &proof {
        Some(p) => format!("refuted at width {}: {} steps, proof width {}", a.w, p.size(), p.width()),
        None => format!("no refutation of width at most {}", a.w),
    };
    let body = ReportBody::Refutation(RefutationReport {
        w: a.w,
        include_wide_axioms: a.include_wide,
        refuted: proof.is_some(),
        proof_size: proof.as_ref().map(|p| p.size()),
        proof_width: proof.as_ref().map(|p| p.width()),
        proof: text,
        stats,
        elapsed_ms,
    });
    Ok(Done { exit: if proof.is_some() { EXIT_OK } else { EXIT_REJECT }, summary, body })
}

fn auditgap(a: &AuditArgs, inputs: &mut Inputs, args: &mut BTreeMap<String, String>, exec: Execution) -> Result<Done, Failure> {
    let dist = inputs.dist(&a.dist)?;
    args.insert("w".into(), a.w.to_string());
    if let Some(c) = a.cutoff {
        args.insert("cutoff".into(), c.to_string());
    }
    let exact = dist.as_source().exact().ok_or_else(|| Failure::Usage("distribution has no exact probabilities".into()))?;
    let gap = audit_correlation_gap(exact, a.w, a.cutoff, exec)?;
    let summary = format!(
        "width {}: {} conditions, beta_found={:?}, gamma_found={:?}, {} implications",
        gap.width,
        gap.conditions_checked,
        gap.beta_found,
        gap.gamma_found,
        gap.implied.len()
    );
    Ok(Done { exit: EXIT_OK, summary, body: ReportBody::Audit(gap) })
}

fn param_values<T: serde::Serialize>(p: &T) -> BTreeMap<String, serde_json::Value> {
    match serde_json::to_value(p).expect("parameters serialize") {
        serde_json::Value::Object(m) => m.into_iter().collect(),
        _ => unreachable!("parameter structs serialize to objects"),
    }
}

fn verify(v: &VerifyCommand, inputs: &mut Inputs, args: &mut BTreeMap<String, String>) -> Result<Done, Failure> {
    let (summary, report) = match v {
        VerifyCommand::Sat { query } => {
            let phi = inputs.query(query)?;
            match brute_sat(&phi)? {
                SatResult::Satisfiable(x) => {
                    let w: String = x.iter().map(|&b| if b { '1' } else { '0' }).collect();
                    (format!("satisfiable, witness {w}"), VerifyReport::Sat { satisfiable: true, witness: Some(w) })
                }
                SatResult::Unsatisfiable => ("unsatisfiable".into(), VerifyReport::Sat { satisfiable: false, witness: None }),
            }
        }
        VerifyCommand::Validity { query, dist } => {
            let phi = inputs.query(query)?;
            let d = inputs.dist(dist)?;
            let p = brute_validity(&phi, &d)?;
            (format!("validity {p}"), VerifyReport::Validity { exact: p.to_string(), value: p.to_f64() })
        }
        VerifyCommand::Widthref { query, w } => {
            let phi = inputs.query(query)?;
            args.insert("w".into(), w.to_string());
            let r = brute_width_refutable(&phi, *w)?;
            (format!("width-{w} refutable: {r}"), VerifyReport::WidthRefutable { w: *w, refutable: r })
        }
        VerifyCommand::Params { decider, n, clauses, params } => {
            params.record(args);
            args.insert("n".into(), n.to_string());
            let cfg = params.config(*n);
            let (name, values) = match decider {
                DeciderName::Learnres => ("learnres", param_values(&params_learnres(&cfg)?)),
                DeciderName::Cnfeval => {
                    args.insert("clauses".into(), clauses.to_string());
                    ("cnfeval", param_values(&params_cnfeval(&cfg, *clauses)?))
                }
                DeciderName::Unifdecide => ("unifdecide", param_values(&params_uniform(&cfg)?)),
            };
            let line = values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
            (format!("{name}: {line}"), VerifyReport::Params { decider: name.into(), values })
        }
    };
    Ok(Done { exit: EXIT_OK, summary, body: ReportBody::Verify(report) })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Sample(_) => "sample",
        Command::Mask(_) => "mask",
        Command::Learnres(_) => "learnres",
        Command::Cnfeval(_) => "cnfeval",
        Command::Unifdecide(_) => "unifdecide",
        Command::Wrefute(_) => "wrefute",
        Command::Auditgap(_) => "auditgap",
        Command::Verify(VerifyCommand::Sat { .. }) => "verify sat",
        Command::Verify(VerifyCommand::Validity { .. }) => "verify validity",
        Command::Verify(VerifyCommand::Widthref { .. }) => "verify widthref",
        Command::Verify(VerifyCommand::Params { .. }) => "verify params",
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    let mut inputs = Inputs::default();
    let mut args = BTreeMap::new();
    let done = match &cli.command {
        Command::Sample(a) => sample(a, &mut inputs, &mut args, exec)?,
        Command::Mask(a) => mask(a, &mut inputs, &mut args, exec)?,
        Command::Learnres(a) => decide(DeciderKind::LearnRes, a, &mut inputs, &mut args, exec)?,
        Command::Cnfeval(a) => decide(DeciderKind::CnfEval, a, &mut inputs, &mut args, exec)?,
        Command::Unifdecide(a) => decide(DeciderKind::Uniform, a, &mut inputs, &mut args, exec)?,
        Command::Wrefute(a) => wrefute(a, &mut inputs, &mut args)?,
        Command::Auditgap(a) => auditgap(a, &mut inputs, &mut args, exec)?,
        Command::Verify(v) => verify(v, &mut inputs, &mut args)?,
    };
    println!("{}", done.summary);
    if let Some(path) = &cli.report {
        let doc = ReportDocument::new(command_name(&cli.command), args, inputs.digests, done.exit as i32, done.body);
        write(path, &doc.to_json())?;
    }
    Ok(done.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
