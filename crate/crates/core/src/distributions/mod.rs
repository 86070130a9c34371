//! Background distributions: samplers plus exact probability oracles.
//!
//! Three sources are provided: the uniform distribution, affine
//! distributions (uniform over the solutions of an F2 system `Ax = b`) and
//! the pure-document topic model. Affine and uniform probabilities are exact
//! dyadic rationals; those values also survive conversion to `f64` without
//! rounding, so the generic [`ExactProbability`] interface stays exact for
//! them.

mod audit;
mod dyadic;
pub mod f2;
mod topic;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{Clause, Literal};

pub use audit::{audit_correlation_gap, GapReport, Implication, AUDIT_LIMIT};
pub use dyadic::Dyadic;
pub use f2::{rref_f2, BitRow, Equation, RowReduction};
pub use topic::{Topic, TopicModel};

use f2::{Absorb, IncrementalBasis};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("linear system is unsolvable")]
    Unsolvable,
    #[error("variable x{var} out of range for {n} variables")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("conditioning event has probability zero")]
    ZeroProbabilityCondition,
    #[error("source has no exact-probability capability")]
    NotExact,
    #[error("invalid topic model: {0}")]
    InvalidTopicModel(String),
    #[error("enumeration of {required} items exceeds the limit of {limit}")]
    TooLarge { required: u128, limit: u128 },
}

/// A sampler over `{0,1}^n`.
///
/// Sampling from a fixed RNG state is bit-reproducible.
pub trait DistributionSource: Sync {
    fn num_vars(&self) -> usize;

    fn sample(&self, rng: &mut dyn RngCore) -> Vec<bool>;

    fn describe(&self) -> String;

    /// Exact-probability view of this source, when it has one.
    fn exact(&self) -> Option<&dyn ExactProbability> {
        None
    }
}

/// Probability of conjunctions of literals, computed exactly (up to `f64`
/// representation for sources with real-valued parameters).
pub trait ExactProbability: Sync {
    fn num_vars(&self) -> usize;

    fn conjunction_probability(&self, lits: &[Literal]) -> Result<f64, DistError>;
}

/// Sort and dedup an event; `None` when it contains a complementary pair.
pub(crate) fn normalize_event(n: usize, lits: &[Literal]) -> Result<Option<Vec<Literal>>, DistError> {
    let mut v = lits.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(l) = v.iter().find(|l| l.var().index() >= n) {
        return Err(DistError::VariableOutOfRange { var: l.var().index() + 1, n });
    }
    if v.windows(2).any(|w| w[0].var() == w[1].var()) {
        return Ok(None);
    }
    Ok(Some(v))
}

/// `Pr[lit | cond]` under an exact source.
pub fn conditional_literal_probability(
    source: &dyn ExactProbability,
    lit: Literal,
    cond: &[Literal],
) -> Result<f64, DistError> {
    let p_cond = source.conjunction_probability(cond)?;
    if p_cond <= 0.0 {
        return Err(DistError::ZeroProbabilityCondition);
    }
    let mut joint = cond.to_vec();
    joint.push(lit);
    Ok(source.conjunction_probability(&joint)? / p_cond)
}

/// The uniform distribution `U_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Uniform {
    pub n: usize,
}

impl Uniform {
    pub fn new(n: usize) -> Uniform {
        Uniform { n }
    }

    pub fn exact_probability(&self, lits: &[Literal]) -> Result<Dyadic, DistError> {
        Ok(match normalize_event(self.n, lits)? {
            None => Dyadic::ZERO,
            Some(v) => Dyadic::inverse_pow2(v.len() as u32),
        })
    }
}

impl DistributionSource for Uniform {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Vec<bool> {
        (0..self.n).map(|_| rng.gen::<bool>()).collect()
    }

    fn describe(&self) -> String {
        format!("uniform n={}", self.n)
    }

    fn exact(&self) -> Option<&dyn ExactProbability> {
        Some(self)
    }
}

impl ExactProbability for Uniform {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn conjunction_probability(&self, lits: &[Literal]) -> Result<f64, DistError> {
        self.exact_probability(lits).map(Dyadic::to_f64)
    }
}

/// Uniform distribution over the solutions of a solvable system `Ax = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSystem {
    n: usize,
    raw: Vec<Equation>,
    reduced: RowReduction,
}

impl AffineSystem {
    pub fn new(n: usize, equations: Vec<Equation>) -> Result<AffineSystem, DistError> {
        for e in &equations {
            assert_eq!(e.coeffs.len(), n, "equation length must equal the variable count");
        }
        let reduced = rref_f2(n, &equations);
        if !reduced.solvable {
            return Err(DistError::Unsolvable);
        }
        Ok(AffineSystem { n, raw: equations, reduced })
    }

    /// System from 0-based variable lists, `Σ x_i = rhs` per row.
    pub fn from_rows(n: usize, rows: &[(Vec<usize>, bool)]) -> Result<AffineSystem, DistError> {
        let mut eqs = Vec::with_capacity(rows.len());
        for (vars, rhs) in rows {
            if let Some(&v) = vars.iter().find(|&&v| v >= n) {
                return Err(DistError::VariableOutOfRange { var: v + 1, n });
            }
            eqs.push(Equation { coeffs: BitRow::from_indices(n, vars.iter().copied()), rhs: *rhs });
        }
        AffineSystem::new(n, eqs)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &[Equation] {
        &self.raw
    }

    pub fn reduction(&self) -> &RowReduction {
        &self.reduced
    }

    pub fn rank(&self) -> usize {
        self.reduced.rank
    }

    /// Fill a solution from free-variable values taken in ascending index order.
    pub fn solution_from_free(&self, mut free_bit: impl FnMut() -> bool) -> Vec<bool> {
        let mut x = BitRow::zeros(self.n);
        for &f in &self.reduced.free {
            x.set(f, free_bit());
        }
        for (row, &p) in self.reduced.rows.iter().zip(&self.reduced.pivots) {
            // the row is zero on every other pivot column and x[p] is still 0
            let v = row.rhs ^ row.coeffs.dot(&x);
            x.set(p, v);
        }
        (0..self.n).map(|i| x.get(i)).collect()
    }

    /// Exact `Pr[event]` by absorbing each literal as an equation `x_i = b`
    /// and tracking the rank increase.
    pub fn exact_probability(&self, event: &[Literal]) -> Result<Dyadic, DistError> {
        let Some(event) = normalize_event(self.n, event)? else {
            return Ok(Dyadic::ZERO);
        };
        let mut basis = IncrementalBasis::from_reduction(&self.reduced);
        let mut extra = 0u32;
        for l in event {
            let eq = Equation { coeffs: BitRow::from_indices(self.n, [l.var().index()]), rhs: l.is_positive() };
            match basis.absorb(eq) {
                Absorb::Independent => extra += 1,
                Absorb::Redundant => {}
                Absorb::Inconsistent => return Ok(Dyadic::ZERO),
            }
        }
        Ok(Dyadic::inverse_pow2(extra))
    }

    /// Exact `Pr[lit | cond]`.
    pub fn conditional_probability(&self, lit: Literal, cond: &[Literal]) -> Result<Dyadic, DistError> {
        let p_cond = self.exact_probability(cond)?;
        if p_cond.is_zero() {
            return Err(DistError::ZeroProbabilityCondition);
        }
        let mut joint = cond.to_vec();
        joint.push(lit);
        let p_joint = self.exact_probability(&joint)?;
        Ok(p_joint.checked_div(p_cond).expect("affine event probabilities are powers of two"))
    }

    /// Whether some combination of rows is non-zero and supported only on
    /// the variables of `clause`.
    ///
    /// The row space maps onto its projection outside the clause with kernel
    /// exactly the constraints on the clause, so one exists iff that
    /// projection loses rank.
    pub fn has_constraint_on(&self, clause: &Clause) -> bool {
        let inside = BitRow::from_indices(self.n, clause.vars().map(|v| v.index()));
        let outside: Vec<BitRow> = self
            .reduced
            .rows
            .iter()
            .map(|r| {
                let mut c = r.coeffs.clone();
                c.clear_masked(&inside);
                c
            })
            .collect();
        f2::rank_f2(outside) < self.reduced.rank
    }

    pub fn satisfies(&self, x: &[bool]) -> bool {
        let xr = BitRow::from_indices(self.n, (0..self.n).filter(|&i| x[i]));
        self.raw.iter().all(|e| e.coeffs.dot(&xr) == e.rhs)
    }
}

impl DistributionSource for AffineSystem {
    fn num_vars(&self) -> usize {
        self.n
    }

    /// Free variables draw one `bool` each in ascending index order; pivot
    /// variables are then determined by the reduced rows.
    fn sample(&self, rng: &mut dyn RngCore) -> Vec<bool> {
        self.solution_from_free(|| rng.gen::<bool>())
    }

    fn describe(&self) -> String {
        format!("affine n={} rows={} rank={}", self.n, self.raw.len(), self.reduced.rank)
    }

    fn exact(&self) -> Option<&dyn ExactProbability> {
        Some(self)
    }
}

impl ExactProbability for AffineSystem {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn conjunction_probability(&self, lits: &[Literal]) -> Result<f64, DistError> {
        self.exact_probability(lits).map(Dyadic::to_f64)
    }
}

/// Any of the supported sources, as loaded from a distribution file.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Uniform(Uniform),
    Affine(AffineSystem),
    Topic(TopicModel),
}

impl Distribution {
    pub fn as_source(&self) -> &dyn DistributionSource {
        match self {
            Distribution::Uniform(u) => u,
            Distribution::Affine(a) => a,
            Distribution::Topic(t) => t,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.as_source().num_vars()
    }
}
