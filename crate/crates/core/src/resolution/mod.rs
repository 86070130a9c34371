//! Resolution proofs: the cut rule, proof checking, restriction of proofs
//! by partial assignments, weakening elimination, and the width-bounded
//! saturation search.

mod search;
mod transform;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{Clause, Cnf, Literal, RestrictedClause, Var};

pub use search::{w_refute, w_refute_with, SearchOptions, SearchOutcome, SearchStats};
pub use transform::{eliminate_weakening, restrict_proof, RestrictProofError, WeakeningFree};

/// Outcome of resolving two clauses on a pivot variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolvent {
    Clause(Clause),
    /// The union keeps another complementary pair.
    Tautology,
    /// The pivot does not occur with opposite signs in the two clauses.
    NotResolvable,
}

pub fn resolve(c1: &Clause, c2: &Clause, pivot: Var) -> Resolvent {
    match (c1.polarity_of(pivot), c2.polarity_of(pivot)) {
        (Some(a), Some(b)) if a != b => {}
        _ => return Resolvent::NotResolvable,
    }
    let (a, b) = (c1.literals(), c2.literals());
    let mut out = Vec::with_capacity(a.len() + b.len() - 2);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x.var() == y.var() => {
                if x.var() != pivot {
                    return Resolvent::Tautology;
                }
                i += 1;
                j += 1;
                continue;
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    Resolvent::Clause(Clause::from_sorted_unchecked(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Justification {
    /// Clause `i` of the input CNF.
    Axiom(usize),
    /// Superclause of an earlier step.
    Weakening(usize),
    /// Resolvent of two earlier steps on a pivot.
    Cut(usize, usize, Var),
    /// Placeholder for a step whose clause became `Top` under restriction.
    TopMark,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProofStep {
    pub clause: RestrictedClause,
    pub justification: Justification,
}

impl ProofStep {
    pub fn new(clause: Clause, justification: Justification) -> ProofStep {
        ProofStep { clause: RestrictedClause::Clause(clause), justification }
    }

    pub fn top() -> ProofStep {
        ProofStep { clause: RestrictedClause::Top, justification: Justification::TopMark }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResolutionProof {
    pub steps: Vec<ProofStep>,
}

impl ResolutionProof {
    pub fn new(steps: Vec<ProofStep>) -> Self {
        ResolutionProof { steps }
    }

    pub fn size(&self) -> usize {
        self.steps.len()
    }

    /// Whether the last step is the empty clause.
    pub fn ends_in_empty_clause(&self) -> bool {
        matches!(self.steps.last(), Some(ProofStep { clause: RestrictedClause::Clause(c), .. }) if c.is_empty())
    }

    /// Widest clause used.
    pub fn width(&self) -> usize {
        self.steps.iter().filter_map(|s| s.clause.as_clause()).map(Clause::width).max().unwrap_or(0)
    }
}

impl fmt::Display for ResolutionProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let c = match &s.clause {
                RestrictedClause::Top => "⊤".to_string(),
                RestrictedClause::Clause(c) => c.to_string(),
            };
            writeln!(f, "{i}: {c}  [{:?}]", s.justification)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFault {
    #[error("references step {0}, which is not earlier")]
    ForwardReference(usize),
    #[error("axiom index {0} out of range")]
    AxiomOutOfRange(usize),
    #[error("clause differs from axiom {0}")]
    AxiomMismatch(usize),
    #[error("clause is not a superclause of step {0}")]
    NotSuperclause(usize),
    #[error("step {0} is ⊤ and cannot be used")]
    TopReference(usize),
    #[error("⊤ clause must carry the top mark and vice versa")]
    TopMismatch,
    #[error("parents do not clash on {0}")]
    NoClash(Var),
    #[error("parents clash on more than one variable")]
    TautologicalResolvent,
    #[error("clause differs from the resolvent {0}")]
    WrongResolvent(Clause),
    #[error("proof does not end with the empty clause")]
    NotRefutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {fault}")]
pub struct ProofError {
    pub step: usize,
    pub fault: ProofFault,
}

/// Check every step of `proof` against `phi` and earlier steps; with
/// `require_refutation`, the last step must also be the empty clause.
pub fn check_proof(phi: &Cnf, proof: &ResolutionProof, require_refutation: bool) -> Result<(), ProofError> {
    let fail = |step, fault| Err(ProofError { step, fault });
    let steps = &proof.steps;
    for (i, step) in steps.iter().enumerate() {
        let earlier = |j: usize| -> Result<&Clause, ProofError> {
            if j >= i {
                return Err(ProofError { step: i, fault: ProofFault::ForwardReference(j) });
            }
            steps[j].clause.as_clause().ok_or(ProofError { step: i, fault: ProofFault::TopReference(j) })
        };
        let clause = match (&step.clause, step.justification) {
            (RestrictedClause::Top, Justification::TopMark) => continue,
            (RestrictedClause::Top, _) | (_, Justification::TopMark) => return fail(i, ProofFault::TopMismatch),
            (RestrictedClause::Clause(c), _) => c,
        };
        match step.justification {
            Justification::Axiom(a) => match phi.clauses().get(a) {
                None => return fail(i, ProofFault::AxiomOutOfRange(a)),
                Some(c) if c != clause => return fail(i, ProofFault::AxiomMismatch(a)),
                Some(_) => {}
            },
            Justification::Weakening(j) => {
                if !earlier(j)?.is_subclause_of(clause) {
                    return fail(i, ProofFault::NotSuperclause(j));
                }
            }
            Justification::Cut(j, k, v) => {
                let (cj, ck) = (earlier(j)?, earlier(k)?);
                match resolve(cj, ck, v) {
                    Resolvent::NotResolvable => return fail(i, ProofFault::NoClash(v)),
                    Resolvent::Tautology => return fail(i, ProofFault::TautologicalResolvent),
                    Resolvent::Clause(r) if &r != clause => return fail(i, ProofFault::WrongResolvent(r)),
                    Resolvent::Clause(_) => {}
                }
            }
            Justification::TopMark => unreachable!(),
        }
    }
    if require_refutation && !proof.ends_in_empty_clause() {
        return fail(steps.len().saturating_sub(1), ProofFault::NotRefutation);
    }
    Ok(())
}

/// Literal of `var` in `clause`, if present.
pub(crate) fn literal_of(clause: &Clause, var: Var) -> Option<Literal> {
    clause.polarity_of(var).map(|p| Literal::new(var, p))
}
