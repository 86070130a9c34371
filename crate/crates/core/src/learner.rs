//! The learned clause table and the narrowing pass.
//!
//! Learning keeps every clause of width at most `w` that is witnessed false
//! on at most `threshold_count` of the training samples. Narrowing shortens
//! each query clause with single cuts against the table.

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::logic::{enumerate_clauses, Clause, Cnf, LogicError, PartialAssignment, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnedClause {
    pub clause: Clause,
    pub falsified: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnedTable {
    /// Kept clauses in canonical order.
    pub clauses: Vec<LearnedClause>,
    pub width: usize,
    pub threshold_count: u64,
    /// Training samples used.
    pub m0: usize,
}

impl LearnedTable {
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().map(|l| &l.clause)
    }

    pub fn to_clauses(&self) -> Vec<Clause> {
        self.iter().cloned().collect()
    }
}

/// `⌊fraction · m⌋`, exact.
///
/// A finite `f64` is a dyadic rational `mantissa · 2^exp`, so the product
/// with an integer can be floored without rounding. This is the largest
/// count `c` with `c ≤ fraction · m`, and also the bound for strict
/// comparisons: an integer `c > fraction · m` iff `c > ⌊fraction · m⌋`.
pub fn floor_fraction_of(fraction: f64, m: u64) -> u64 {
    assert!(fraction.is_finite() && fraction >= 0.0, "fraction must be finite and non-negative");
    if fraction == 0.0 || m == 0 {
        return 0;
    }
    let bits = fraction.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let (mantissa, exp) = if raw_exp == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), raw_exp - 1075)
    };
    let product = mantissa as u128 * m as u128;
    let floored = if exp >= 0 {
        product.checked_shl(exp as u32).filter(|v| v >> exp as u32 == product).unwrap_or(u128::MAX)
    } else if -exp >= 128 {
        0
    } else {
        product >> (-exp) as u32
    };
    floored.min(u64::MAX as u128) as u64
}

/// Count, for every clause of width `1..=w` over `n` variables, the samples
/// witnessing it false, and keep those at or under `threshold_count`.
pub fn learn_clause_table(
    samples: &[PartialAssignment],
    n: usize,
    w: usize,
    threshold_count: u64,
    exec: Execution,
) -> Result<LearnedTable, LogicError> {
    if let Some(s) = samples.iter().find(|s| s.len() != n) {
        return Err(LogicError::LengthMismatch { got: s.len(), expected: n });
    }
    let candidates: Vec<Clause> = enumerate_clauses(n, w)?.collect();
    let counts = exec.map(&candidates, |c| {
        samples.iter().filter(|s| c.witness_status_unchecked(s.values()) == Witness::False).count() as u64
    });
    let clauses = candidates
        .into_iter()
        .zip(counts)
        .filter(|(_, f)| *f <= threshold_count)
        .map(|(clause, falsified)| LearnedClause { clause, falsified })
        .collect();
    Ok(LearnedTable { clauses, width: w, threshold_count, m0: samples.len() })
}

/// Narrow one clause: scan the table once in order, and whenever a table
/// clause `C'' ∨ ℓ` has `C'' ∨ ¬ℓ` inside the current clause, delete `¬ℓ`.
/// Each deletion is the cut of the current clause with the table clause.
pub fn narrow_clause(clause: &Clause, table: &[Clause]) -> Clause {
    let mut current = clause.clone();
    for learned in table {
        // at most one literal of `learned` can qualify, or `current` would
        // hold a complementary pair
        let hit = learned.literals().iter().copied().find(|&l| {
            current.contains(!l) && learned.literals().iter().all(|&o| o == l || current.contains(o))
        });
        if let Some(l) = hit {
            current = current.without(!l);
        }
    }
    current
}

/// `φ'`: every clause of `phi` narrowed against the table, order preserved.
pub fn narrow_cnf(phi: &Cnf, table: &LearnedTable) -> Cnf {
    let psi = table.to_clauses();
    let clauses = phi.clauses().iter().map(|c| narrow_clause(c, &psi)).collect();
    Cnf::new(phi.num_vars(), clauses).expect("narrowing only removes literals")
}
