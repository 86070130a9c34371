//! Brute-force ground truth for small instances.
//!
//! These deliberately avoid the machinery of the main modules: validity
//! enumerates the support point by point, satisfiability enumerates all
//! assignments, and bounded-width refutability runs whole-set fixpoint
//! rounds over a dense table of every clause of width at most `w`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::{Distribution, Dyadic};
use crate::logic::Cnf;

pub const MAX_SUPPORT_BITS: usize = 22;
pub const MAX_ENUMERATION_VARS: usize = 20;
pub const MAX_WIDTH_ORACLE_VARS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance needs 2^{bits} enumeration steps, limit is 2^{limit}")]
    TooLarge { bits: usize, limit: usize },
    #[error("formula has {formula} variables but the distribution has {dist}")]
    VariableMismatch { formula: usize, dist: usize },
}

/// An exact probability: a dyadic rational for the uniform and affine
/// sources, a float sum for sources with real parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Probability {
    Dyadic(Dyadic),
    Real(f64),
}

impl Probability {
    pub fn to_f64(self) -> f64 {
        match self {
            Probability::Dyadic(d) => d.to_f64(),
            Probability::Real(r) => r,
        }
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Probability::Dyadic(d) => write!(f, "{d}"),
            Probability::Real(r) => write!(f, "{r}"),
        }
    }
}

fn guard(bits: usize, limit: usize) -> Result<(), OracleError> {
    if bits > limit {
        Err(OracleError::TooLarge { bits, limit })
    } else {
        Ok(())
    }
}

fn bits_of(k: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (k >> i) & 1 == 1).collect()
}

/// `Pr_{x~D}[φ(x) = 1]` by enumerating the support of `dist`.
pub fn brute_validity(phi: &Cnf, dist: &Distribution) -> Result<Probability, OracleError> {
    let n = dist.num_vars();
    if phi.num_vars() != n {
        return Err(OracleError::VariableMismatch { formula: phi.num_vars(), dist: n });
    }
    let holds = |x: &[bool]| phi.clauses().iter().all(|c| c.evaluate(x));
    match dist {
        Distribution::Uniform(_) => {
            guard(n, MAX_ENUMERATION_VARS)?;
            let count = (0..1u64 << n).filter(|&k| holds(&bits_of(k, n))).count();
            Ok(Probability::Dyadic(Dyadic::new(count as u128, n as u32)))
        }
        Distribution::Affine(a) => {
            let free = a.reduction().free.len();
            guard(free, MAX_SUPPORT_BITS)?;
            let count = (0..1u64 << free)
                .filter(|&k| {
                    let mut i = 0;
                    let x = a.solution_from_free(|| {
                        i += 1;
                        (k >> (i - 1)) & 1 == 1
                    });
                    holds(&x)
                })
                .count();
            Ok(Probability::Dyadic(Dyadic::new(count as u128, free as u32)))
        }
        Distribution::Topic(t) => {
            guard(n, MAX_ENUMERATION_VARS)?;
            let mass = (0..1u64 << n)
                .map(|k| bits_of(k, n))
                .filter(|x| holds(x))
                .map(|x| t.point_probability(&x))
                .sum();
            Ok(Probability::Real(mass))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SatResult {
    Satisfiable(Vec<bool>),
    Unsatisfiable,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Satisfiable(_))
    }
}

/// Exhaustive satisfiability. Assignments are tried in binary counting
/// order with `x1` as the lowest bit, so the witness is the first one found.
pub fn brute_sat(phi: &Cnf) -> Result<SatResult, OracleError> {
    let n = phi.num_vars();
    guard(n, MAX_ENUMERATION_VARS)?;
    for k in 0..1u64 << n {
        let x = bits_of(k, n);
        if phi.clauses().iter().all(|c| c.evaluate(&x)) {
            return Ok(SatResult::Satisfiable(x));
        }
    }
    Ok(SatResult::Unsatisfiable)
}

/// Clause as a base-3 digit string: digit `i` is 0 (absent), 1 (`xi`) or
/// 2 (`¬xi`).
fn encode(pos: u32, neg: u32, pow3: &[usize]) -> usize {
    let mut idx = 0;
    for (i, p) in pow3.iter().enumerate() {
        if pos >> i & 1 == 1 {
            idx += p;
        } else if neg >> i & 1 == 1 {
            idx += 2 * p;
        }
    }
    idx
}

/// Whether the width-`w` axioms of `phi` derive the empty clause by cuts
/// whose resolvents all have width at most `w`.
///
/// Every round resolves all pairs of clauses derived so far, recording new
/// resolvents in a table indexed by the full clause universe; the loop ends
/// when a round adds nothing.
pub fn brute_width_refutable(phi: &Cnf, w: usize) -> Result<bool, OracleError> {
    let n = phi.num_vars();
    guard(n, MAX_WIDTH_ORACLE_VARS)?;
    let pow3: Vec<usize> = (0..n).map(|i| 3usize.pow(i as u32)).collect();
    let mut present = vec![false; 3usize.pow(n as u32)];
    let mut derived: Vec<(u32, u32)> = Vec::new();
    for c in phi.clauses().iter().filter(|c| c.width() <= w) {
        let (mut pos, mut neg) = (0u32, 0u32);
        for l in c.literals() {
            if l.is_positive() {
                pos |= 1 << l.var().index();
            } else {
                neg |= 1 << l.var().index();
            }
        }
        if pos == 0 && neg == 0 {
            return Ok(true);
        }
        let idx = encode(pos, neg, &pow3);
        if !present[idx] {
            present[idx] = true;
            derived.push((pos, neg));
        }
    }
    loop {
        let mut fresh = Vec::new();
        for (i, &(p1, n1)) in derived.iter().enumerate() {
            for &(p2, n2) in &derived[i + 1..] {
                let clash = (p1 & n2) | (n1 & p2);
                if clash.count_ones() != 1 {
                    continue;
                }
                let pos = (p1 | p2) & !clash;
                let neg = (n1 | n2) & !clash;
                if (pos | neg).count_ones() as usize > w {
                    continue;
                }
                if pos == 0 && neg == 0 {
                    return Ok(true);
                }
                let idx = encode(pos, neg, &pow3);
                if !present[idx] {
                    present[idx] = true;
                    fresh.push((pos, neg));
                }
            }
        }
        if fresh.is_empty() {
            return Ok(false);
        }
        derived.extend(fresh);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{AffineSystem, Uniform};
    use crate::logic::Clause;

    fn cnf(n: usize, cls: &[&[i64]]) -> Cnf {
        Cnf::new(n, cls.iter().map(|c| Clause::from_dimacs(c)).collect()).unwrap()
    }

    #[test]
    fn validity_examples() {
        let phi = cnf(2, &[&[1, 2]]);
        let u = Distribution::Uniform(Uniform::new(2));
        assert_eq!(brute_validity(&phi, &u).unwrap(), Probability::Dyadic(Dyadic::new(3, 2)));
        let a = Distribution::Affine(AffineSystem::from_rows(2, &[(vec![0, 1], false)]).unwrap());
        assert_eq!(brute_validity(&phi, &a).unwrap(), Probability::Dyadic(Dyadic::new(1, 1)));
        let unsat = cnf(2, &[&[1], &[-1]]);
        assert_eq!(brute_validity(&unsat, &u).unwrap(), Probability::Dyadic(Dyadic::ZERO));
        assert!(brute_validity(&cnf(3, &[]), &u).is_err());
    }

    #[test]
    fn sat_examples() {
        assert_eq!(brute_sat(&cnf(1, &[&[1], &[-1]])).unwrap(), SatResult::Unsatisfiable);
        assert_eq!(brute_sat(&cnf(2, &[&[1, 2]])).unwrap(), SatResult::Satisfiable(vec![true, false]));
        let full = cnf(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        assert_eq!(brute_sat(&full).unwrap(), SatResult::Unsatisfiable);
        assert!(brute_sat(&Cnf::empty(21)).is_err());
    }

    #[test]
    fn width_examples() {
        let unit = cnf(1, &[&[1], &[-1]]);
        assert!(!brute_width_refutable(&unit, 0).unwrap());
        assert!(brute_width_refutable(&unit, 1).unwrap());
        let full = cnf(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        assert!(!brute_width_refutable(&full, 1).unwrap());
        assert!(brute_width_refutable(&full, 2).unwrap());
        let sat = cnf(3, &[&[1, 2], &[-1, 3], &[-3, 2]]);
        assert!((0..=3).all(|w| !brute_width_refutable(&sat, w).unwrap()));
    }
}
