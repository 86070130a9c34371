//! Random instances for tests and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::distributions::{AffineSystem, BitRow, Equation};
use crate::logic::{Clause, Cnf, Literal, PartialAssignment, Var};

/// A clause over `k` distinct variables of `0..n` with random polarities.
pub fn random_clause<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Clause {
    let vars = sample(rng, n, k);
    Clause::new(vars.into_iter().map(|v| Literal::new(Var(v as u32), rng.gen()))).expect("distinct variables")
}

/// `m` clauses with widths uniform in `1..=max_width.min(n)`.
pub fn random_cnf<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, max_width: usize) -> Cnf {
    let top = max_width.min(n).max(1);
    let clauses = (0..m).map(|_| {
        let k = rng.gen_range(1..=top);
        random_clause(rng, n, k)
    });
    Cnf::new(n, clauses.collect()).expect("variables in range")
}

/// `m` clauses of exactly `k` distinct variables each.
pub fn random_k_cnf<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, k: usize) -> Cnf {
    Cnf::new(n, (0..m).map(|_| random_clause(rng, n, k)).collect()).expect("variables in range")
}

/// `rows` random equations, each variable included with probability
/// `density`. Right-hand sides are read off a hidden random solution, so
/// the system is always solvable.
pub fn random_affine<R: Rng + ?Sized>(rng: &mut R, n: usize, rows: usize, density: f64) -> AffineSystem {
    let hidden: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let hidden_row = BitRow::from_indices(n, (0..n).filter(|&i| hidden[i]));
    let eqs = (0..rows)
        .map(|_| {
            let coeffs = BitRow::from_indices(n, (0..n).filter(|_| rng.gen_bool(density)));
            let rhs = coeffs.dot(&hidden_row);
            Equation { coeffs, rhs }
        })
        .collect();
    AffineSystem::new(n, eqs).expect("consistent by construction")
}

/// Each coordinate revealed with probability `reveal`, with a random value.
pub fn random_partial_assignment<R: Rng + ?Sized>(rng: &mut R, n: usize, reveal: f64) -> PartialAssignment {
    PartialAssignment::new((0..n).map(|_| rng.gen_bool(reveal).then(|| rng.gen())).collect())
}
