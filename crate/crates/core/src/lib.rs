//! Deciding PAC-semantics validity of CNF queries from masked examples.
//!
//! A query `φ` is checked against a background distribution that is only
//! observed through partial assignments: each coordinate of a draw is
//! revealed independently with probability `μ`. The deciders combine
//! width-bounded resolution on restricted formulas with a table of narrow
//! clauses learned from the same masked data.
//!
//! The crate is organised bottom-up:
//!
//! * [`logic`]: clauses, CNFs, partial assignments, restriction, witnessing.
//! * [`distributions`]: uniform, affine (F2) and topic-model sources with
//!   exact probabilities, plus the correlation-gap audit.
//! * [`masking`]: seeded, chunked sampling and masking.
//! * [`resolution`]: proofs, the proof checker, bounded-width search and
//!   proof transformations.
//! * [`learner`]: the clause table and query narrowing.
//! * [`deciders`]: Learn+RES, CNF-Eval and the uniform decider.
//! * [`oracles`]: brute-force ground truth for small instances.
//! * [`io`]: text formats.
//!
//! With the default `parallel` feature, [`Execution::Parallel`] spreads
//! independent work over rayon's pool; results never depend on it.

pub mod deciders;
pub mod distributions;
pub mod exec;
pub mod generate;
pub mod io;
pub mod learner;
pub mod logic;
pub mod masking;
pub mod oracles;
pub mod resolution;
pub mod rng;

pub use exec::Execution;
pub use logic::{Clause, Cnf, Literal, PartialAssignment, RestrictedClause, RestrictedCnf, Var, Witness};
