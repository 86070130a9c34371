//! Width-bounded resolution by saturation.
//!
//! Input clauses of width at most `w` seed the clause set. The smallest
//! unprocessed clause in canonical order is repeatedly resolved against
//! every processed clause; non-tautological resolvents of width at most `w`
//! join the set unless an existing clause subsumes them. The search stops
//! at the empty clause or at the fixpoint. Forward subsumption keeps the
//! search complete for width-`w` refutations: any derivation from a
//! subsumed clause can be replayed from its subsumer without growing wider.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{resolve, Justification, ProofStep, ResolutionProof, Resolvent};
use crate::logic::{Clause, Cnf, Var};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Seed the search with input clauses wider than the bound as well.
    pub include_wide_axioms: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Clauses kept in the derived set (axioms included).
    pub kept: usize,
    /// Clauses whose resolvents were fully explored.
    pub processed: usize,
    pub subsumed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Refuted(ResolutionProof),
    NoBoundedRefutation,
}

impl SearchOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, SearchOutcome::Refuted(_))
    }
}

#[derive(Debug, Clone, Copy)]
enum Origin {
    Axiom(usize),
    Cut(usize, usize, Var),
}

struct Saturation {
    w: usize,
    clauses: Vec<Clause>,
    origin: Vec<Origin>,
    known: HashMap<Clause, usize>,
    /// Kept clause ids by their smallest literal, for subsumption probes.
    by_first: Vec<Vec<usize>>,
    /// Processed clause ids by every literal they contain.
    occurs: Vec<Vec<usize>>,
    queue: BTreeMap<Clause, usize>,
    stats: SearchStats,
}

impl Saturation {
    fn new(n: usize, w: usize) -> Self {
        Saturation {
            w,
            clauses: Vec::new(),
            origin: Vec::new(),
            known: HashMap::new(),
            by_first: vec![Vec::new(); 2 * n],
            occurs: vec![Vec::new(); 2 * n],
            queue: BTreeMap::new(),
            stats: SearchStats::default(),
        }
    }

    fn subsumed(&self, c: &Clause) -> bool {
        c.literals().iter().any(|l| self.by_first[l.code()].iter().any(|&d| self.clauses[d].is_subclause_of(c)))
    }

    /// Insert a new clause; returns its id when it was kept.
    fn add(&mut self, c: Clause, origin: Origin) -> Option<usize> {
        if self.known.contains_key(&c) {
            return None;
        }
        if self.subsumed(&c) {
            self.stats.subsumed += 1;
            return None;
        }
        let id = self.clauses.len();
        if let Some(first) = c.literals().first() {
            self.by_first[first.code()].push(id);
        }
        self.known.insert(c.clone(), id);
        self.queue.insert(c.clone(), id);
        self.clauses.push(c);
        self.origin.push(origin);
        Some(id)
    }

    /// Run to the empty clause (returning its id) or to the fixpoint.
    fn run(&mut self) -> Option<usize> {
        while let Some((given, g)) = self.queue.pop_first() {
            for &l in given.literals() {
                self.occurs[l.code()].push(g);
            }
            self.stats.processed += 1;
            for &l in given.literals() {
                let partners = self.occurs[(!l).code()].clone();
                for p in partners {
                    let Resolvent::Clause(r) = resolve(&given, &self.clauses[p], l.var()) else {
                        continue;
                    };
                    if r.width() > self.w {
                        continue;
                    }
                    let (pos, neg) = if l.is_positive() { (g, p) } else { (p, g) };
                    let empty = r.is_empty();
                    if let Some(id) = self.add(r, Origin::Cut(pos, neg, l.var())) {
                        if empty {
                            return Some(id);
                        }
                    }
                }
            }
        }
        None
    }

    fn proof_of(&self, root: usize, phi: &Cnf) -> ResolutionProof {
        let mut needed = vec![false; self.clauses.len()];
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut needed[id], true) {
                continue;
            }
            if let Origin::Cut(a, b, _) = self.origin[id] {
                stack.push(a);
                stack.push(b);
            }
        }
        let mut position = vec![usize::MAX; self.clauses.len()];
        let mut steps = Vec::new();
        for id in (0..self.clauses.len()).filter(|&id| needed[id]) {
            position[id] = steps.len();
            let justification = match self.origin[id] {
                Origin::Axiom(i) => {
                    debug_assert_eq!(&phi.clauses()[i], &self.clauses[id]);
                    Justification::Axiom(i)
                }
                Origin::Cut(a, b, v) => Justification::Cut(position[a], position[b], v),
            };
            steps.push(ProofStep::new(self.clauses[id].clone(), justification));
        }
        ResolutionProof::new(steps)
    }
}

/// Decide whether `phi` has a resolution refutation using only clauses of
/// width at most `w`.
pub fn w_refute(phi: &Cnf, w: usize) -> SearchOutcome {
    w_refute_with(phi, w, SearchOptions::default()).0
}

pub fn w_refute_with(phi: &Cnf, w: usize, options: SearchOptions) -> (SearchOutcome, SearchStats) {
    let mut sat = Saturation::new(phi.num_vars(), w);
    let mut seeds: Vec<(usize, &Clause)> = phi
        .clauses()
        .iter()
        .enumerate()
        .filter(|(_, c)| options.include_wide_axioms || c.width() <= w)
        .collect();
    // narrow seeds first so that subsumption among axioms is order-independent
    seeds.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));
    for (i, c) in seeds {
        if c.is_empty() {
            let proof = ResolutionProof::new(vec![ProofStep::new(Clause::empty(), Justification::Axiom(i))]);
            sat.stats.kept = 1;
            return (SearchOutcome::Refuted(proof), sat.stats);
        }
        sat.add(c.clone(), Origin::Axiom(i));
    }
    let outcome = match sat.run() {
        Some(root) => SearchOutcome::Refuted(sat.proof_of(root, phi)),
        None => SearchOutcome::NoBoundedRefutation,
    };
    sat.stats.kept = sat.clauses.len();
    (outcome, sat.stats)
}
