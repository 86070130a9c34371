//! Variables, literals, clauses and CNFs, together with partial assignments,
//! restriction and witnessed evaluation.
//!
//! Variables are 0-based internally and printed 1-based (DIMACS style).
//! A [`Clause`] is a sorted, duplicate-free set of literals that never
//! contains a complementary pair; tautologies only exist as
//! [`RestrictedClause::Top`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("variable x{var} out of range for {n} variables")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("clause contains complementary literals on x{0}")]
    Tautology(usize),
    #[error("width bound {w} exceeds variable count {n}")]
    WidthTooLarge { w: usize, n: usize },
    #[error("assignment has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// A Boolean variable, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Variable from a 1-based DIMACS index.
    pub fn from_dimacs(v: usize) -> Var {
        assert!(v >= 1, "DIMACS variables are 1-based");
        Var((v - 1) as u32)
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

/// A literal, packed as `2 * var + polarity`; the negative literal of a
/// variable sorts before the positive one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        Literal(var.0 * 2 + positive as u32)
    }

    /// Parse a signed DIMACS integer (non-zero).
    pub fn from_dimacs(lit: i64) -> Literal {
        assert!(lit != 0, "0 is not a DIMACS literal");
        Literal::new(Var::from_dimacs(lit.unsigned_abs() as usize), lit > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Value the variable must take for this literal to be true.
    pub fn satisfying_value(self) -> bool {
        self.is_positive()
    }

    pub fn is_true_under(self, value: bool) -> bool {
        value == self.is_positive()
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.var())
        } else {
            write!(f, "¬{}", self.var())
        }
    }
}

/// A non-tautological disjunction of literals. Width 0 is the empty clause.
///
/// `Ord` is the canonical clause order: ascending width, then the sorted
/// variable indices lexicographically, then the polarity pattern with
/// negative before positive (first variable most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Literal>", into = "Vec<Literal>")]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    /// Build a clause, collapsing duplicates; complementary pairs are rejected.
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Result<Clause, LogicError> {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(LogicError::Tautology(w[0].var().index() + 1));
        }
        Ok(Clause { lits })
    }

    /// Clause from signed DIMACS integers. Panics on tautologies; meant for
    /// fixtures and tests.
    pub fn from_dimacs(lits: &[i64]) -> Clause {
        Clause::new(lits.iter().map(|&l| Literal::from_dimacs(l))).expect("tautological clause")
    }

    /// Wrap literals already known to be sorted, unique and non-complementary.
    pub(crate) fn from_sorted_unchecked(lits: Vec<Literal>) -> Clause {
        debug_assert!(lits.windows(2).all(|w| w[0].var() < w[1].var()));
        Clause { lits }
    }

    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    /// Polarity of `var` in this clause, if it occurs.
    pub fn polarity_of(&self, var: Var) -> Option<bool> {
        let probe = Literal::new(var, false);
        match self.lits.binary_search(&probe) {
            Ok(_) => Some(false),
            Err(i) => (i < self.lits.len() && self.lits[i].var() == var).then_some(true),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn max_var(&self) -> Option<Var> {
        self.lits.last().map(|l| l.var())
    }

    pub fn is_subclause_of(&self, other: &Clause) -> bool {
        if self.lits.len() > other.lits.len() {
            return false;
        }
        let mut it = other.lits.iter();
        'outer: for l in &self.lits {
            for o in it.by_ref() {
                match o.cmp(l) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// Clause with `lit` removed (no-op when absent).
    pub fn without(&self, lit: Literal) -> Clause {
        Clause { lits: self.lits.iter().copied().filter(|&l| l != lit).collect() }
    }

    pub fn evaluate(&self, x: &[bool]) -> bool {
        self.lits.iter().any(|l| l.is_true_under(x[l.var().index()]))
    }

    fn check_range(&self, n: usize) -> Result<(), LogicError> {
        match self.max_var() {
            Some(v) if v.index() >= n => Err(LogicError::VariableOutOfRange { var: v.index() + 1, n }),
            _ => Ok(()),
        }
    }

    /// Whether the clause is witnessed true, witnessed false, or neither on `rho`.
    pub fn witness_status(&self, rho: &PartialAssignment) -> Result<Witness, LogicError> {
        self.check_range(rho.len())?;
        Ok(self.witness_status_unchecked(rho.values()))
    }

    pub(crate) fn witness_status_unchecked(&self, rho: &[Option<bool>]) -> Witness {
        let mut all_false = true;
        for l in &self.lits {
            match rho[l.var().index()] {
                Some(v) if l.is_true_under(v) => return Witness::True,
                Some(_) => {}
                None => all_false = false,
            }
        }
        if all_false {
            Witness::False
        } else {
            Witness::Undetermined
        }
    }

    /// `C|ρ`: `Top` when witnessed true, otherwise the literals on unassigned
    /// positions.
    pub fn restrict(&self, rho: &PartialAssignment) -> Result<RestrictedClause, LogicError> {
        self.check_range(rho.len())?;
        Ok(self.restrict_unchecked(rho.values()))
    }

    pub(crate) fn restrict_unchecked(&self, rho: &[Option<bool>]) -> RestrictedClause {
        let mut kept = Vec::with_capacity(self.lits.len());
        for &l in &self.lits {
            match rho[l.var().index()] {
                Some(v) if l.is_true_under(v) => return RestrictedClause::Top,
                Some(_) => {}
                None => kept.push(l),
            }
        }
        RestrictedClause::Clause(Clause { lits: kept })
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clause {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width()
            .cmp(&other.width())
            .then_with(|| self.vars().cmp(other.vars()))
            .then_with(|| {
                self.lits.iter().map(|l| l.is_positive()).cmp(other.lits.iter().map(|l| l.is_positive()))
            })
    }
}

impl TryFrom<Vec<Literal>> for Clause {
    type Error = LogicError;

    fn try_from(lits: Vec<Literal>) -> Result<Self, Self::Error> {
        Clause::new(lits)
    }
}

impl From<Clause> for Vec<Literal> {
    fn from(c: Clause) -> Self {
        c.lits
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return write!(f, "⊥");
        }
        write!(f, "(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Witness {
    True,
    False,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RestrictedClause {
    Top,
    Clause(Clause),
}

impl RestrictedClause {
    pub fn as_clause(&self) -> Option<&Clause> {
        match self {
            RestrictedClause::Top => None,
            RestrictedClause::Clause(c) => Some(c),
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, RestrictedClause::Top)
    }
}

/// A conjunction of clauses over `n` variables. Clause order is significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cnf {
    n: usize,
    clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Cnf, LogicError> {
        for c in &clauses {
            c.check_range(n)?;
        }
        Ok(Cnf { n, clauses })
    }

    pub fn empty(n: usize) -> Cnf {
        Cnf { n, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn push(&mut self, clause: Clause) -> Result<(), LogicError> {
        clause.check_range(self.n)?;
        self.clauses.push(clause);
        Ok(())
    }

    /// `self ∧ other`, clauses of `self` first.
    pub fn conjoin(&self, other: &[Clause]) -> Result<Cnf, LogicError> {
        let mut out = self.clone();
        for c in other {
            out.push(c.clone())?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, x: &[bool]) -> Result<bool, LogicError> {
        if x.len() != self.n {
            return Err(LogicError::LengthMismatch { got: x.len(), expected: self.n });
        }
        Ok(self.clauses.iter().all(|c| c.evaluate(x)))
    }

    /// `φ|ρ`: `Bottom` if some clause is witnessed false, otherwise the
    /// non-`Top` restricted clauses in their original order.
    pub fn restrict(&self, rho: &PartialAssignment) -> Result<RestrictedCnf, LogicError> {
        if rho.len() != self.n {
            return Err(LogicError::LengthMismatch { got: rho.len(), expected: self.n });
        }
        Ok(self.restrict_indexed(rho).0)
    }

    /// Restriction plus, for every surviving clause, the index of its source
    /// clause in `self`.
    pub(crate) fn restrict_indexed(&self, rho: &PartialAssignment) -> (RestrictedCnf, Vec<usize>) {
        let mut out = Vec::with_capacity(self.clauses.len());
        let mut origin = Vec::with_capacity(self.clauses.len());
        for (i, c) in self.clauses.iter().enumerate() {
            match c.restrict_unchecked(rho.values()) {
                RestrictedClause::Top => {}
                RestrictedClause::Clause(r) if r.is_empty() => return (RestrictedCnf::Bottom, Vec::new()),
                RestrictedClause::Clause(r) => {
                    out.push(r);
                    origin.push(i);
                }
            }
        }
        (RestrictedCnf::Cnf(Cnf { n: self.n, clauses: out }), origin)
    }

    /// True when some clause is witnessed false on `rho`.
    pub fn witnessed_false(&self, rho: &PartialAssignment) -> bool {
        self.clauses.iter().any(|c| c.witness_status_unchecked(rho.values()) == Witness::False)
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RestrictedCnf {
    Bottom,
    Cnf(Cnf),
}

/// An element of `{0,1,*}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialAssignment(Vec<Option<bool>>);

impl PartialAssignment {
    pub fn new(values: Vec<Option<bool>>) -> PartialAssignment {
        PartialAssignment(values)
    }

    pub fn unassigned(n: usize) -> PartialAssignment {
        PartialAssignment(vec![None; n])
    }

    pub fn full(x: &[bool]) -> PartialAssignment {
        PartialAssignment(x.iter().map(|&b| Some(b)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0[var.index()]
    }

    pub fn values(&self) -> &[Option<bool>] {
        &self.0
    }

    pub fn is_consistent_with(&self, x: &[bool]) -> bool {
        self.0.len() == x.len() && self.0.iter().zip(x).all(|(r, &b)| r.is_none_or(|v| v == b))
    }

    pub fn revealed(&self) -> usize {
        self.0.iter().filter(|v| v.is_some()).count()
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            let c = match v {
                Some(true) => '1',
                Some(false) => '0',
                None => '*',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All non-tautological clauses of width `1..=w` over `n` variables, in
/// canonical order. The empty clause is not produced.
pub fn enumerate_clauses(n: usize, w: usize) -> Result<ClauseEnumerator, LogicError> {
    if w > n {
        return Err(LogicError::WidthTooLarge { w, n });
    }
    Ok(ClauseEnumerator { n, max_width: w, width: 1, vars: (0..1).collect(), polarity: 0, done: w == 0 })
}

/// Closed-form size of [`enumerate_clauses`]: `Σ_{k=1..w} C(n,k)·2^k`.
pub fn clause_count(n: usize, w: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for k in 1..=w.min(n) {
        binom = binom * (n - k + 1) as u128 / k as u128;
        total = total.saturating_add(binom.saturating_mul(1u128 << k.min(127)));
    }
    total
}

#[derive(Debug, Clone)]
pub struct ClauseEnumerator {
    n: usize,
    max_width: usize,
    width: usize,
    vars: Vec<usize>,
    polarity: u64,
    done: bool,
}

impl ClauseEnumerator {
    fn advance_vars(&mut self) -> bool {
        let k = self.vars.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.vars[i] < self.n - (k - i) {
                self.vars[i] += 1;
                for j in i + 1..k {
                    self.vars[j] = self.vars[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for ClauseEnumerator {
    type Item = Clause;

    fn next(&mut self) -> Option<Clause> {
        if self.done {
            return None;
        }
        let k = self.width;
        let lits = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, &v)| Literal::new(Var(v as u32), (self.polarity >> (k - 1 - i)) & 1 == 1))
            .collect();
        let clause = Clause::from_sorted_unchecked(lits);

        self.polarity += 1;
        if self.polarity == 1u64 << k {
            self.polarity = 0;
            if !self.advance_vars() {
                self.width += 1;
                if self.width > self.max_width {
                    self.done = true;
                } else {
                    self.vars = (0..self.width).collect();
                }
            }
        }
        Some(clause)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(s: &str) -> PartialAssignment {
        PartialAssignment::new(
            s.chars()
                .map(|c| match c {
                    '1' => Some(true),
                    '0' => Some(false),
                    _ => None,
                })
                .collect(),
        )
    }

    #[test]
    fn witness_examples() {
        let c = Clause::from_dimacs(&[1, 2]);
        assert_eq!(c.witness_status(&pa("1*")).unwrap(), Witness::True);
        assert_eq!(c.witness_status(&pa("00")).unwrap(), Witness::False);
        assert_eq!(c.witness_status(&pa("0*")).unwrap(), Witness::Undetermined);
        assert_eq!(Clause::empty().witness_status(&pa("**")).unwrap(), Witness::False);
        assert!(Clause::from_dimacs(&[3]).witness_status(&pa("**")).is_err());
    }

    #[test]
    fn restrict_clause_examples() {
        let c = Clause::from_dimacs(&[1, -2]);
        assert_eq!(c.restrict(&pa("0*")).unwrap(), RestrictedClause::Clause(Clause::from_dimacs(&[-2])));
        assert_eq!(c.restrict(&pa("*0")).unwrap(), RestrictedClause::Top);
        assert_eq!(Clause::from_dimacs(&[1]).restrict(&pa("0")).unwrap(), RestrictedClause::Clause(Clause::empty()));
    }

    #[test]
    fn restrict_cnf_examples() {
        let phi = Cnf::new(2, vec![Clause::from_dimacs(&[1]), Clause::from_dimacs(&[2])]).unwrap();
        let expect = Cnf::new(2, vec![Clause::from_dimacs(&[2])]).unwrap();
        assert_eq!(phi.restrict(&pa("1*")).unwrap(), RestrictedCnf::Cnf(expect));
        assert_eq!(phi.restrict(&pa("0*")).unwrap(), RestrictedCnf::Bottom);
        let psi = Cnf::new(2, vec![Clause::from_dimacs(&[1, 2])]).unwrap();
        assert_eq!(psi.restrict(&pa("**")).unwrap(), RestrictedCnf::Cnf(psi.clone()));
    }

    #[test]
    fn evaluate_examples() {
        let phi = Cnf::new(2, vec![Clause::from_dimacs(&[1, -2])]).unwrap();
        assert!(phi.evaluate(&[false, false]).unwrap());
        let contra = Cnf::new(1, vec![Clause::from_dimacs(&[1]), Clause::from_dimacs(&[-1])]).unwrap();
        assert!(!contra.evaluate(&[true]).unwrap());
        assert!(!contra.evaluate(&[false]).unwrap());
        assert!(Cnf::empty(3).evaluate(&[true, false, true]).unwrap());
    }

    #[test]
    fn tautology_rejected() {
        assert_eq!(Clause::new([Var(0).positive(), Var(0).negative()]), Err(LogicError::Tautology(1)));
        // duplicates collapse
        assert_eq!(Clause::new([Var(1).positive(), Var(1).positive()]).unwrap().width(), 1);
    }

    #[test]
    fn enumeration_small_cases() {
        let got: Vec<String> = enumerate_clauses(2, 1).unwrap().map(|c| c.to_string()).collect();
        assert_eq!(got, ["(¬x1)", "(x1)", "(¬x2)", "(x2)"]);
        assert_eq!(enumerate_clauses(2, 2).unwrap().count(), 8);
        assert_eq!(enumerate_clauses(3, 2).unwrap().count(), 18);
        assert!(enumerate_clauses(2, 3).is_err());
        assert_eq!(enumerate_clauses(3, 0).unwrap().count(), 0);
    }

    #[test]
    fn enumeration_is_canonical_and_complete() {
        for n in 1..=6 {
            for w in 1..=n {
                let all: Vec<Clause> = enumerate_clauses(n, w).unwrap().collect();
                assert_eq!(all.len() as u128, clause_count(n, w));
                assert!(all.windows(2).all(|p| p[0] < p[1]), "order n={n} w={w}");
            }
        }
    }

    #[test]
    fn enumeration_polarity_order() {
        let w2: Vec<String> = enumerate_clauses(2, 2).unwrap().skip(4).map(|c| c.to_string()).collect();
        assert_eq!(w2, ["(¬x1 ∨ ¬x2)", "(¬x1 ∨ x2)", "(x1 ∨ ¬x2)", "(x1 ∨ x2)"]);
    }

    #[test]
    fn subclause_and_polarity() {
        let a = Clause::from_dimacs(&[1, -3]);
        let b = Clause::from_dimacs(&[1, 2, -3]);
        assert!(a.is_subclause_of(&b));
        assert!(!b.is_subclause_of(&a));
        assert!(Clause::empty().is_subclause_of(&a));
        assert!(!Clause::from_dimacs(&[3]).is_subclause_of(&b));
        assert_eq!(b.polarity_of(Var(2)), Some(false));
        assert_eq!(b.polarity_of(Var(1)), Some(true));
        assert_eq!(b.polarity_of(Var(3)), None);
    }
}
