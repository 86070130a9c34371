use thiserror::Error;

use super::{literal_of, resolve, Justification, ProofStep, ResolutionProof, Resolvent};
use crate::logic::{Cnf, PartialAssignment, RestrictedClause, RestrictedCnf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictProofError {
    #[error("the restricted formula is ⊥; there is nothing to refute")]
    FormulaIsBottom,
    #[error("partial assignment has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// `Π|ρ`: substitute `C|ρ` for every clause of a proof of `phi` and repair
/// the justifications so the result is a proof over `phi|ρ`.
///
/// Steps that become `⊤` are marked and never referenced. A cut on a
/// variable fixed by `ρ` degenerates to a weakening of the parent whose
/// pivot literal was falsified. Axiom indices are renumbered to the
/// clause list of `phi.restrict(ρ)`. `proof` must check against `phi`.
pub fn restrict_proof(
    proof: &ResolutionProof,
    rho: &PartialAssignment,
    phi: &Cnf,
) -> Result<ResolutionProof, RestrictProofError> {
    if rho.len() != phi.num_vars() {
        return Err(RestrictProofError::LengthMismatch { got: rho.len(), expected: phi.num_vars() });
    }
    let (restricted, origin) = phi.restrict_indexed(rho);
    if restricted == RestrictedCnf::Bottom {
        return Err(RestrictProofError::FormulaIsBottom);
    }
    let mut axiom_position = vec![None; phi.len()];
    for (new, &old) in origin.iter().enumerate() {
        axiom_position[old] = Some(new);
    }

    let mut steps: Vec<ProofStep> = Vec::with_capacity(proof.size());
    for step in &proof.steps {
        let clause = match &step.clause {
            RestrictedClause::Top => RestrictedClause::Top,
            RestrictedClause::Clause(c) => c.restrict_unchecked(rho.values()),
        };
        let RestrictedClause::Clause(clause) = clause else {
            steps.push(ProofStep::top());
            continue;
        };
        let justification = match step.justification {
            Justification::Axiom(i) => {
                Justification::Axiom(axiom_position[i].expect("a non-⊤ axiom survives restriction"))
            }
            Justification::Weakening(j) => Justification::Weakening(j),
            Justification::Cut(j, k, v) => match rho.get(v) {
                None => Justification::Cut(j, k, v),
                // the parent holding the satisfied pivot literal became ⊤;
                // the other lost its falsified pivot literal and is a subclause
                Some(value) => {
                    let pos_parent = match proof.steps[j].clause.as_clause().and_then(|c| literal_of(c, v)) {
                        Some(l) if l.is_positive() => j,
                        _ => k,
                    };
                    let neg_parent = if pos_parent == j { k } else { j };
                    Justification::Weakening(if value { neg_parent } else { pos_parent })
                }
            },
            Justification::TopMark => unreachable!("⊤ steps restrict to ⊤"),
        };
        steps.push(ProofStep::new(clause, justification));
    }
    Ok(ResolutionProof::new(steps))
}

/// A weakening-free proof plus, for each original step, the step of the new
/// proof whose clause is a subclause of it (`None` when pruned away).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakeningFree {
    pub proof: ResolutionProof,
    pub correspondence: Vec<Option<usize>>,
}

/// Remove every weakening step from a valid derivation of `phi`.
///
/// Each original clause `C_i` is replaced by a subclause `D_i`: weakenings
/// reuse their parent's subclause, and a cut whose pivot literal is missing
/// from one parent's subclause reuses that parent. If the original ends in
/// the empty clause, the output is pruned to the steps the empty clause
/// depends on, so it again ends in the empty clause.
pub fn eliminate_weakening(proof: &ResolutionProof, phi: &Cnf) -> WeakeningFree {
    debug_assert!(super::check_proof(phi, proof, false).is_ok());
    let mut steps: Vec<ProofStep> = Vec::new();
    let mut corr: Vec<usize> = Vec::with_capacity(proof.size());
    for step in &proof.steps {
        let target = match (&step.clause, step.justification) {
            (RestrictedClause::Top, _) | (_, Justification::TopMark) => {
                steps.push(ProofStep::top());
                steps.len() - 1
            }
            (RestrictedClause::Clause(c), Justification::Axiom(i)) => {
                steps.push(ProofStep::new(c.clone(), Justification::Axiom(i)));
                steps.len() - 1
            }
            (_, Justification::Weakening(j)) => corr[j],
            (_, Justification::Cut(j, k, v)) => {
                let (dj, dk) = (corr[j], corr[k]);
                let cj = steps[dj].clause.as_clause().expect("cut parents are clauses");
                let ck = steps[dk].clause.as_clause().expect("cut parents are clauses");
                match resolve(cj, ck, v) {
                    Resolvent::Clause(r) => {
                        steps.push(ProofStep::new(r, Justification::Cut(dj, dk, v)));
                        steps.len() - 1
                    }
                    // subclauses of a non-tautological resolution never clash twice
                    Resolvent::Tautology => unreachable!("subclauses of clashing clauses clash once"),
                    Resolvent::NotResolvable => {
                        if literal_of(cj, v).is_none() {
                            dj
                        } else {
                            dk
                        }
                    }
                }
            }
        };
        corr.push(target);
    }

    if !proof.ends_in_empty_clause() {
        return WeakeningFree { proof: ResolutionProof::new(steps), correspondence: corr.into_iter().map(Some).collect() };
    }

    let root = *corr.last().expect("non-empty proof");
    let mut needed = vec![false; steps.len()];
    let mut stack = vec![root];
    while let Some(i) = stack.pop() {
        if std::mem::replace(&mut needed[i], true) {
            continue;
        }
        if let Justification::Cut(a, b, _) = steps[i].justification {
            stack.push(a);
            stack.push(b);
        }
    }
    let mut position = vec![None; steps.len()];
    let mut pruned = Vec::new();
    for (i, s) in steps.into_iter().enumerate() {
        if !needed[i] {
            continue;
        }
        position[i] = Some(pruned.len());
        let justification = match s.justification {
            Justification::Cut(a, b, v) => Justification::Cut(position[a].unwrap(), position[b].unwrap(), v),
            other => other,
        };
        pruned.push(ProofStep { clause: s.clause, justification });
    }
    WeakeningFree { proof: ResolutionProof::new(pruned), correspondence: corr.into_iter().map(|i| position[i]).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Clause, Var};
    use crate::resolution::{check_proof, w_refute, SearchOutcome};

    fn c(l: &[i64]) -> Clause {
        Clause::from_dimacs(l)
    }

    fn pa(s: &str) -> PartialAssignment {
        PartialAssignment::new(s.chars().map(|ch| ch.to_digit(2).map(|d| d == 1)).collect())
    }

    #[test]
    fn identity_restriction() {
        let phi = Cnf::new(1, vec![c(&[1]), c(&[-1])]).unwrap();
        let SearchOutcome::Refuted(p) = w_refute(&phi, 1) else { panic!() };
        assert_eq!(restrict_proof(&p, &pa("*"), &phi).unwrap(), p);
    }

    #[test]
    fn restriction_tops_out_first_axiom() {
        // (x1∨x2) ∧ (¬x1∨x2) ∧ (¬x2) refuted by hand, then restricted by x1=1
        let phi = Cnf::new(2, vec![c(&[1, 2]), c(&[-1, 2]), c(&[-2])]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofStep::new(c(&[1, 2]), Justification::Axiom(0)),
            ProofStep::new(c(&[-1, 2]), Justification::Axiom(1)),
            ProofStep::new(c(&[2]), Justification::Cut(0, 1, Var(0))),
            ProofStep::new(c(&[-2]), Justification::Axiom(2)),
            ProofStep::new(Clause::empty(), Justification::Cut(2, 3, Var(1))),
        ]);
        check_proof(&phi, &p, true).unwrap();
        let rho = pa("1*");
        let r = restrict_proof(&p, &rho, &phi).unwrap();
        let RestrictedCnf::Cnf(phi_r) = phi.restrict(&rho).unwrap() else { panic!() };
        assert_eq!(phi_r.clauses(), &[c(&[2]), c(&[-2])]);
        assert!(r.steps[0].clause.is_top());
        assert_eq!(r.steps[2], ProofStep::new(c(&[2]), Justification::Weakening(1)));
        check_proof(&phi_r, &r, true).unwrap();
    }

    #[test]
    fn bottom_is_guarded() {
        let phi = Cnf::new(1, vec![c(&[1]), c(&[-1])]).unwrap();
        let SearchOutcome::Refuted(p) = w_refute(&phi, 1) else { panic!() };
        assert_eq!(restrict_proof(&p, &pa("0"), &phi), Err(RestrictProofError::FormulaIsBottom));
    }

    #[test]
    fn axiom_cut_only_unchanged() {
        let phi = Cnf::new(1, vec![c(&[1]), c(&[-1])]).unwrap();
        let SearchOutcome::Refuted(p) = w_refute(&phi, 1) else { panic!() };
        let wf = eliminate_weakening(&p, &phi);
        assert_eq!(wf.proof, p);
    }

    #[test]
    fn weakened_literal_not_cut() {
        // (x1) weakened to (x1∨x2), then cut with (¬x2∨x3) on x2
        let phi = Cnf::new(3, vec![c(&[1]), c(&[-2, 3])]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofStep::new(c(&[1]), Justification::Axiom(0)),
            ProofStep::new(c(&[1, 2]), Justification::Weakening(0)),
            ProofStep::new(c(&[-2, 3]), Justification::Axiom(1)),
            ProofStep::new(c(&[1, 3]), Justification::Cut(1, 2, Var(1))),
        ]);
        check_proof(&phi, &p, false).unwrap();
        let wf = eliminate_weakening(&p, &phi);
        check_proof(&phi, &wf.proof, false).unwrap();
        assert!(wf.proof.steps.iter().all(|s| !matches!(s.justification, Justification::Weakening(_))));
        assert_eq!(wf.proof.size(), 2);
        let last = wf.correspondence[3].unwrap();
        assert_eq!(wf.proof.steps[last].clause, RestrictedClause::Clause(c(&[1])));
        for (i, ni) in wf.correspondence.iter().enumerate() {
            let new = wf.proof.steps[ni.unwrap()].clause.as_clause().unwrap();
            assert!(new.is_subclause_of(p.steps[i].clause.as_clause().unwrap()));
        }
    }

    #[test]
    fn weakening_of_empty_clause() {
        let phi = Cnf::new(2, vec![c(&[1]), c(&[-1]), c(&[2])]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofStep::new(c(&[1]), Justification::Axiom(0)),
            ProofStep::new(c(&[-1]), Justification::Axiom(1)),
            ProofStep::new(Clause::empty(), Justification::Cut(0, 1, Var(0))),
            ProofStep::new(c(&[-2]), Justification::Weakening(2)),
            ProofStep::new(c(&[2]), Justification::Axiom(2)),
            ProofStep::new(Clause::empty(), Justification::Cut(4, 3, Var(1))),
        ]);
        check_proof(&phi, &p, true).unwrap();
        let wf = eliminate_weakening(&p, &phi);
        check_proof(&phi, &wf.proof, true).unwrap();
        assert_eq!(wf.proof.size(), 3);
        assert_eq!(wf.correspondence[4], None);
    }
}
