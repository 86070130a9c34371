use proptest::prelude::*;

use pacres::distributions::{AffineSystem, Dyadic};
use pacres::io;
use pacres::learner::{learn_clause_table, narrow_clause, narrow_cnf, LearnedClause, LearnedTable};
use pacres::logic::enumerate_clauses;
use pacres::oracles::{brute_sat, brute_width_refutable};
use pacres::resolution::{check_proof, eliminate_weakening, restrict_proof, w_refute, Justification, SearchOutcome};
use pacres::{Clause, Cnf, Execution, Literal, PartialAssignment, RestrictedCnf, Var, Witness};

/// Literals over distinct variables of `0..n`; a repeated variable keeps its
/// first polarity.
fn clause_from(n: usize, raw: &[(usize, bool)]) -> Clause {
    let mut seen = vec![false; n];
    let lits = raw.iter().filter(|(v, _)| !std::mem::replace(&mut seen[v % n], true)).map(|&(v, b)| Literal::new(Var((v % n) as u32), b));
    Clause::new(lits).unwrap()
}

fn clause_strategy(n: usize, max_width: usize) -> impl Strategy<Value = Clause> {
    prop::collection::vec((0..n, any::<bool>()), 1..=max_width).prop_map(move |raw| clause_from(n, &raw))
}

fn cnf_strategy(n_max: usize, m_max: usize, w_max: usize) -> impl Strategy<Value = Cnf> {
    (1..=n_max).prop_flat_map(move |n| {
        prop::collection::vec(clause_strategy(n, w_max), 0..=m_max).prop_map(move |cs| Cnf::new(n, cs).unwrap())
    })
}

fn assignment(n: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), n)
}

/// A full assignment and a partial assignment consistent with it.
fn masked_pair(n: usize) -> impl Strategy<Value = (Vec<bool>, PartialAssignment)> {
    (assignment(n), prop::collection::vec(any::<bool>(), n)).prop_map(|(x, keep)| {
        let rho = PartialAssignment::new(x.iter().zip(&keep).map(|(&b, &k)| k.then_some(b)).collect());
        (x, rho)
    })
}

fn affine_strategy(n_max: usize) -> impl Strategy<Value = AffineSystem> {
    (1..=n_max).prop_flat_map(|n| {
        (assignment(n), prop::collection::vec(prop::collection::vec(any::<bool>(), n), 0..=n)).prop_map(move |(hidden, rows)| {
            let rows: Vec<(Vec<usize>, bool)> = rows
                .iter()
                .map(|r| {
                    let vars: Vec<usize> = (0..n).filter(|&i| r[i]).collect();
                    let rhs = vars.iter().filter(|&&i| hidden[i]).count() % 2 == 1;
                    (vars, rhs)
                })
                .collect();
            AffineSystem::from_rows(n, &rows).unwrap()
        })
    })
}

fn all_assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u32 << n).map(move |k| (0..n).map(|i| k >> i & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn witnessing_is_sound(c in clause_strategy(8, 8), (x, rho) in masked_pair(8)) {
        match c.witness_status(&rho).unwrap() {
            Witness::True => prop_assert!(c.evaluate(&x)),
            Witness::False => prop_assert!(!c.evaluate(&x)),
            Witness::Undetermined => {}
        }
    }

    #[test]
    fn restriction_commutes_with_evaluation(phi in cnf_strategy(6, 8, 4), seed in any::<u64>()) {
        let n = phi.num_vars();
        let bits: Vec<bool> = (0..2 * n).map(|i| seed >> (i % 64) & 1 == 1).collect();
        let x = bits[..n].to_vec();
        let rho = PartialAssignment::new((0..n).map(|i| bits[n + i].then_some(x[i])).collect());
        let restricted = match phi.restrict(&rho).unwrap() {
            RestrictedCnf::Bottom => false,
            RestrictedCnf::Cnf(r) => r.evaluate(&x).unwrap(),
        };
        prop_assert_eq!(restricted, phi.evaluate(&x).unwrap());
    }

    #[test]
    fn refutations_agree_with_fixpoint_oracle(phi in cnf_strategy(6, 14, 6)) {
        for w in 0..=phi.num_vars() {
            let outcome = w_refute(&phi, w);
            prop_assert_eq!(outcome.is_refuted(), brute_width_refutable(&phi, w).unwrap(), "w={}", w);
            if let SearchOutcome::Refuted(p) = outcome {
                prop_assert!(check_proof(&phi, &p, true).is_ok());
                prop_assert!(p.width() <= w);
            }
        }
    }

    #[test]
    fn full_width_search_decides_satisfiability(phi in cnf_strategy(8, 24, 3)) {
        let refuted = w_refute(&phi, phi.num_vars()).is_refuted();
        prop_assert_eq!(refuted, !brute_sat(&phi).unwrap().is_sat());
    }

    #[test]
    fn restricted_refutations_check(phi in cnf_strategy(6, 14, 3), (_, rho) in masked_pair(6)) {
        let n = phi.num_vars();
        let rho = PartialAssignment::new(rho.values()[..n].to_vec());
        if let SearchOutcome::Refuted(p) = w_refute(&phi, n) {
            match phi.restrict(&rho).unwrap() {
                RestrictedCnf::Bottom => {}
                RestrictedCnf::Cnf(r) => {
                    let restricted = restrict_proof(&p, &rho, &phi).unwrap();
                    prop_assert!(check_proof(&r, &restricted, true).is_ok());
                    let wf = eliminate_weakening(&restricted, &r);
                    prop_assert!(check_proof(&r, &wf.proof, true).is_ok());
                    prop_assert!(wf.proof.steps.iter().all(|s| !matches!(s.justification, Justification::Weakening(_))));
                    for (i, new) in wf.correspondence.iter().enumerate() {
                        if let (Some(j), Some(orig)) = (new, restricted.steps[i].clause.as_clause()) {
                            let d = wf.proof.steps[*j].clause.as_clause().unwrap();
                            prop_assert!(d.is_subclause_of(orig));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn affine_probabilities_match_enumeration(a in affine_strategy(8), event in prop::collection::vec((0..8usize, any::<bool>()), 0..4)) {
        let n = a.num_vars();
        let event: Vec<Literal> = event.iter().map(|&(v, b)| Literal::new(Var((v % n) as u32), b)).collect();
        let solutions: Vec<Vec<bool>> = all_assignments(n).filter(|x| a.satisfies(x)).collect();
        let hits = solutions.iter().filter(|x| event.iter().all(|l| l.is_true_under(x[l.var().index()]))).count();
        let k = solutions.len().trailing_zeros();
        prop_assert_eq!(solutions.len(), 1 << k);
        prop_assert_eq!(a.exact_probability(&event).unwrap(), Dyadic::new(hits as u128, k));
    }

    #[test]
    fn affine_conditionals_are_zero_half_or_one(a in affine_strategy(8), cond in prop::collection::vec((0..8usize, any::<bool>()), 0..=3), target in 0..8usize) {
        let n = a.num_vars();
        let cond: Vec<Literal> = cond.iter().map(|&(v, b)| Literal::new(Var((v % n) as u32), b)).collect();
        let lit = Var((target % n) as u32).positive();
        if let Ok(q) = a.conditional_probability(lit, &cond) {
            prop_assert!([Dyadic::ZERO, Dyadic::new(1, 1), Dyadic::ONE].contains(&q), "{}", q);
        }
    }

    #[test]
    fn unconstrained_clauses_have_uniform_marginals(a in affine_strategy(10), c in clause_strategy(10, 4)) {
        let n = a.num_vars();
        let c = clause_from(n, &c.literals().iter().map(|l| (l.var().index(), l.is_positive())).collect::<Vec<_>>());
        if !a.has_constraint_on(&c) {
            let vars: Vec<Var> = c.vars().collect();
            for k in 0..1u32 << vars.len() {
                let event: Vec<Literal> = vars.iter().enumerate().map(|(i, &v)| Literal::new(v, k >> i & 1 == 1)).collect();
                prop_assert_eq!(a.exact_probability(&event).unwrap(), Dyadic::inverse_pow2(vars.len() as u32));
            }
        }
    }

    #[test]
    fn narrowing_is_entailed(phi in cnf_strategy(8, 6, 5), psi in prop::collection::vec(clause_strategy(8, 3), 0..8)) {
        let n = phi.num_vars();
        let psi: Vec<Clause> = psi
            .iter()
            .map(|c| clause_from(n, &c.literals().iter().map(|l| (l.var().index(), l.is_positive())).collect::<Vec<_>>()))
            .collect();
        let table = LearnedTable {
            clauses: psi.iter().map(|c| LearnedClause { clause: c.clone(), falsified: 0 }).collect(),
            width: 3,
            threshold_count: 0,
            m0: 0,
        };
        let narrowed = narrow_cnf(&phi, &table);
        prop_assert_eq!(narrowed.len(), phi.len());
        for (orig, new) in phi.clauses().iter().zip(narrowed.clauses()) {
            prop_assert!(new.is_subclause_of(orig));
            prop_assert_eq!(new, &narrow_clause(orig, &psi));
        }
        for x in all_assignments(n) {
            if phi.evaluate(&x).unwrap() && psi.iter().all(|c| c.evaluate(&x)) {
                prop_assert!(narrowed.evaluate(&x).unwrap());
            }
        }
    }

    #[test]
    fn learned_table_respects_threshold(
        rows in prop::collection::vec(prop::collection::vec(prop::option::of(any::<bool>()), 5), 1..40),
        w in 1..=3usize,
        threshold in 0..5u64,
    ) {
        let samples: Vec<PartialAssignment> = rows.into_iter().map(PartialAssignment::new).collect();
        let t = learn_clause_table(&samples, 5, w, threshold, Execution::Sequential).unwrap();
        prop_assert_eq!(&t, &learn_clause_table(&samples, 5, w, threshold, Execution::Parallel).unwrap());
        let kept: Vec<&Clause> = t.iter().collect();
        for c in enumerate_clauses(5, w).unwrap() {
            let count = samples.iter().filter(|s| c.witness_status(s).unwrap() == Witness::False).count() as u64;
            prop_assert_eq!(kept.contains(&&c), count <= threshold);
        }
        prop_assert!(t.clauses.windows(2).all(|p| p[0].clause < p[1].clause));
    }

    #[test]
    fn text_formats_round_trip(phi in cnf_strategy(10, 12, 5), rows in prop::collection::vec(prop::collection::vec(prop::option::of(any::<bool>()), 7), 1..20), mu in 0.0..=1.0f64, seed in any::<u64>()) {
        prop_assert_eq!(io::parse_dimacs(&io::write_dimacs(&phi)).unwrap(), phi.clone());
        let set = pacres::masking::MaskedSampleSet {
            n: 7,
            mu,
            seed,
            provenance: "uniform n=7".into(),
            samples: rows.into_iter().map(PartialAssignment::new).collect(),
        };
        prop_assert_eq!(io::parse_samples(&io::write_samples(&set)).unwrap(), set);
        if let SearchOutcome::Refuted(p) = w_refute(&phi, 3) {
            prop_assert_eq!(io::parse_proof(&io::write_proof(&p), phi.num_vars()).unwrap(), p);
        }
    }
}

#[test]
fn enumeration_counts_match_closed_form() {
    for n in 0..=7 {
        for w in 0..=n {
            let listed: Vec<Clause> = enumerate_clauses(n, w).unwrap().collect();
            assert_eq!(listed.len() as u128, pacres::logic::clause_count(n, w));
            assert!(listed.windows(2).all(|p| p[0] < p[1]));
        }
    }
}
