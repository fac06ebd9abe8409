use hfree::cnf::{
    duplicate_for_min_occurrences, normalize_3cnf, parse_dimacs, render_dimacs, sat_brute_force, Assignment, CnfError,
    CnfFormula, Lit,
};
use proptest::prelude::*;

fn lit(v: i64) -> Lit {
    if v > 0 {
        Lit::pos(v as usize - 1)
    } else {
        Lit::neg((-v) as usize - 1)
    }
}

fn formula(n: usize, clauses: &[&[i64]]) -> CnfFormula {
    CnfFormula::new(n, clauses.iter().map(|c| c.iter().map(|&v| lit(v)).collect()).collect())
}

fn all_sign_patterns() -> CnfFormula {
    let clauses = (0..8u8)
        .map(|m| (0..3).map(|v| if m >> v & 1 == 1 { Lit::pos(v) } else { Lit::neg(v) }).collect())
        .collect();
    CnfFormula::new(3, clauses)
}

fn formula_strategy(max_vars: usize, max_clauses: usize, width: usize) -> impl Strategy<Value = CnfFormula> {
    (1..=max_vars).prop_flat_map(move |n| {
        let lit = (0..n, any::<bool>()).prop_map(|(var, positive)| Lit { var, positive });
        let clause = proptest::collection::vec(lit, 1..=width);
        proptest::collection::vec(clause, 0..=max_clauses).prop_map(move |c| CnfFormula::new(n, c))
    })
}

#[test]
fn dimacs_examples() {
    let f = parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap();
    assert_eq!(f, formula(2, &[&[1, -2]]));
    let g = parse_dimacs("c two units\np cnf 1 2\n1 0\n-1 0\n").unwrap();
    assert_eq!(sat_brute_force(&g).unwrap(), None);
    assert_eq!(
        parse_dimacs("p cnf 3 3\n1 2 3 0\n-1 0\n"),
        Err(CnfError::ClauseCountMismatch { declared: 3, found: 2 })
    );
    assert!(matches!(parse_dimacs("1 2 0\n"), Err(CnfError::MissingHeader)));
    assert!(matches!(parse_dimacs("p cnf 2 1\n1 3 0\n"), Err(CnfError::VariableOutOfRange { var: 3, .. })));
}

#[test]
fn normalisation_examples() {
    let f = normalize_3cnf(&formula(2, &[&[1, 2]])).unwrap();
    assert_eq!(f, formula(3, &[&[1, 2, 3], &[1, 2, -3]]));
    assert_eq!(normalize_3cnf(&formula(2, &[&[1, -1, 2]])).unwrap().clauses, Vec::<Vec<Lit>>::new());
    let exact = formula(3, &[&[1, -2, 3]]);
    assert_eq!(normalize_3cnf(&exact).unwrap(), exact);
    assert_eq!(normalize_3cnf(&formula(3, &[&[2, 2, 2]])).unwrap().clauses.len(), 4);
}

#[test]
fn duplication_examples() {
    let one = formula(3, &[&[1, 2, 3]]);
    assert_eq!(duplicate_for_min_occurrences(&one, 2).clauses, vec![one.clauses[0].clone(); 2]);
    let twice = formula(3, &[&[1, 2, 3], &[-1, -2, -3]]);
    assert_eq!(duplicate_for_min_occurrences(&twice, 2), twice);
    let empty = CnfFormula::new(0, vec![]);
    assert_eq!(duplicate_for_min_occurrences(&empty, 2), empty);
}

#[test]
fn brute_force_examples() {
    let a = sat_brute_force(&formula(3, &[&[1, 2, 3]])).unwrap().unwrap();
    assert!(a.0.iter().any(|&b| b));
    assert_eq!(sat_brute_force(&all_sign_patterns()).unwrap(), None);
    assert_eq!(sat_brute_force(&CnfFormula::new(2, vec![])).unwrap(), Some(Assignment(vec![false, false])));
    assert!(matches!(
        sat_brute_force(&CnfFormula::new(30, vec![])),
        Err(CnfError::GuardExceeded { vars: 30, guard: 24 })
    ));
}

proptest! {
    #[test]
    fn normalisation_preserves_satisfiability(f in formula_strategy(4, 6, 3)) {
        let g = normalize_3cnf(&f).unwrap();
        prop_assert_eq!(sat_brute_force(&f).unwrap().is_some(), sat_brute_force(&g).unwrap().is_some());
        for c in &g.clauses {
            prop_assert_eq!(c.len(), 3);
            let mut vars: Vec<usize> = c.iter().map(|l| l.var).collect();
            vars.sort();
            vars.dedup();
            prop_assert_eq!(vars.len(), 3);
        }
        prop_assert_eq!(normalize_3cnf(&g).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip(f in formula_strategy(6, 8, 4)) {
        prop_assert_eq!(parse_dimacs(&render_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn duplication_meets_bound(f in formula_strategy(5, 4, 3), k in 1usize..4) {
        let g = duplicate_for_min_occurrences(&f, k);
        prop_assert!(g.occurrences().into_iter().all(|o| o == 0 || o >= k));
        prop_assert_eq!(sat_brute_force(&f).unwrap().is_some(), sat_brute_force(&g).unwrap().is_some());
    }

    #[test]
    fn brute_force_witness_satisfies(f in formula_strategy(5, 8, 3)) {
        if let Some(a) = sat_brute_force(&f).unwrap() {
            prop_assert!(f.is_satisfied_by(&a));
        } else {
            for m in 0u32..1 << f.variable_count {
                let a = Assignment((0..f.variable_count).map(|v| m >> v & 1 == 1).collect());
                prop_assert!(!f.is_satisfied_by(&a));
            }
        }
    }
}
