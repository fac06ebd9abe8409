use std::collections::BTreeSet;

use hfree::cnf::Assignment;
use hfree::graph::Graph;
use hfree::iso::is_h_free;
use hfree::minhorn::{
    eval_constraint, faithful_delta, lift_quarantine, min_uniform_delta, minones_brute_force,
    reduce_knexdel_to_minones, reduce_minones_to_quarantined, selected_edges, Constraint, ConstraintKind,
    MinHornError, MinOnesInstance,
};
use hfree::solver::{apply, solve_min, Mode};
use hfree::Pattern;

fn a(bits: &[u8]) -> Assignment {
    Assignment(bits.iter().map(|&b| b == 1).collect())
}

#[test]
fn constraint_semantics() {
    let f1 = |bits: &[u8]| eval_constraint(ConstraintKind::F1, &[0, 1, 2], &a(bits)).unwrap();
    assert!(!f1(&[1, 0, 0]));
    assert!(f1(&[1, 1, 0]));
    assert!(f1(&[0, 0, 0]));
    assert!(!eval_constraint(ConstraintKind::F2, &[0], &a(&[0])).unwrap());
    let gn = |bits: &[u8]| eval_constraint(ConstraintKind::Gn(5), &(0..9).collect::<Vec<_>>(), &a(bits)).unwrap();
    assert!(!gn(&[0; 9]));
    assert!(gn(&[0, 0, 0, 1, 0, 0, 0, 0, 0]));
    assert_eq!(
        eval_constraint(ConstraintKind::F1, &[0, 1], &a(&[0, 0])),
        Err(MinHornError::Arity { kind: ConstraintKind::F1, expected: 3, found: 2 })
    );
}

#[test]
fn f1_is_weakly_positive_expansion() {
    for m in 0..8u8 {
        let bits = [m & 1, m >> 1 & 1, m >> 2 & 1];
        let [x1, x2, x3] = bits.map(|b| b == 1);
        let cnf = (!x1 || x2 || x3) && (x1 || !x2 || x3) && (x1 || x2 || !x3);
        assert_eq!(Constraint::f1(0, 1, 2).eval(&a(&bits)), cnf);
    }
}

#[test]
fn brute_force_examples() {
    let inst = MinOnesInstance::new(3, vec![Constraint::f1(0, 1, 2), Constraint::f2(0)]).unwrap();
    assert_eq!(minones_brute_force(&inst).unwrap().unwrap().1, 2);
    let empty = MinOnesInstance::new(2, vec![]).unwrap();
    assert_eq!(minones_brute_force(&empty).unwrap().unwrap().1, 0);
    let one = MinOnesInstance::new(1, vec![Constraint::f2(0)]).unwrap();
    assert_eq!(minones_brute_force(&one).unwrap().unwrap().1, 1);
}

#[test]
fn faithful_group_sizes() {
    assert_eq!(faithful_delta(3), 83);
    let inst = MinOnesInstance::new(
        3,
        vec![Constraint::f1(0, 1, 2), Constraint::f1(2, 2, 1), Constraint::f2(1), Constraint::f1(1, 0, 2)],
    )
    .unwrap();
    let q = reduce_minones_to_quarantined(&inst, 5, None).unwrap();
    assert!(q.groups.groups.iter().all(|g| g.len() == 83));
}

#[test]
fn single_f2_forces_whole_group() {
    let inst = MinOnesInstance::new(1, vec![Constraint::f2(0)]).unwrap();
    let q = reduce_minones_to_quarantined(&inst, 5, None).unwrap();
    assert_eq!(q.groups.group_size, 11);
    let (sol, cost) = solve_min(&q.graph, &q.pattern(), Mode::Deletion, &q.quarantine, None).unwrap().unwrap();
    assert_eq!(cost, 11);
    assert_eq!(q.groups.assignment_for(&sol).unwrap(), a(&[1]));
}

#[test]
fn empty_instance_costs_nothing() {
    let inst = MinOnesInstance::new(1, vec![]).unwrap();
    let q = reduce_minones_to_quarantined(&inst, 5, None).unwrap();
    assert!(is_h_free(&q.graph, q.pattern().graph()));
}

#[test]
fn scaling_with_small_delta() {
    let inst = MinOnesInstance::new(3, vec![Constraint::f1(0, 1, 2), Constraint::f2(0)]).unwrap();
    let delta = 8;
    let q = reduce_minones_to_quarantined(&inst, 5, Some(delta)).unwrap();
    let (sol, cost) = solve_min(&q.graph, &q.pattern(), Mode::Deletion, &q.quarantine, None).unwrap().unwrap();
    assert_eq!(cost, 2 * delta);
    assert!(inst.is_satisfied_by(&q.groups.assignment_for(&sol).unwrap()));
}

#[test]
fn delta_too_small_is_reported() {
    let inst = MinOnesInstance::new(1, vec![Constraint::f1(0, 0, 0)]).unwrap();
    assert_eq!(min_uniform_delta(&inst).unwrap(), 11);
    assert!(matches!(
        reduce_minones_to_quarantined(&inst, 5, Some(8)),
        Err(MinHornError::DeltaTooSmall { var: 0, needed: 11, delta: 8 })
    ));
}

#[test]
fn knexdel_examples() {
    let (inst, edges) = reduce_knexdel_to_minones(&Graph::complete(6), 5).unwrap();
    assert_eq!(edges.len(), 15);
    assert_eq!(inst.constraints.iter().filter(|c| matches!(c.kind, ConstraintKind::Fn(5))).count(), 6);
    assert!(inst.constraints.iter().all(|c| matches!(c.kind, ConstraintKind::Fn(5))));
    let knexe = Pattern::named("K5-e").unwrap();
    let (inst, edges) = reduce_knexdel_to_minones(knexe.graph(), 5).unwrap();
    assert_eq!(edges.len(), 9);
    assert_eq!(inst.constraints.len(), 1);
    assert_eq!(inst.constraints[0].kind, ConstraintKind::Gn(5));
    let (inst, _) = reduce_knexdel_to_minones(&Graph::cycle(6), 5).unwrap();
    assert!(inst.constraints.is_empty());
}

#[test]
fn knexdel_minimum_matches_minones() {
    let mut g = Graph::complete(6);
    g.remove_edge(0, 1);
    g.remove_edge(2, 3);
    let (inst, edges) = reduce_knexdel_to_minones(&g, 5).unwrap();
    let (assignment, ones) = minones_brute_force(&inst).unwrap().unwrap();
    let pattern = Pattern::named("K5-e").unwrap();
    let (_, cost) = solve_min(&g, &pattern, Mode::Deletion, &BTreeSet::new(), None).unwrap().unwrap();
    assert_eq!(ones, cost);
    let after = apply(&g, Mode::Deletion, &selected_edges(&edges, &assignment)).unwrap();
    assert!(is_h_free(&after, pattern.graph()));
}

#[test]
fn lift_quarantine_copies() {
    let mut g = Graph::complete(5);
    g.remove_edge(0, 1);
    let quarantine: BTreeSet<_> = g.edges().filter(|p| p.lo() != 2).collect();
    let lifted = lift_quarantine(&g, &quarantine, 5, Some(2)).unwrap();
    assert_eq!(lifted.graph.vertex_count(), 5 + quarantine.len() * 2 * 3);
    let default = lift_quarantine(&g, &quarantine, 5, None).unwrap();
    assert_eq!(default.budget, 81);
}

#[test]
fn deleting_one_group_edge_forces_the_group() {
    let inst = MinOnesInstance::new(3, vec![Constraint::f1(0, 1, 2)]).unwrap();
    let q = reduce_minones_to_quarantined(&inst, 5, Some(8)).unwrap();
    for (x, group) in q.groups.groups.iter().enumerate() {
        for &e in group {
            let mut g = q.graph.clone();
            g.remove_edge(e.lo(), e.hi());
            let (sol, _) = solve_min(&g, &q.pattern(), Mode::Deletion, &q.quarantine, None).unwrap().unwrap();
            let deleted: BTreeSet<_> = sol.iter().chain([e]).collect();
            assert!(group.iter().all(|p| deleted.contains(p)), "variable {x}, edge {e}");
        }
    }
}

#[test]
fn solution_transfer_scales_by_delta() {
    let inst = MinOnesInstance::new(3, vec![Constraint::f1(0, 1, 2), Constraint::f2(0)]).unwrap();
    let q = reduce_minones_to_quarantined(&inst, 5, None).unwrap();
    let delta = faithful_delta(3);
    let deletions = q.groups.deletions_for(&a(&[1, 1, 0])).unwrap();
    assert_eq!(deletions.len(), 2 * delta);
    assert_eq!(q.groups.assignment_for(&deletions).unwrap(), a(&[1, 1, 0]));
    assert_eq!(deletions.len() / delta, 2);
    let mut partial = deletions.clone();
    partial.0.remove(&q.groups.groups[1][0]);
    assert_eq!(q.groups.assignment_for(&partial), Err(MinHornError::PartialGroup(1)));
    let edges = [(0, 1), (0, 2), (1, 2)].map(|(u, v)| hfree::Pair::new(u, v)).to_vec();
    let set = hfree::minhorn::selected_edges(&edges, &a(&[0, 1, 1]));
    assert_eq!(hfree::minhorn::indicator(&edges, &set), a(&[0, 1, 1]));
}

#[test]
fn quarantine_lift_uses_square_of_edge_count() {
    let mut small = Graph::complete(5);
    small.remove_edge(0, 1);
    assert_eq!(small.edge_count(), 9);
    let mut twenty = Graph::complete(7);
    twenty.remove_edge(0, 1);
    assert_eq!(twenty.edge_count(), 20);
    let quarantine: BTreeSet<_> = [hfree::Pair::new(2, 3)].into();
    let lifted = lift_quarantine(&twenty, &quarantine, 5, None).unwrap();
    assert_eq!(lifted.budget, 400);
    assert_eq!(lifted.graph.vertex_count(), 7 + 400 * 3);
    let none = lift_quarantine(&small, &BTreeSet::new(), 5, None).unwrap();
    assert_eq!(none.graph, small);
}
