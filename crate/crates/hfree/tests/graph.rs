use hfree::graph::{Graph, GraphError, Pair};
use hfree::iso::{enumerate_induced_copies, find_induced_copy, is_h_free};
use hfree::pattern::{Pattern, PatternError, Requirement};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

fn connected_without(g: &Graph, removed: &[usize]) -> bool {
    let n = g.vertex_count();
    let alive: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let Some(&start) = alive.first() else { return true };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] && !removed.contains(&v) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

fn three_connected_naive(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 || !connected_without(g, &[]) {
        return false;
    }
    (0..n).all(|a| connected_without(g, &[a]) && (a + 1..n).all(|b| connected_without(g, &[a, b])))
}

/// Every injective map from the pattern into the host preserving adjacency
/// and non-adjacency, as sorted vertex sets.
fn copies_naive(host: &Graph, pattern: &Graph) -> Vec<Vec<usize>> {
    fn go(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = map.len();
        if i == pattern.vertex_count() {
            let mut s = map.clone();
            s.sort();
            out.push(s);
            return;
        }
        for v in 0..host.vertex_count() {
            if map.contains(&v) {
                continue;
            }
            if (0..i).all(|j| pattern.has_edge(i, j) == host.has_edge(v, map[j])) {
                map.push(v);
                go(host, pattern, map, out);
                map.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(host, pattern, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

fn house() -> Graph {
    Graph::path(5).complement()
}

#[test]
fn complement_of_p5_is_house() {
    let h = house();
    assert_eq!(h.vertex_count(), 5);
    assert_eq!(h.edge_count(), 6);
    let mut degrees = h.degree_sequence();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(degrees, vec![3, 3, 2, 2, 2]);
    let c5 = Graph::cycle(5).complement();
    assert_eq!(copies_naive(&c5, &Graph::cycle(5)).len(), 1);
}

#[test]
fn three_connectivity_examples() {
    assert!(Pattern::named("K5-e").unwrap().graph().is_3_connected());
    assert!(!Graph::cycle(4).is_3_connected());
    assert!(Pattern::named("wheel4").unwrap().graph().is_3_connected());
    assert!(three_connected_naive(Pattern::named("wheel4").unwrap().graph()));
}

#[test]
fn induced_copy_examples() {
    let k5e = Pattern::named("K5-e").unwrap();
    assert_eq!(find_induced_copy(&Graph::complete(5), k5e.graph()), None);
    let copy = find_induced_copy(&house(), &Graph::cycle(4)).unwrap();
    let mut set = copy.clone();
    set.sort();
    assert_eq!(copies_naive(&house(), &Graph::cycle(4)), vec![set]);
    let mut host = Graph::complete(5);
    host.add_vertex();
    let mut clique = find_induced_copy(&host, &Graph::complete(5)).unwrap();
    clique.sort();
    assert_eq!(clique, vec![0, 1, 2, 3, 4]);
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate_induced_copies(&Graph::complete(6), &Graph::complete(5)).len(), 6);
    assert_eq!(enumerate_induced_copies(&Graph::cycle(4), &Graph::cycle(4)).len(), 1);
    let k5e = Pattern::named("K5-e").unwrap();
    assert!(enumerate_induced_copies(&Graph::complete(6), k5e.graph()).is_empty());
}

#[test]
fn freeness_examples() {
    let k5e = Pattern::named("K5-e").unwrap();
    assert!(is_h_free(&Graph::complete(5), k5e.graph()));
    assert!(!is_h_free(&house(), &Graph::cycle(4)));
    assert!(is_h_free(&Graph::new(10), &Graph::path(2)));
}

#[test]
fn graph_rejects_bad_edges() {
    assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
    assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
    let g = Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
    assert_eq!(g.edge_count(), 1);
    assert_eq!(Pair::new(2, 1), Pair::new(1, 2));
}

#[test]
fn pattern_examples() {
    let house = Pattern::named("house").unwrap();
    assert_eq!((house.order(), house.non_edges().len(), house.is_three_connected()), (5, 4, false));
    let k5e = Pattern::named("K5-e").unwrap();
    assert_eq!((k5e.order(), k5e.non_edges(), k5e.is_three_connected()), (5, &[Pair::new(0, 1)][..], true));
    let k3 = Pattern::named("K3").unwrap();
    assert_eq!((k3.order(), k3.non_edges().len(), k3.is_three_connected()), (3, 0, true));
    let c4 = Pattern::named("C4").unwrap();
    let edges: Vec<Pair> = [(0, 1), (1, 2), (2, 3), (0, 3)].map(|(u, v)| Pair::new(u, v)).to_vec();
    let mut got = c4.edges().to_vec();
    got.sort();
    let mut want = edges;
    want.sort();
    assert_eq!(got, want);
    assert_eq!(house.complement().name(), "P5");
    assert!(matches!(Pattern::named("Q9"), Err(PatternError::UnknownName(_))));
}

#[test]
fn pattern_requirements() {
    let need = [Requirement::ThreeConnected, Requirement::MinNonEdges(2)];
    let err = Pattern::named("K5-e").unwrap().require(&need).unwrap_err();
    assert!(err.to_string().contains("needs 2, has 1"), "{err}");
    assert!(Pattern::named("wheel4").unwrap().require(&need).is_ok());
    assert!(Pattern::named("octahedron").unwrap().require(&need).is_ok());
    assert!(Pattern::named("C4").unwrap().require(&[Requirement::ThreeConnected]).is_err());
}

#[test]
fn named_patterns_are_canonical() {
    for name in ["house", "C4", "C5", "P5", "K5-e", "wheel4", "octahedron", "K3", "co-C4"] {
        let p = Pattern::named(name).unwrap();
        assert_eq!(Pattern::new(name, p.graph().clone()), p);
        assert_eq!(Pattern::named(name).unwrap(), p);
        assert_eq!(p.is_three_connected(), three_connected_naive(p.graph()));
        let mut non_edges: Vec<Pair> = p.graph().non_edges().collect();
        non_edges.sort();
        assert_eq!(p.non_edges(), &non_edges[..]);
    }
}

proptest! {
    #[test]
    fn complement_is_involution(g in graph_strategy(9)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let n = g.vertex_count();
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), n * (n - 1) / 2);
    }

    #[test]
    fn three_connectivity_matches_definition(g in graph_strategy(9)) {
        prop_assert_eq!(g.is_3_connected(), three_connected_naive(&g));
    }

    #[test]
    fn induced_copies_match_naive(host in graph_strategy(8), pattern in graph_strategy(5)) {
        let want = copies_naive(&host, &pattern);
        let mut got: Vec<Vec<usize>> = enumerate_induced_copies(&host, &pattern)
            .into_iter()
            .map(|mut s| { s.sort(); s })
            .collect();
        got.sort();
        got.dedup();
        prop_assert_eq!(&got, &want);
        let found = find_induced_copy(&host, &pattern);
        prop_assert_eq!(found.is_none(), want.is_empty());
        if let Some(map) = found {
            for i in 0..pattern.vertex_count() {
                for j in i + 1..pattern.vertex_count() {
                    prop_assert_eq!(pattern.has_edge(i, j), host.has_edge(map[i], map[j]));
                }
            }
        }
    }

    #[test]
    fn edges_respect_invariants(g in graph_strategy(9)) {
        let edges: Vec<Pair> = g.edges().collect();
        prop_assert_eq!(edges.len(), g.edge_count());
        for p in edges {
            prop_assert!(p.lo() < p.hi() && p.hi() < g.vertex_count());
        }
    }
}
