use std::collections::{BTreeMap, BTreeSet};

use hfree::graph::{Graph, Pair};
use hfree::io::{parse_hfi, parse_minones, render_hfi, render_minones, FormatError, HfiFile};
use hfree::minhorn::{Constraint, ConstraintKind, MinOnesInstance};
use hfree::reduce::Poly;
use hfree::solver::Mode;
use hfree::Pattern;
use proptest::prelude::*;

const SAMPLE: &str = "hfi 1\nmode deletion\npattern C4\nvertices 4\nedge 0 1 free\nedge 0 3\nedge 1 2\nedge 2 3\nbudget 1\nlabel top 0 1\n";

#[test]
fn parse_sample() {
    let f = parse_hfi(SAMPLE).unwrap();
    assert_eq!(f.mode, Mode::Deletion);
    assert_eq!(f.pattern.as_ref().map(Pattern::name), Some("C4"));
    assert_eq!(f.graph, Graph::cycle(4));
    assert_eq!(f.free, BTreeSet::from([Pair::new(0, 1)]));
    assert_eq!(f.budget, Some(1));
    assert_eq!(f.labels["top"], Pair::new(0, 1));
    assert_eq!(render_hfi(&f), SAMPLE);
}

#[test]
fn comments_are_ignored() {
    let text = format!("c generated 2026-01-01T00:00:00\n{SAMPLE}c trailing\n");
    assert_eq!(parse_hfi(&text).unwrap(), parse_hfi(SAMPLE).unwrap());
}

#[test]
fn parse_errors() {
    let head = "hfi 1\nmode completion\nvertices 3\n";
    assert_eq!(
        parse_hfi(&format!("{head}edge 0 1 free\n")),
        Err(FormatError::WrongMode { line: 4, keyword: "edge free", mode: Mode::Completion })
    );
    assert_eq!(parse_hfi(&format!("{head}edge 0 3\n")), Err(FormatError::VertexOutOfRange { line: 4, vertex: 3 }));
    assert_eq!(parse_hfi(&format!("{head}edge 1 1\n")), Err(FormatError::SelfLoop { line: 4, vertex: 1 }));
    assert_eq!(
        parse_hfi(&format!("{head}edge 0 1\nnonedge 1 0 free\n")),
        Err(FormatError::Duplicate { line: 5, pair: Pair::new(0, 1) })
    );
    assert_eq!(
        parse_hfi(&format!("{head}label x 0 2\n")),
        Err(FormatError::BadLabel { line: 4, name: "x".into(), pair: Pair::new(0, 2) })
    );
    assert!(matches!(parse_hfi("hfi 2\n"), Err(FormatError::Expected { line: 1, .. })));
    assert!(matches!(parse_hfi("hfi 1\nmode deletion\npattern Z\nvertices 1\n"), Err(FormatError::Pattern { .. })));
    assert_eq!(parse_hfi(&format!("{head}budget\n")), Err(FormatError::Syntax { line: 4, text: "budget".into() }));
    assert_eq!(parse_hfi("hfi 1\nmode deletion\nvertices 2\n").unwrap().budgeted(), Err(FormatError::MissingPattern));
}

#[test]
fn minones_format() {
    let text = "minones 1\nnvars 9\nf1 0 1 1\nf2 2\nfn 5 0 1 2 3 4 5 6 7 8 0\ngn 5 0 1 2 3 4 5 6 7 8\n";
    let inst = parse_minones(text).unwrap();
    assert_eq!(inst.constraints.len(), 4);
    assert_eq!(inst.constraints[2].kind, ConstraintKind::Fn(5));
    assert_eq!(render_minones(&inst), text);
    assert!(matches!(parse_minones("minones 1\nnvars 2\nf1 0 1 2\n"), Err(FormatError::Constraint { line: 3, .. })));
    assert!(matches!(parse_minones("minones 1\nnvars 2\nf1 0 1\n"), Err(FormatError::Constraint { line: 3, .. })));
    assert!(matches!(parse_minones("minones 1\nnvars 9\ngn 4 0 1 2 3 4\n"), Err(FormatError::Constraint { .. })));
}

#[test]
fn poly_parsing() {
    let p: Poly = "2,3,1".parse().unwrap();
    assert_eq!(p.eval(2).unwrap(), 17);
    assert_eq!(p.to_string(), "2,3,1");
    assert_eq!(Poly::successor().eval(5).unwrap(), 6);
    assert!("0,1,1".parse::<Poly>().is_err());
    assert!("1,0,1".parse::<Poly>().is_err());
    assert!("1,1".parse::<Poly>().is_err());
    assert!("1,64,0".parse::<Poly>().unwrap().eval(2).is_err());
}

fn hfi_strategy() -> impl Strategy<Value = HfiFile> {
    (2usize..8, any::<bool>(), any::<u64>(), any::<u64>(), prop::option::of(0usize..20), any::<bool>()).prop_map(
        |(n, completion, edges, free, budget, with_pattern)| {
            let mode = if completion { Mode::Completion } else { Mode::Deletion };
            let mut graph = Graph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if edges >> i & 1 == 1 {
                        graph.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            let candidates: Vec<Pair> = match mode {
                Mode::Deletion => graph.edges().collect(),
                Mode::Completion => graph.non_edges().collect(),
            };
            let free: BTreeSet<Pair> =
                candidates.iter().enumerate().filter(|(i, _)| free >> i & 1 == 1).map(|(_, &p)| p).collect();
            let labels: BTreeMap<String, Pair> =
                free.iter().take(2).enumerate().map(|(i, &p)| (format!("l{i}"), p)).collect();
            let pattern = with_pattern.then(|| Pattern::named("house").unwrap());
            HfiFile { mode, pattern, graph, free, budget, labels }
        },
    )
}

fn minones_strategy() -> impl Strategy<Value = MinOnesInstance> {
    (1usize..5).prop_flat_map(|n| {
        let f1 = (0..n, 0..n, 0..n).prop_map(|(a, b, c)| Constraint::f1(a, b, c));
        let f2 = (0..n).prop_map(Constraint::f2);
        let c = prop_oneof![f1, f2];
        proptest::collection::vec(c, 0..6).prop_map(move |cs| MinOnesInstance::new(n, cs).unwrap())
    })
}

proptest! {
    #[test]
    fn hfi_round_trip(file in hfi_strategy()) {
        let text = render_hfi(&file);
        let back = parse_hfi(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(render_hfi(&back), text);
    }

    #[test]
    fn minones_round_trip(inst in minones_strategy()) {
        prop_assert_eq!(parse_minones(&render_minones(&inst)).unwrap(), inst);
    }

    #[test]
    fn poly_round_trip(a in 1usize..10, d in 1u32..4, c in 0usize..10) {
        let p = Poly::new(a, d, c).unwrap();
        prop_assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        for l in 1..6 {
            prop_assert!(p.eval(l).unwrap() >= l);
        }
    }
}
