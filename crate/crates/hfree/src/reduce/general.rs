//! Reductions that work for every 3-connected pattern H.

use crate::cnf::CnfFormula;
use crate::graph::{Graph, Pair};
use crate::pattern::{Pattern, Requirement};
use crate::solver::{BudgetedInstance, Mode, SandwichInstance};

use super::{check_exact_3cnf, glue, Assembler, Poly, ReduceError, SatReduction, SatTrace};

fn without(g: &Graph, pairs: &[Pair]) -> Graph {
    let mut g = g.clone();
    for p in pairs {
        g.remove_edge(p.lo(), p.hi());
    }
    g
}

fn with(g: &Graph, pairs: &[Pair]) -> Graph {
    let mut g = g.clone();
    for p in pairs {
        g.add_edge(p.lo(), p.hi());
    }
    g
}

/// Smallest edge of `h` sharing no endpoint with `p`.
fn disjoint_edge(h: &Pattern, p: Pair) -> Result<Pair, ReduceError> {
    h.edges()
        .iter()
        .copied()
        .find(|e| e.is_disjoint(p))
        .ok_or_else(|| ReduceError::NoDisjointEdge(h.name().to_string()))
}

/// A connector: the local graph, its entry pair and its exit pair.
struct Connector {
    graph: Graph,
    entry: Pair,
    exit: Pair,
}

/// Lays a chain of `len` connectors from host pair `start` to host pair
/// `end`, marking every intermediate link free. Returns the chain's pairs.
fn lay_chain(
    asm: &mut Assembler,
    conn: &Connector,
    len: usize,
    start: Pair,
    end: Pair,
    tag: &str,
) -> Vec<Pair> {
    let mut pairs = vec![start];
    let mut prev = start;
    for j in 0..len {
        let mut gl = glue(conn.entry, prev).to_vec();
        if j + 1 == len {
            gl.extend(glue(conn.exit, end));
        }
        let map = asm.place(format!("{tag}.connector{j}"), &conn.graph, &gl);
        let out = conn.exit.map(|v| map[v]);
        if j + 1 < len {
            asm.free(out);
            asm.label(format!("{tag}.link{j}"), out);
        }
        pairs.push(out);
        prev = out;
    }
    pairs
}

/// Sandwich H-free deletion instance equivalent to the exact 3-CNF `f`.
///
/// Needs H 3-connected with at least two non-edges. Variable gadgets come
/// first, then clause gadgets, then one connector chain of length
/// `|V(H)| + 2` per clause literal.
pub fn reduce_3sat_to_sandwich_del(f: &CnfFormula, h: &Pattern) -> Result<SatReduction, ReduceError> {
    h.require(&[Requirement::ThreeConnected, Requirement::MinNonEdges(2)])?;
    check_exact_3cnf(f)?;
    let ne = h.non_edges();
    let entry = ne[0];
    let conn = Connector { graph: with(h.graph(), &[entry]), entry, exit: disjoint_edge(h, entry)? };
    let var_local = with(h.graph(), &ne[..2]);

    let mut asm = Assembler::default();
    let mut trace = SatTrace::default();
    for x in 0..f.variable_count {
        let map = asm.place(format!("var{x}"), &var_local, &[]);
        let (pos, neg) = (ne[0].map(|v| map[v]), ne[1].map(|v| map[v]));
        for (p, sign) in [(pos, '+'), (neg, '-')] {
            asm.free(p);
            asm.label(format!("var{x}{sign}"), p);
        }
        trace.variables.push(Some((pos, neg)));
    }
    for (c, _) in f.clauses.iter().enumerate() {
        let map = asm.place(format!("clause{c}"), h.graph(), &[]);
        let lits: [Pair; 3] = std::array::from_fn(|i| h.edges()[i].map(|v| map[v]));
        for (i, &p) in lits.iter().enumerate() {
            asm.free(p);
            asm.label(format!("clause{c}.{i}"), p);
        }
        trace.clauses.push(lits);
    }
    let len = h.order() + 2;
    for (c, clause) in f.clauses.iter().enumerate() {
        let chains = std::array::from_fn(|i| {
            let lit = clause[i];
            let (pos, neg) = trace.variables[lit.var].expect("every variable has a gadget");
            let end = if lit.positive { pos } else { neg };
            lay_chain(&mut asm, &conn, len, trace.clauses[c][i], end, &format!("chain{c}.{i}"))
        });
        trace.chains.push(chains);
    }
    let (instance, gadgets) = asm.finish(Mode::Deletion);
    trace.gadgets = gadgets;
    Ok(SatReduction { instance, pattern: h.clone(), trace })
}

/// Sandwich H-free completion instance equivalent to the exact 3-CNF `f`.
///
/// Needs H 3-connected with at least two non-edges. Each clause gadget is a
/// copy of H joined to a copy of H minus an edge through a shared fillable
/// pair.
pub fn reduce_3sat_to_sandwich_comp(f: &CnfFormula, h: &Pattern) -> Result<SatReduction, ReduceError> {
    h.require(&[Requirement::ThreeConnected, Requirement::MinNonEdges(2)])?;
    check_exact_3cnf(f)?;
    let ne = h.non_edges();
    let ed = h.edges();
    let exit = ne[0];
    let entry = disjoint_edge(h, exit)?;
    let conn = Connector { graph: without(h.graph(), &[entry]), entry, exit };
    let var_local = without(h.graph(), &ed[..2]);
    let second_local = without(h.graph(), &ed[..1]);

    let mut asm = Assembler::default();
    let mut trace = SatTrace::default();
    for x in 0..f.variable_count {
        let map = asm.place(format!("var{x}"), &var_local, &[]);
        let (pos, neg) = (ed[0].map(|v| map[v]), ed[1].map(|v| map[v]));
        for (p, sign) in [(pos, '+'), (neg, '-')] {
            asm.free(p);
            asm.label(format!("var{x}{sign}"), p);
        }
        trace.variables.push(Some((pos, neg)));
    }
    for (c, _) in f.clauses.iter().enumerate() {
        let first = asm.place(format!("clause{c}.first"), h.graph(), &[]);
        let l1 = ne[0].map(|v| first[v]);
        let either = ne[1].map(|v| first[v]);
        let second = asm.place(format!("clause{c}.second"), &second_local, &glue(ed[0], either));
        let (l2, l3) = (ne[0].map(|v| second[v]), ne[1].map(|v| second[v]));
        for (name, p) in [("0", l1), ("either", either), ("1", l2), ("2", l3)] {
            asm.free(p);
            asm.label(format!("clause{c}.{name}"), p);
        }
        trace.clauses.push([l1, l2, l3]);
    }
    let len = h.order() + 2;
    for (c, clause) in f.clauses.iter().enumerate() {
        let chains = std::array::from_fn(|i| {
            let lit = clause[i];
            let (pos, neg) = trace.variables[lit.var].expect("every variable has a gadget");
            let end = if lit.positive { pos } else { neg };
            lay_chain(&mut asm, &conn, len, trace.clauses[c][i], end, &format!("chain{c}.{i}"))
        });
        trace.chains.push(chains);
    }
    let (instance, gadgets) = asm.finish(Mode::Completion);
    trace.gadgets = gadgets;
    Ok(SatReduction { instance, pattern: h.clone(), trace })
}

fn expect_mode(inst: &SandwichInstance, expected: Mode) -> Result<(), ReduceError> {
    if inst.mode != expected {
        return Err(ReduceError::WrongMode { expected, found: inst.mode });
    }
    for &p in &inst.free {
        if p.hi() >= inst.graph.vertex_count() || !expected.can_touch(&inst.graph, p) {
            return Err(ReduceError::InvalidFree(p));
        }
    }
    Ok(())
}

/// Pairs the sandwich instance forbids modifying: undeletable edges in
/// deletion mode, non-fillable non-edges in completion mode.
pub fn protected_pairs(inst: &SandwichInstance) -> Vec<Pair> {
    let all: Box<dyn Iterator<Item = Pair>> = match inst.mode {
        Mode::Deletion => Box::new(inst.graph.edges()),
        Mode::Completion => Box::new(inst.graph.non_edges()),
    };
    all.filter(|p| !inst.free.contains(p)).collect()
}

/// Budgeted H-free deletion instance with a gap: `p(k)` copies of H hang off
/// every undeletable edge, glued at H's smallest non-edge, where `k` is the
/// number of deletable edges.
pub fn lift_sandwich_del(inst: &SandwichInstance, h: &Pattern, p: Poly) -> Result<BudgetedInstance, ReduceError> {
    h.require(&[Requirement::ThreeConnected, Requirement::MinNonEdges(1)])?;
    expect_mode(inst, Mode::Deletion)?;
    let k = inst.free.len();
    let copies = p.eval(k)?;
    let graph = attach_copies(&inst.graph, &protected_pairs(inst), h.graph(), h.non_edges()[0], copies);
    Ok(BudgetedInstance { graph, mode: Mode::Deletion, pattern: h.clone(), budget: k })
}

/// Completion counterpart of [`lift_sandwich_del`]: `p(k)` copies of H minus
/// its smallest edge hang off every non-fillable non-edge.
pub fn lift_sandwich_comp(inst: &SandwichInstance, h: &Pattern, p: Poly) -> Result<BudgetedInstance, ReduceError> {
    h.require(&[Requirement::ThreeConnected, Requirement::MinEdges(1)])?;
    expect_mode(inst, Mode::Completion)?;
    let k = inst.free.len();
    let copies = p.eval(k)?;
    let e = h.edges()[0];
    let local = without(h.graph(), &[e]);
    let graph = attach_copies(&inst.graph, &protected_pairs(inst), &local, e, copies);
    Ok(BudgetedInstance { graph, mode: Mode::Completion, pattern: h.clone(), budget: k })
}

/// Glues `copies` copies of `local` onto every pair in `anchors`, identifying
/// `at` with the anchor pair.
pub(crate) fn attach_copies(g: &Graph, anchors: &[Pair], local: &Graph, at: Pair, copies: usize) -> Graph {
    let mut asm = Assembler::from_graph(g.clone());
    for &a in anchors {
        for _ in 0..copies {
            asm.place("pendant", local, &glue(at, a));
        }
    }
    asm.graph
}

/// The equivalent instance on the complement: complemented graph and
/// pattern, flipped mode, same budget.
pub fn complement_instance(b: &BudgetedInstance) -> BudgetedInstance {
    BudgetedInstance {
        graph: b.graph.complement(),
        mode: b.mode.flipped(),
        pattern: b.pattern.complement(),
        budget: b.budget,
    }
}
