//! Reductions for the patterns that are not 3-connected: C4, C5 and the
//! house.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cnf::CnfFormula;
use crate::graph::{Graph, Pair};
use crate::pattern::Pattern;
use crate::solver::{enumerate_solutions, BudgetedInstance, Mode, SandwichInstance};

use super::general::protected_pairs;
use super::{check_exact_3cnf, Assembler, Poly, ReduceError, SatReduction, SatTrace};

/// A small gadget graph with its modifiable pairs and the two pairs whose
/// modification encodes true and false.
#[derive(Clone, Debug)]
pub struct VariableGadget {
    pub graph: Graph,
    pub free: Vec<Pair>,
    /// `(u, v)` of the pair modified exactly when the variable is true.
    pub top: (usize, usize),
    /// `(u, v)` of the pair modified exactly when the variable is false.
    pub bottom: (usize, usize),
}

impl VariableGadget {
    pub fn instance(&self, mode: Mode) -> SandwichInstance {
        SandwichInstance {
            graph: self.graph.clone(),
            mode,
            free: self.free.iter().copied().collect(),
            labels: BTreeMap::new(),
        }
    }

    fn top_pair(&self) -> Pair {
        Pair::new(self.top.0, self.top.1)
    }

    fn bottom_pair(&self) -> Pair {
        Pair::new(self.bottom.0, self.bottom.1)
    }
}

/// A clause gadget: local graph, modifiable pairs, and per literal the
/// endpoints `(s_i, t_i)` wired to the variable gadgets.
#[derive(Clone, Debug)]
pub struct ClauseGadget {
    pub graph: Graph,
    pub free: Vec<Pair>,
    pub literals: [(usize, usize); 3],
}

impl ClauseGadget {
    pub fn instance(&self, mode: Mode) -> SandwichInstance {
        SandwichInstance {
            graph: self.graph.clone(),
            mode,
            free: self.free.iter().copied().collect(),
            labels: BTreeMap::new(),
        }
    }

    pub fn literal_pairs(&self) -> [Pair; 3] {
        self.literals.map(|(s, t)| Pair::new(s, t))
    }
}

/// Checks by enumeration that `gadget` has exactly two solutions, one
/// modifying the true pair but not the false pair and one the converse.
pub fn check_variable_gadget(
    name: &'static str,
    gadget: &VariableGadget,
    pattern: &Pattern,
    mode: Mode,
) -> Result<(), ReduceError> {
    let fail = |detail: String| ReduceError::GadgetContract { gadget: name, detail };
    let sols = enumerate_solutions(&gadget.instance(mode), pattern).map_err(|e| fail(e.to_string()))?;
    if sols.len() != 2 {
        return Err(fail(format!("{} solutions instead of 2", sols.len())));
    }
    let (top, bottom) = (gadget.top_pair(), gadget.bottom_pair());
    let signature = |s: &crate::solver::ModificationSet| (s.contains(top), s.contains(bottom));
    let mut seen: Vec<_> = sols.iter().map(signature).collect();
    seen.sort();
    if seen != [(false, true), (true, false)] {
        return Err(fail(format!("solution signatures {seen:?}")));
    }
    Ok(())
}

/// Checks by enumeration the clause contract: in deletion mode no solution
/// modifies all three literal pairs and each pair can be the only one left
/// alone; in completion mode every solution fills a literal pair and each
/// pair can be the only one filled.
pub fn check_clause_gadget(
    name: &'static str,
    gadget: &ClauseGadget,
    pattern: &Pattern,
    mode: Mode,
) -> Result<(), ReduceError> {
    let fail = |detail: String| ReduceError::GadgetContract { gadget: name, detail };
    let sols = enumerate_solutions(&gadget.instance(mode), pattern).map_err(|e| fail(e.to_string()))?;
    let lits = gadget.literal_pairs();
    let hits = |s: &crate::solver::ModificationSet| lits.map(|p| s.contains(p));
    // Deletion solutions keep exactly one literal edge; completion ones fill one.
    let deletion = mode == Mode::Deletion;
    let forbidden = [deletion; 3];
    let wanted = |i: usize| -> [bool; 3] { std::array::from_fn(|j| (j == i) != deletion) };
    if sols.iter().any(|s| hits(s) == forbidden) {
        return Err(fail(format!("a solution has literal pattern {forbidden:?}")));
    }
    for i in 0..3 {
        if !sols.iter().any(|s| hits(s) == wanted(i)) {
            return Err(fail(format!("no solution with literal pattern {:?}", wanted(i))));
        }
    }
    Ok(())
}

fn graph_of(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).expect("gadget edges are in range")
}

fn pairs(list: &[(usize, usize)]) -> Vec<Pair> {
    list.iter().map(|&(u, v)| Pair::new(u, v)).collect()
}

/// C4-deletion variable gadget on eight vertices whose deletable edges form
/// the two paths `0 1 2` and `3 4 5`. Its solutions delete exactly one of
/// them.
pub fn c4_del_variable_gadget() -> VariableGadget {
    let edges = [
        (0, 1), (0, 2), (0, 3), (0, 5), (0, 6), (1, 2), (1, 3), (1, 4), (1, 6), (2, 3),
        (2, 4), (2, 5), (2, 7), (3, 4), (3, 5), (3, 6), (4, 5), (4, 7), (5, 7),
    ];
    VariableGadget {
        graph: graph_of(8, &edges),
        free: pairs(&[(0, 1), (1, 2), (3, 4), (4, 5)]),
        top: (0, 1),
        bottom: (3, 4),
    }
}

/// C4-deletion clause gadget: `K6` on `s1 t1 s2 t2 s3 t3` (vertices `0..6`)
/// whose Hamiltonian cycle `s1 t1 s2 t2 s3 t3` is deletable.
pub fn c4_del_clause_gadget() -> ClauseGadget {
    let graph = Graph::complete(6);
    let free = (0..6).map(|i| Pair::new(i, (i + 1) % 6)).collect();
    ClauseGadget { graph, free, literals: [(0, 1), (2, 3), (4, 5)] }
}

/// C5-deletion variable gadget on eight vertices with deletable edges
/// `01, 23, 15, 05`.
pub fn c5_del_variable_gadget() -> VariableGadget {
    let edges = [
        (0, 1), (2, 3), (1, 5), (0, 5),
        (0, 4), (0, 7), (1, 2), (1, 6), (1, 7), (2, 5), (3, 4), (3, 5), (3, 6), (4, 6),
        (5, 7), (6, 7),
    ];
    VariableGadget {
        graph: graph_of(8, &edges),
        free: pairs(&[(0, 1), (2, 3), (1, 5), (0, 5)]),
        top: (0, 1),
        bottom: (2, 3),
    }
}

/// C5-deletion clause gadget: the wheel with hub `s` (vertex 0) and rim
/// `a b c d` (vertices `1..5`). The chords `s b`, `s c` and `a d` of the
/// five-cycle `s a b c d` are deletable, so `s1 = s2 = s`, `t1 = b`, `t2 = c`,
/// `s3 = a`, `t3 = d`.
pub fn c5_del_clause_gadget() -> ClauseGadget {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3), (1, 4)];
    ClauseGadget {
        graph: graph_of(5, &edges),
        free: pairs(&[(0, 2), (0, 3), (1, 4)]),
        literals: [(0, 2), (0, 3), (1, 4)],
    }
}

/// C4-completion clause gadget on `v1..v4, u1..u4` (vertices `0..4` and
/// `4..8`). Literal `i` is the fillable pair `u_i v_i`.
pub fn c4_comp_clause_gadget() -> ClauseGadget {
    let (v1, v2, v3, v4, u1, u2, u3, u4) = (0, 1, 2, 3, 4, 5, 6, 7);
    let edges = [
        (v1, v4), (v4, v2), (v2, v3), (v3, v1),
        (v1, u2), (u2, u1), (u1, v2),
        (v3, u4), (u4, u3), (u3, v4),
    ];
    ClauseGadget {
        graph: graph_of(8, &edges),
        free: pairs(&[(v1, v2), (v3, v4), (u1, v1), (u2, v2), (u3, v3)]),
        literals: [(u1, v1), (u2, v2), (u3, v3)],
    }
}

/// Vertex ids of one C4-completion ladder inside its local graph.
#[derive(Clone, Copy, Debug)]
pub struct Ladder {
    pub len: usize,
}

impl Ladder {
    pub fn t(&self, i: usize) -> usize {
        i % self.len
    }

    pub fn b(&self, i: usize) -> usize {
        self.len + i % self.len
    }

    pub fn u(&self, i: usize) -> usize {
        2 * self.len + i % self.len
    }

    pub fn d(&self, i: usize) -> usize {
        3 * self.len + i % self.len
    }
}

/// C4-completion variable gadget for a variable with `occurrences`
/// occurrences: a ladder of length `4 * occurrences` whose squares each need
/// one diagonal, with the diagonals forced to lean the same way.
pub fn c4_comp_variable_gadget(occurrences: usize) -> (VariableGadget, Ladder) {
    let l = Ladder { len: 4 * occurrences };
    let n = l.len;
    let mut g = Graph::new(4 * n);
    let mut free = Vec::new();
    for i in 0..n {
        g.add_edge(l.t(i), l.t(i + 1));
        g.add_edge(l.b(i), l.b(i + 1));
        g.add_edge(l.t(i), l.b(i));
        for j in [i + n - 1, i, i + 1] {
            g.add_edge(l.u(i), l.t(j));
            g.add_edge(l.d(i), l.b(j));
        }
        free.push(Pair::new(l.t(i), l.b(i + 1)));
        free.push(Pair::new(l.t(i + 1), l.b(i)));
    }
    free.sort();
    let gadget = VariableGadget { graph: g, free, top: (l.t(0), l.b(1)), bottom: (l.t(1), l.b(0)) };
    (gadget, l)
}

fn lay_variables(asm: &mut Assembler, gadget: &VariableGadget, count: usize, trace: &mut SatTrace) -> Vec<Vec<usize>> {
    let mut maps = Vec::new();
    for x in 0..count {
        let map = asm.place(format!("var{x}"), &gadget.graph, &[]);
        for &p in &gadget.free {
            asm.free(p.map(|v| map[v]));
        }
        let (pos, neg) = (gadget.top_pair().map(|v| map[v]), gadget.bottom_pair().map(|v| map[v]));
        asm.label(format!("var{x}+"), pos);
        asm.label(format!("var{x}-"), neg);
        trace.variables.push(Some((pos, neg)));
        maps.push(map);
    }
    maps
}

fn lay_clause(asm: &mut Assembler, gadget: &ClauseGadget, c: usize, trace: &mut SatTrace) -> Vec<usize> {
    let map = asm.place(format!("clause{c}"), &gadget.graph, &[]);
    for &p in &gadget.free {
        asm.free(p.map(|v| map[v]));
    }
    let lits = gadget.literal_pairs().map(|p| p.map(|v| map[v]));
    for (i, &p) in lits.iter().enumerate() {
        asm.label(format!("clause{c}.{i}"), p);
    }
    trace.clauses.push(lits);
    map
}

/// Sandwich C4-deletion instance equivalent to the exact 3-CNF `f`.
///
/// Literal `i` of a clause is wired by undeletable edges `s_i u` and `t_i v`,
/// where `uv` is the variable gadget's true pair for a positive literal and
/// its false pair for a negative one.
pub fn reduce_3sat_to_sandwich_c4_del(f: &CnfFormula) -> Result<SatReduction, ReduceError> {
    check_exact_3cnf(f)?;
    let pattern = Pattern::named("C4")?;
    let var = c4_del_variable_gadget();
    let clause = c4_del_clause_gadget();
    check_variable_gadget("c4-del variable", &var, &pattern, Mode::Deletion)?;
    check_clause_gadget("c4-del clause", &clause, &pattern, Mode::Deletion)?;
    let mut asm = Assembler::default();
    let mut trace = SatTrace::default();
    let maps = lay_variables(&mut asm, &var, f.variable_count, &mut trace);
    for (c, lits) in f.clauses.iter().enumerate() {
        let cmap = lay_clause(&mut asm, &clause, c, &mut trace);
        for (i, lit) in lits.iter().enumerate() {
            let (u, v) = if lit.positive { var.top } else { var.bottom };
            let (s, t) = clause.literals[i];
            asm.graph.add_edge(cmap[s], maps[lit.var][u]);
            asm.graph.add_edge(cmap[t], maps[lit.var][v]);
        }
    }
    let (instance, gadgets) = asm.finish(Mode::Deletion);
    if !free_edges_c4_free(&instance) {
        return Err(ReduceError::DeletableC4);
    }
    trace.gadgets = gadgets;
    Ok(SatReduction { instance, pattern, trace })
}

/// Sandwich C5-deletion instance equivalent to the exact 3-CNF `f`.
///
/// Literal `i` is wired by a path of length two from `s_i` to `u` and an
/// edge from `t_i` to `v`.
pub fn reduce_3sat_to_sandwich_c5_del(f: &CnfFormula) -> Result<SatReduction, ReduceError> {
    check_exact_3cnf(f)?;
    let pattern = Pattern::named("C5")?;
    let var = c5_del_variable_gadget();
    let clause = c5_del_clause_gadget();
    check_variable_gadget("c5-del variable", &var, &pattern, Mode::Deletion)?;
    check_clause_gadget("c5-del clause", &clause, &pattern, Mode::Deletion)?;
    let mut asm = Assembler::default();
    let mut trace = SatTrace::default();
    let maps = lay_variables(&mut asm, &var, f.variable_count, &mut trace);
    for (c, lits) in f.clauses.iter().enumerate() {
        let cmap = lay_clause(&mut asm, &clause, c, &mut trace);
        for (i, lit) in lits.iter().enumerate() {
            let (u, v) = if lit.positive { var.top } else { var.bottom };
            let (s, t) = clause.literals[i];
            let mid = asm.graph.add_vertex();
            asm.graph.add_edge(cmap[s], mid);
            asm.graph.add_edge(mid, maps[lit.var][u]);
            asm.graph.add_edge(cmap[t], maps[lit.var][v]);
        }
    }
    let (instance, gadgets) = asm.finish(Mode::Deletion);
    trace.gadgets = gadgets;
    Ok(SatReduction { instance, pattern, trace })
}

/// Sandwich C4-completion instance equivalent to the exact 3-CNF `f`.
///
/// Every occurring variable needs at least two occurrences; see
/// [`crate::cnf::duplicate_for_min_occurrences`]. Variables that do not
/// occur get no gadget.
pub fn reduce_3sat_to_sandwich_c4_comp(f: &CnfFormula) -> Result<SatReduction, ReduceError> {
    check_exact_3cnf(f)?;
    let occ = f.occurrences();
    if let Some((var, &count)) = occ.iter().enumerate().find(|&(_, &o)| o == 1) {
        return Err(ReduceError::TooFewOccurrences { var, count, min: 2 });
    }
    let pattern = Pattern::named("C4")?;
    let clause = c4_comp_clause_gadget();
    check_clause_gadget("c4-comp clause", &clause, &pattern, Mode::Completion)?;
    let mut asm = Assembler::default();
    let mut trace = SatTrace::default();
    let mut ladders = Vec::new();
    for (x, &o) in occ.iter().enumerate() {
        if o == 0 {
            trace.variables.push(None);
            ladders.push(None);
            continue;
        }
        let (gadget, ladder) = c4_comp_variable_gadget(o);
        let map = asm.place(format!("var{x}"), &gadget.graph, &[]);
        for &p in &gadget.free {
            asm.free(p.map(|v| map[v]));
        }
        let (pos, neg) = (gadget.top_pair().map(|v| map[v]), gadget.bottom_pair().map(|v| map[v]));
        asm.label(format!("var{x}+"), pos);
        asm.label(format!("var{x}-"), neg);
        trace.variables.push(Some((pos, neg)));
        ladders.push(Some((ladder, map)));
    }
    let mut seen = vec![0usize; f.variable_count];
    for (c, lits) in f.clauses.iter().enumerate() {
        let cmap = lay_clause(&mut asm, &clause, c, &mut trace);
        for (i, lit) in lits.iter().enumerate() {
            let (ladder, map) = ladders[lit.var].as_ref().expect("occurring variable has a ladder");
            let j = seen[lit.var];
            seen[lit.var] += 1;
            let (top, bottom) = if lit.positive { (4 * j + 1, 4 * j) } else { (4 * j, 4 * j + 1) };
            let (u, v) = clause.literals[i];
            asm.graph.add_edge(map[ladder.t(top)], cmap[v]);
            asm.graph.add_edge(map[ladder.b(bottom)], cmap[u]);
        }
    }
    let (instance, gadgets) = asm.finish(Mode::Completion);
    if !free_edges_c4_free(&instance) {
        return Err(ReduceError::FillableC4);
    }
    trace.gadgets = gadgets;
    Ok(SatReduction { instance, pattern, trace })
}

/// Turns a sandwich C4-completion instance into a sandwich house-completion
/// instance by giving every edge a private common neighbour.
pub fn reduce_c4comp_to_house_comp(inst: &SandwichInstance) -> Result<SandwichInstance, ReduceError> {
    if inst.mode != Mode::Completion {
        return Err(ReduceError::WrongMode { expected: Mode::Completion, found: inst.mode });
    }
    if !free_edges_c4_free(inst) {
        return Err(ReduceError::FillableC4);
    }
    let mut g = inst.graph.clone();
    let edges: Vec<Pair> = inst.graph.edges().collect();
    for e in edges {
        let w = g.add_vertex();
        g.add_edge(e.lo(), w);
        g.add_edge(e.hi(), w);
    }
    Ok(SandwichInstance { graph: g, ..inst.clone() })
}

/// Families of pattern-specific lifts from sandwich to budgeted instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    C4Del,
    C5Del,
    C4Comp,
    HouseComp,
    HouseDel,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::C4Del, Family::C5Del, Family::C4Comp, Family::HouseComp, Family::HouseDel];

    pub fn name(self) -> &'static str {
        match self {
            Family::C4Del => "c4-del",
            Family::C5Del => "c5-del",
            Family::C4Comp => "c4-comp",
            Family::HouseComp => "house-comp",
            Family::HouseDel => "house-del",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            Family::C4Del | Family::C5Del | Family::HouseDel => Mode::Deletion,
            Family::C4Comp | Family::HouseComp => Mode::Completion,
        }
    }

    /// Pattern of the sandwich instance the lift expects.
    pub fn source_pattern(self) -> Pattern {
        let name = match self {
            Family::C4Del | Family::HouseDel | Family::C4Comp => "C4",
            Family::C5Del => "C5",
            Family::HouseComp => "house",
        };
        Pattern::named(name).expect("built-in pattern")
    }

    /// Pattern of the budgeted instance the lift produces.
    pub fn target_pattern(self) -> Pattern {
        let name = match self {
            Family::C4Del | Family::C4Comp => "C4",
            Family::C5Del => "C5",
            Family::HouseComp | Family::HouseDel => "house",
        };
        Pattern::named(name).expect("built-in pattern")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ReduceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ReduceError::UnknownFamily(s.to_string()))
    }
}

/// Checks that the graph spanned by the free pairs has no C4 subgraph (not
/// necessarily induced).
pub fn free_edges_c4_free(inst: &SandwichInstance) -> bool {
    let n = inst.graph.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for p in &inst.free {
        adj[p.lo()].push(p.hi());
        adj[p.hi()].push(p.lo());
    }
    // A C4 subgraph exists iff two vertices share two common neighbours.
    let mut count = vec![0usize; n];
    for a in 0..n {
        let mut touched = Vec::new();
        for &m in &adj[a] {
            for &b in &adj[m] {
                if b > a {
                    count[b] += 1;
                    if count[b] == 2 {
                        return false;
                    }
                    touched.push(b);
                }
            }
        }
        for b in touched {
            count[b] = 0;
        }
    }
    true
}

/// Budgeted instance with a gap, built by hanging `p(k)`-many small
/// attachments off every protected pair, where `k` is the number of free
/// pairs. The budget is `k`.
pub fn lift_specific(inst: &SandwichInstance, family: Family, p: Poly) -> Result<BudgetedInstance, ReduceError> {
    if inst.mode != family.mode() {
        return Err(ReduceError::WrongMode { expected: family.mode(), found: inst.mode });
    }
    for &q in &inst.free {
        if q.hi() >= inst.graph.vertex_count() || !inst.mode.can_touch(&inst.graph, q) {
            return Err(ReduceError::InvalidFree(q));
        }
    }
    let k = inst.free.len();
    let pk = p.eval(k)?;
    let mut g = inst.graph.clone();
    let anchors = protected_pairs(inst);
    let path = |g: &mut Graph, u: usize, v: usize, inner: usize| -> Vec<usize> {
        let mids: Vec<usize> = (0..inner).map(|_| g.add_vertex()).collect();
        let mut prev = u;
        for &m in &mids {
            g.add_edge(prev, m);
            prev = m;
        }
        g.add_edge(prev, v);
        mids
    };
    match family {
        Family::C4Del => {
            for a in &anchors {
                for _ in 0..pk + 2 {
                    path(&mut g, a.lo(), a.hi(), 1);
                }
            }
        }
        Family::C5Del => {
            for a in &anchors {
                for _ in 0..pk + 1 {
                    path(&mut g, a.lo(), a.hi(), 2);
                    path(&mut g, a.lo(), a.hi(), 1);
                }
            }
        }
        Family::C4Comp => {
            for a in &anchors {
                for _ in 0..pk + 1 {
                    path(&mut g, a.lo(), a.hi(), 2);
                }
            }
        }
        Family::HouseComp => {
            for a in &anchors {
                for _ in 0..pk + 1 {
                    let mids = path(&mut g, a.lo(), a.hi(), 2);
                    let apex = g.add_vertex();
                    g.add_edge(apex, mids[0]);
                    g.add_edge(apex, mids[1]);
                }
            }
        }
        Family::HouseDel => return reduce_c4del_to_house_del(inst, p),
    }
    Ok(BudgetedInstance { graph: g, mode: family.mode(), pattern: family.target_pattern(), budget: k })
}

/// Budgeted house-deletion instance from a sandwich C4-deletion instance in
/// which every C4 subgraph has an undeletable edge. Each undeletable edge
/// `uv` receives `p(k) + 2` gadgets on fresh `a, b` with edges `ua, ub, vb,
/// ab`.
pub fn reduce_c4del_to_house_del(inst: &SandwichInstance, p: Poly) -> Result<BudgetedInstance, ReduceError> {
    if inst.mode != Mode::Deletion {
        return Err(ReduceError::WrongMode { expected: Mode::Deletion, found: inst.mode });
    }
    if !free_edges_c4_free(inst) {
        return Err(ReduceError::DeletableC4);
    }
    let k = inst.free.len();
    let pk = p.eval(k)?;
    let mut g = inst.graph.clone();
    for e in protected_pairs(inst) {
        let (u, v) = (e.lo(), e.hi());
        for _ in 0..pk + 2 {
            let a = g.add_vertex();
            let b = g.add_vertex();
            for (x, y) in [(u, a), (u, b), (v, b), (a, b)] {
                g.add_edge(x, y);
            }
        }
    }
    Ok(BudgetedInstance {
        graph: g,
        mode: Mode::Deletion,
        pattern: Pattern::named("house").expect("built-in pattern"),
        budget: k,
    })
}
