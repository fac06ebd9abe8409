//! MinOnes constraint problems and their correspondence with `K_n - e`
//! deletion.
//!
//! [`reduce_minones_to_quarantined`] turns a MinOnes instance over `F1` and
//! `F2` into a quarantined deletion instance where each variable owns a group
//! of exactly `delta` deletable edges that are deleted all together or not at
//! all. [`reduce_knexdel_to_minones`] goes the other way, with one variable
//! per edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::cnf::Assignment;
use crate::graph::{Graph, Pair};
use crate::iso::enumerate_induced_copies;
use crate::pattern::Pattern;
use crate::reduce::{general::attach_copies, Assembler};
use crate::solver::{BudgetedInstance, Mode, ModificationSet};

/// Largest variable count [`minones_brute_force`] accepts.
pub const MINONES_GUARD: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    /// False iff exactly one of three positions is 1.
    F1,
    /// The value of its single argument.
    F2,
    /// False iff exactly one of `n(n-1)/2` positions is 1.
    Fn(usize),
    /// False iff all `n(n-1)/2 - 1` positions are 0.
    Gn(usize),
}

impl ConstraintKind {
    pub fn arity(self) -> usize {
        match self {
            ConstraintKind::F1 => 3,
            ConstraintKind::F2 => 1,
            ConstraintKind::Fn(n) => n * (n - 1) / 2,
            ConstraintKind::Gn(n) => n * (n - 1) / 2 - 1,
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintKind::F1 => f.write_str("f1"),
            ConstraintKind::F2 => f.write_str("f2"),
            ConstraintKind::Fn(n) => write!(f, "fn {n}"),
            ConstraintKind::Gn(n) => write!(f, "gn {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub kind: ConstraintKind,
    pub args: Vec<usize>,
}

impl Constraint {
    pub fn new(kind: ConstraintKind, args: Vec<usize>) -> Result<Self, MinHornError> {
        if args.len() != kind.arity() {
            return Err(MinHornError::Arity { kind, expected: kind.arity(), found: args.len() });
        }
        Ok(Constraint { kind, args })
    }

    pub fn f1(x: usize, y: usize, z: usize) -> Self {
        Constraint { kind: ConstraintKind::F1, args: vec![x, y, z] }
    }

    pub fn f2(x: usize) -> Self {
        Constraint { kind: ConstraintKind::F2, args: vec![x] }
    }

    /// Evaluates the constraint; repeated variables count once per position.
    pub fn eval(&self, a: &Assignment) -> bool {
        eval_constraint(self.kind, &self.args, a).expect("arity checked at construction")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinOnesInstance {
    pub variable_count: usize,
    pub constraints: Vec<Constraint>,
}

impl MinOnesInstance {
    pub fn new(variable_count: usize, constraints: Vec<Constraint>) -> Result<Self, MinHornError> {
        for c in &constraints {
            if c.args.len() != c.kind.arity() {
                return Err(MinHornError::Arity {
                    kind: c.kind,
                    expected: c.kind.arity(),
                    found: c.args.len(),
                });
            }
            if let Some(&v) = c.args.iter().find(|&&v| v >= variable_count) {
                return Err(MinHornError::VariableOutOfRange { var: v, count: variable_count });
            }
        }
        Ok(MinOnesInstance { variable_count, constraints })
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.constraints.iter().all(|c| c.eval(a))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinHornError {
    #[error("{kind} takes {expected} arguments, got {found}")]
    Arity { kind: ConstraintKind, expected: usize, found: usize },
    #[error("variable {var} out of range for {count} variables")]
    VariableOutOfRange { var: usize, count: usize },
    #[error("constraint kind {0} is not supported here")]
    Unsupported(ConstraintKind),
    #[error("clique size {0} is below 5")]
    SmallClique(usize),
    #[error("variable {var} needs a group of at least {needed} edges, delta is {delta}")]
    DeltaTooSmall { var: usize, needed: usize, delta: usize },
    #[error("variable {var} occurs {occurrences} times, above the bound {bound}")]
    TooManyOccurrences { var: usize, occurrences: usize, bound: usize },
    #[error("group of variable {var} has {size} edges, expected {delta}")]
    GroupSize { var: usize, size: usize, delta: usize },
    #[error("{vars} variables exceed the brute-force guard of {guard}")]
    GuardExceeded { vars: usize, guard: usize },
    #[error("group of variable {0} is only partly deleted")]
    PartialGroup(usize),
    #[error("pair {0} is not a group edge")]
    NotInGroup(Pair),
    #[error("assignment has {found} values, expected {expected}")]
    AssignmentLength { expected: usize, found: usize },
}

/// Evaluates a constraint of kind `kind` on `args` under `a`.
pub fn eval_constraint(kind: ConstraintKind, args: &[usize], a: &Assignment) -> Result<bool, MinHornError> {
    if args.len() != kind.arity() {
        return Err(MinHornError::Arity { kind, expected: kind.arity(), found: args.len() });
    }
    let ones = args.iter().filter(|&&v| a.0[v]).count();
    Ok(match kind {
        ConstraintKind::F1 | ConstraintKind::Fn(_) => ones != 1,
        ConstraintKind::F2 => ones == 1,
        ConstraintKind::Gn(_) => ones != 0,
    })
}

/// A satisfying assignment with the fewest ones, found by trying weights in
/// increasing order; `None` if unsatisfiable.
pub fn minones_brute_force(inst: &MinOnesInstance) -> Result<Option<(Assignment, usize)>, MinHornError> {
    let n = inst.variable_count;
    if n > MINONES_GUARD {
        return Err(MinHornError::GuardExceeded { vars: n, guard: MINONES_GUARD });
    }
    let to_assignment = |mask: u32| Assignment((0..n).map(|v| mask >> v & 1 == 1).collect());
    for weight in 0..=n {
        if weight == 0 {
            let a = to_assignment(0);
            if inst.is_satisfied_by(&a) {
                return Ok(Some((a, 0)));
            }
            continue;
        }
        // Gosper's hack over masks of the given popcount.
        let limit: u64 = 1 << n;
        let mut mask: u64 = (1 << weight) - 1;
        while mask < limit {
            let a = to_assignment(mask as u32);
            if inst.is_satisfied_by(&a) {
                return Ok(Some((a, weight)));
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    Ok(None)
}

/// Group size used by the faithful construction: `9 n_vars^2 + 2`.
pub fn faithful_delta(variable_count: usize) -> usize {
    9 * variable_count * variable_count + 2
}

/// Deduplicated `F1` argument lists, per-variable occurrence counts in them,
/// and the variables carrying an `F2` constraint.
type Profile = (Vec<Vec<usize>>, Vec<usize>, BTreeSet<usize>);

fn occurrence_profile(inst: &MinOnesInstance) -> Result<Profile, MinHornError> {
    let mut seen = BTreeSet::new();
    let mut f1_list = Vec::new();
    let mut f2 = BTreeSet::new();
    for c in &inst.constraints {
        match c.kind {
            ConstraintKind::F1 => {
                let mut key = c.args.clone();
                key.sort_unstable();
                if seen.insert(key) {
                    f1_list.push(c.args.clone());
                }
            }
            ConstraintKind::F2 => {
                f2.insert(c.args[0]);
            }
            other => return Err(MinHornError::Unsupported(other)),
        }
    }
    let mut delta = vec![0; inst.variable_count];
    for &v in f1_list.iter().flatten() {
        delta[v] += 1;
    }
    Ok((f1_list, delta, f2))
}

/// Smallest uniform group size the construction can realise for `inst`.
pub fn min_uniform_delta(inst: &MinOnesInstance) -> Result<usize, MinHornError> {
    let (_, delta, f2) = occurrence_profile(inst)?;
    Ok((0..inst.variable_count)
        .map(|x| 3 * delta[x] + if f2.contains(&x) { 1 } else { 2 })
        .max()
        .unwrap_or(0))
}

/// Deletable edges owned by each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGroupMap {
    pub groups: Vec<Vec<Pair>>,
    pub group_size: usize,
}

impl EdgeGroupMap {
    /// Deletes every group edge of the variables set to 1.
    pub fn deletions_for(&self, a: &Assignment) -> Result<ModificationSet, MinHornError> {
        if a.0.len() != self.groups.len() {
            return Err(MinHornError::AssignmentLength { expected: self.groups.len(), found: a.0.len() });
        }
        Ok(self.groups.iter().zip(&a.0).filter(|(_, &on)| on).flat_map(|(g, _)| g.iter().copied()).collect())
    }

    /// Sets a variable to 1 iff its whole group is deleted; a partly deleted
    /// group or a pair outside every group is an error.
    pub fn assignment_for(&self, deleted: &ModificationSet) -> Result<Assignment, MinHornError> {
        let owner: BTreeMap<Pair, usize> =
            self.groups.iter().enumerate().flat_map(|(x, g)| g.iter().map(move |&p| (p, x))).collect();
        if let Some(p) = deleted.iter().find(|p| !owner.contains_key(p)) {
            return Err(MinHornError::NotInGroup(p));
        }
        let mut values = Vec::with_capacity(self.groups.len());
        for (x, g) in self.groups.iter().enumerate() {
            let hit = g.iter().filter(|&&p| deleted.contains(p)).count();
            if hit != 0 && hit != g.len() {
                return Err(MinHornError::PartialGroup(x));
            }
            values.push(hit != 0 && hit == g.len());
        }
        Ok(Assignment(values))
    }
}

/// Output of [`reduce_minones_to_quarantined`].
#[derive(Clone, Debug)]
pub struct QuarantinedInstance {
    pub graph: Graph,
    pub n: usize,
    /// Edges that may not be deleted.
    pub quarantine: BTreeSet<Pair>,
    pub groups: EdgeGroupMap,
}

impl QuarantinedInstance {
    pub fn pattern(&self) -> Pattern {
        Pattern::named(&format!("K{}-e", self.n)).expect("valid clique size")
    }
}

/// Builds the clique complex for a MinOnes instance over `F1` and `F2`.
///
/// Every clique is a `K_n`. Each variable has a variable clique with the
/// disjoint deletable pairs `x_in = {0,1}` and `x_out = {2,3}`; each distinct
/// `F1` constraint has a constraint clique whose three smallest edges carry
/// its arguments; each occurrence is wired by three connection cliques, and
/// pendant cliques on `x_in` pad every group to exactly `delta` edges. An
/// `F2(x)` constraint removes `x_in`.
///
/// `delta` defaults to `9 n_vars^2 + 2`; a smaller value keeps groups
/// uniform but needs `3 delta(x) + 2` edges (`+ 1` with `F2(x)`).
pub fn reduce_minones_to_quarantined(
    inst: &MinOnesInstance,
    n: usize,
    delta: Option<usize>,
) -> Result<QuarantinedInstance, MinHornError> {
    if n < 5 {
        return Err(MinHornError::SmallClique(n));
    }
    let (f1_list, occ, f2) = occurrence_profile(inst)?;
    let nv = inst.variable_count;
    let bound = 3 * nv * nv;
    if let Some(x) = (0..nv).find(|&x| occ[x] > bound) {
        return Err(MinHornError::TooManyOccurrences { var: x, occurrences: occ[x], bound });
    }
    let delta = delta.unwrap_or_else(|| faithful_delta(nv));
    let clique = Graph::complete(n);
    let (x_in, x_out) = (Pair::new(0, 1), Pair::new(2, 3));
    let glue = |local: Pair, host: Pair| [(local.lo(), host.lo()), (local.hi(), host.hi())];

    let mut asm = Assembler::default();
    let mut groups: Vec<Vec<Pair>> = vec![Vec::new(); nv];
    let mut ins = Vec::with_capacity(nv);
    let mut outs = Vec::with_capacity(nv);
    for x in 0..nv {
        let map = asm.place(format!("var{x}"), &clique, &[]);
        ins.push(x_in.map(|v| map[v]));
        outs.push(x_out.map(|v| map[v]));
        groups[x].push(outs[x]);
    }
    let slots = [Pair::new(0, 1), Pair::new(0, 2), Pair::new(0, 3)];
    for (c, args) in f1_list.iter().enumerate() {
        let map = asm.place(format!("constraint{c}"), &clique, &[]);
        for (i, &x) in args.iter().enumerate() {
            let label = slots[i].map(|v| map[v]);
            groups[x].push(label);
            let mut prev = outs[x];
            for j in 0..3 {
                let mut gl = glue(x_in, prev).to_vec();
                if j == 2 {
                    gl.extend(glue(x_out, label));
                }
                let m = asm.place(format!("constraint{c}.{i}.link{j}"), &clique, &gl);
                prev = x_out.map(|v| m[v]);
                if j < 2 {
                    groups[x].push(prev);
                }
            }
        }
    }
    for x in 0..nv {
        let own = if f2.contains(&x) { 1 } else { 2 };
        let needed = 3 * occ[x] + own;
        if delta < needed {
            return Err(MinHornError::DeltaTooSmall { var: x, needed, delta });
        }
        if !f2.contains(&x) {
            groups[x].push(ins[x]);
        }
        for j in 0..delta - needed {
            let m = asm.place(format!("var{x}.pendant{j}"), &clique, &glue(x_in, ins[x]));
            groups[x].push(x_out.map(|v| m[v]));
        }
    }
    let mut graph = asm.graph;
    for &x in &f2 {
        graph.remove_edge(ins[x].lo(), ins[x].hi());
    }
    for (x, g) in groups.iter_mut().enumerate() {
        g.sort();
        g.dedup();
        if g.len() != delta {
            return Err(MinHornError::GroupSize { var: x, size: g.len(), delta });
        }
    }
    let labelled: BTreeSet<Pair> = groups.iter().flatten().copied().collect();
    let quarantine = graph.edges().filter(|p| !labelled.contains(p)).collect();
    Ok(QuarantinedInstance { graph, n, quarantine, groups: EdgeGroupMap { groups, group_size: delta } })
}

/// Removes the quarantine by hanging `copies` copies of `K_n - e` (glued at
/// its non-edge) off every quarantined edge. `copies` defaults to `m^2` for
/// `m` edges; the budget of the result is the number of copies, the largest
/// cost for which solutions transfer back.
pub fn lift_quarantine(
    g: &Graph,
    quarantine: &BTreeSet<Pair>,
    n: usize,
    copies: Option<usize>,
) -> Result<BudgetedInstance, MinHornError> {
    if n < 5 {
        return Err(MinHornError::SmallClique(n));
    }
    let pattern = Pattern::named(&format!("K{n}-e")).expect("valid clique size");
    let m = g.edge_count();
    let copies = copies.unwrap_or(m * m);
    let anchors: Vec<Pair> = quarantine.iter().copied().collect();
    let graph = attach_copies(g, &anchors, pattern.graph(), pattern.non_edges()[0], copies);
    Ok(BudgetedInstance { graph, mode: Mode::Deletion, pattern, budget: copies })
}

/// MinOnes instance whose satisfying assignments are exactly the indicator
/// vectors of edge sets whose deletion makes `g` free of induced `K_n - e`.
/// Variable `i` stands for the `i`-th edge in lexicographic order.
pub fn reduce_knexdel_to_minones(g: &Graph, n: usize) -> Result<(MinOnesInstance, Vec<Pair>), MinHornError> {
    if n < 5 {
        return Err(MinHornError::SmallClique(n));
    }
    let edges: Vec<Pair> = g.edges().collect();
    let index: BTreeMap<Pair, usize> = edges.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let vars_of = |set: &[usize]| -> Vec<usize> {
        let mut vars = Vec::new();
        for (a, &u) in set.iter().enumerate() {
            for &v in &set[a + 1..] {
                if let Some(&i) = index.get(&Pair::new(u, v)) {
                    vars.push(i);
                }
            }
        }
        vars
    };
    let mut constraints = Vec::new();
    let knexe = Pattern::named(&format!("K{n}-e")).expect("valid clique size");
    for set in enumerate_induced_copies(g, knexe.graph()) {
        constraints.push(Constraint { kind: ConstraintKind::Gn(n), args: vars_of(&set) });
    }
    for set in enumerate_induced_copies(g, &Graph::complete(n)) {
        constraints.push(Constraint { kind: ConstraintKind::Fn(n), args: vars_of(&set) });
    }
    Ok((MinOnesInstance { variable_count: edges.len(), constraints }, edges))
}

/// Indicator assignment of a deletion set over `edges`.
pub fn indicator(edges: &[Pair], deleted: &ModificationSet) -> Assignment {
    Assignment(edges.iter().map(|&p| deleted.contains(p)).collect())
}

/// Edge set selected by an assignment over `edges`.
pub fn selected_edges(edges: &[Pair], a: &Assignment) -> ModificationSet {
    edges.iter().zip(&a.0).filter(|(_, &on)| on).map(|(&p, _)| p).collect()
}
