//! Exact solvers for sandwich and budgeted H-free edge modification.
//!
//! Both solvers branch on a single induced copy of the pattern: every solution
//! must modify one of the copy's modifiable pairs, so branching over those
//! pairs is complete. Copies are maintained incrementally: toggling `{u, v}`
//! only destroys copies containing both endpoints and only creates copies
//! through both endpoints.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Pair};
use crate::iso::Matcher;
use crate::pattern::Pattern;

/// Default cap on search nodes before a solver gives up.
pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Deletion,
    Completion,
}

impl Mode {
    pub fn flipped(self) -> Mode {
        match self {
            Mode::Deletion => Mode::Completion,
            Mode::Completion => Mode::Deletion,
        }
    }

    /// Whether `p` is a pair this mode may modify in `g`.
    pub fn can_touch(self, g: &Graph, p: Pair) -> bool {
        g.has_pair(p) == (self == Mode::Deletion)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Deletion => "deletion",
            Mode::Completion => "completion",
        })
    }
}

/// A set of pairs to delete (deletion mode) or fill (completion mode).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModificationSet(pub BTreeSet<Pair>);

impl ModificationSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.0.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Pair> for ModificationSet {
    fn from_iter<I: IntoIterator<Item = Pair>>(iter: I) -> Self {
        ModificationSet(iter.into_iter().collect())
    }
}

/// Graph plus the pairs a solution may modify.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SandwichInstance {
    pub graph: Graph,
    pub mode: Mode,
    pub free: BTreeSet<Pair>,
    pub labels: BTreeMap<String, Pair>,
}

/// Graph, pattern and a bound on the number of modifications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetedInstance {
    pub graph: Graph,
    pub mode: Mode,
    pub pattern: Pattern,
    pub budget: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("search exceeded the node limit of {0}")]
    NodeLimit(u64),
    #[error("pair {pair} cannot be modified in {mode} mode")]
    InvalidPair { pair: Pair, mode: Mode },
    #[error("{count} free elements exceed the enumeration guard of {guard}")]
    TooManyFree { count: usize, guard: usize },
}

/// Applies `set` to `g`: deletes its pairs in deletion mode, fills them in
/// completion mode.
pub fn apply(g: &Graph, mode: Mode, set: &ModificationSet) -> Result<Graph, SolveError> {
    let mut out = g.clone();
    for p in set.iter() {
        if p.hi() >= g.vertex_count() || !mode.can_touch(g, p) {
            return Err(SolveError::InvalidPair { pair: p, mode });
        }
        out.toggle(p);
    }
    Ok(out)
}

/// Which pairs the search may modify.
#[derive(Clone, Copy, Debug)]
enum Freedom<'a> {
    Only(&'a BTreeSet<Pair>),
    AllBut(&'a BTreeSet<Pair>),
}

impl Freedom<'_> {
    fn allows(self, p: Pair) -> bool {
        match self {
            Freedom::Only(s) => s.contains(&p),
            Freedom::AllBut(s) => !s.contains(&p),
        }
    }
}

type CopySet = Box<[usize]>;

struct Search<'a> {
    graph: Graph,
    matcher: Matcher,
    mode: Mode,
    freedom: Freedom<'a>,
    chosen: BTreeSet<Pair>,
    nodes: u64,
    limit: u64,
    seen: HashSet<Vec<Pair>>,
    hit_bound: bool,
}

impl<'a> Search<'a> {
    fn new(g: &Graph, pattern: &Pattern, mode: Mode, freedom: Freedom<'a>, limit: u64) -> Self {
        Search {
            graph: g.clone(),
            matcher: Matcher::new(pattern.graph()),
            mode,
            freedom,
            chosen: BTreeSet::new(),
            nodes: 0,
            limit,
            seen: HashSet::new(),
            hit_bound: false,
        }
    }

    fn initial_copies(&self) -> Vec<CopySet> {
        self.matcher.all(&self.graph).into_iter().map(Vec::into_boxed_slice).collect()
    }

    /// Pairs inside `copy` that are still unmodified and modifiable.
    fn options(&self, copy: &[usize]) -> Vec<Pair> {
        let mut out = Vec::new();
        for (i, &u) in copy.iter().enumerate() {
            for &v in &copy[i + 1..] {
                let p = Pair::new(u, v);
                if self.mode.can_touch(&self.graph, p) && self.freedom.allows(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(SolveError::NodeLimit(self.limit))
        } else {
            Ok(())
        }
    }

    /// Copies with the fewest options first; returns `None` if some copy has
    /// no option left.
    fn branching_copy(&self, copies: &[CopySet]) -> Option<Vec<Pair>> {
        let mut best: Option<Vec<Pair>> = None;
        for c in copies {
            let opts = self.options(c);
            if opts.is_empty() {
                return None;
            }
            if best.as_ref().is_none_or(|b| opts.len() < b.len()) {
                let done = opts.len() == 1;
                best = Some(opts);
                if done {
                    break;
                }
            }
        }
        best
    }

    /// Toggles `p` and returns the resulting copy list.
    fn step(&mut self, copies: &[CopySet], p: Pair) -> Vec<CopySet> {
        self.graph.toggle(p);
        self.chosen.insert(p);
        let (u, v) = (p.lo(), p.hi());
        let mut next: Vec<CopySet> = copies
            .iter()
            .filter(|c| !(c.binary_search(&u).is_ok() && c.binary_search(&v).is_ok()))
            .cloned()
            .collect();
        next.extend(self.matcher.through(&self.graph, u, v).into_iter().map(Vec::into_boxed_slice));
        next
    }

    fn undo(&mut self, p: Pair) {
        self.graph.toggle(p);
        self.chosen.remove(&p);
    }

    fn key(&self) -> Vec<Pair> {
        self.chosen.iter().copied().collect()
    }

    fn exists(&mut self, copies: Vec<CopySet>) -> Result<bool, SolveError> {
        self.tick()?;
        if copies.is_empty() {
            return Ok(true);
        }
        if !self.seen.insert(self.key()) {
            return Ok(false);
        }
        let Some(opts) = self.branching_copy(&copies) else {
            return Ok(false);
        };
        for p in opts {
            let next = self.step(&copies, p);
            if self.exists(next)? {
                return Ok(true);
            }
            self.undo(p);
        }
        Ok(false)
    }

    /// Greedy count of copies with pairwise disjoint option sets; each needs
    /// its own modification.
    fn packing_bound(&self, copies: &[CopySet], stop: usize) -> usize {
        let mut used = HashSet::new();
        let mut count = 0;
        let mut sets: Vec<Vec<Pair>> = copies.iter().map(|c| self.options(c)).collect();
        sets.sort_by_key(Vec::len);
        for s in sets {
            if s.iter().all(|p| !used.contains(p)) {
                used.extend(s);
                count += 1;
                if count > stop {
                    break;
                }
            }
        }
        count
    }

    fn bounded(&mut self, copies: Vec<CopySet>, bound: usize) -> Result<bool, SolveError> {
        self.tick()?;
        if copies.is_empty() {
            return Ok(true);
        }
        let remaining = bound - self.chosen.len();
        if remaining == 0 || self.packing_bound(&copies, remaining) > remaining {
            self.hit_bound = true;
            return Ok(false);
        }
        if !self.seen.insert(self.key()) {
            return Ok(false);
        }
        let Some(opts) = self.branching_copy(&copies) else {
            return Ok(false);
        };
        for p in opts {
            let next = self.step(&copies, p);
            if self.bounded(next, bound)? {
                return Ok(true);
            }
            self.undo(p);
        }
        Ok(false)
    }

    fn solution(&self) -> ModificationSet {
        self.chosen.iter().copied().collect()
    }
}

/// Search configuration shared by the solvers.
#[derive(Clone, Copy, Debug)]
pub struct Solver {
    pub node_limit: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { node_limit: DEFAULT_NODE_LIMIT }
    }
}

impl Solver {
    pub fn with_node_limit(node_limit: u64) -> Self {
        Solver { node_limit }
    }

    /// Decides a sandwich instance, returning a witness if one exists.
    pub fn sandwich(
        &self,
        inst: &SandwichInstance,
        pattern: &Pattern,
    ) -> Result<Option<ModificationSet>, SolveError> {
        validate_free(inst)?;
        let mut s =
            Search::new(&inst.graph, pattern, inst.mode, Freedom::Only(&inst.free), self.node_limit);
        let copies = s.initial_copies();
        Ok(if s.exists(copies)? { Some(s.solution()) } else { None })
    }

    /// Minimum number of modifications avoiding `quarantine`, searched by
    /// iterative deepening up to `cap` (unbounded if `None`).
    pub fn minimum(
        &self,
        g: &Graph,
        pattern: &Pattern,
        mode: Mode,
        quarantine: &BTreeSet<Pair>,
        cap: Option<usize>,
    ) -> Result<Option<(ModificationSet, usize)>, SolveError> {
        let mut s = Search::new(g, pattern, mode, Freedom::AllBut(quarantine), self.node_limit);
        let copies = s.initial_copies();
        let n = g.vertex_count();
        let touchable = match mode {
            Mode::Deletion => g.edge_count(),
            Mode::Completion => n * n.saturating_sub(1) / 2 - g.edge_count(),
        };
        let cap = cap.unwrap_or(touchable).min(touchable);
        for bound in 0..=cap {
            s.seen.clear();
            s.hit_bound = false;
            if s.bounded(copies.clone(), bound)? {
                let sol = s.solution();
                let cost = sol.len();
                return Ok(Some((sol, cost)));
            }
            if !s.hit_bound {
                break;
            }
        }
        Ok(None)
    }
}

fn validate_free(inst: &SandwichInstance) -> Result<(), SolveError> {
    for &p in &inst.free {
        if p.hi() >= inst.graph.vertex_count() || !inst.mode.can_touch(&inst.graph, p) {
            return Err(SolveError::InvalidPair { pair: p, mode: inst.mode });
        }
    }
    Ok(())
}

pub fn solve_sandwich(
    inst: &SandwichInstance,
    pattern: &Pattern,
) -> Result<Option<ModificationSet>, SolveError> {
    Solver::default().sandwich(inst, pattern)
}

pub fn solve_min(
    g: &Graph,
    pattern: &Pattern,
    mode: Mode,
    quarantine: &BTreeSet<Pair>,
    cap: Option<usize>,
) -> Result<Option<(ModificationSet, usize)>, SolveError> {
    Solver::default().minimum(g, pattern, mode, quarantine, cap)
}

/// Largest free set [`enumerate_solutions`] will expand.
pub const ENUMERATION_GUARD: usize = 22;

/// Every subset of the free elements that leaves the graph H-free, by plain
/// enumeration. Subsets are listed in increasing bitmask order over the
/// sorted free list.
pub fn enumerate_solutions(
    inst: &SandwichInstance,
    pattern: &Pattern,
) -> Result<Vec<ModificationSet>, SolveError> {
    validate_free(inst)?;
    let free: Vec<Pair> = inst.free.iter().copied().collect();
    if free.len() > ENUMERATION_GUARD {
        return Err(SolveError::TooManyFree { count: free.len(), guard: ENUMERATION_GUARD });
    }
    let matcher = Matcher::new(pattern.graph());
    let mut g = inst.graph.clone();
    let mut out = Vec::new();
    let mut prev: u64 = 0;
    for mask in 0u64..(1 << free.len()) {
        // Toggle only the bits that changed since the previous mask.
        let diff = mask ^ prev;
        for (i, &p) in free.iter().enumerate() {
            if diff >> i & 1 == 1 {
                g.toggle(p);
            }
        }
        prev = mask;
        if matcher.find(&g).is_none() {
            out.push((0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i]).collect());
        }
    }
    Ok(out)
}
