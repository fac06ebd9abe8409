//! Polynomial reductions between 3-SAT, sandwich problems and budgeted
//! H-free edge modification.

pub mod general;
pub mod specific;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

use crate::cnf::{Assignment, CnfFormula};
use crate::graph::{Graph, Pair};
use crate::pattern::{Pattern, PatternError};
use crate::solver::{Mode, ModificationSet, SandwichInstance};

pub use general::{
    complement_instance, lift_sandwich_comp, lift_sandwich_del, reduce_3sat_to_sandwich_comp,
    reduce_3sat_to_sandwich_del,
};
pub use specific::{
    lift_specific, reduce_3sat_to_sandwich_c4_comp, reduce_3sat_to_sandwich_c4_del,
    reduce_3sat_to_sandwich_c5_del, reduce_c4comp_to_house_comp, reduce_c4del_to_house_del,
    Family,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("clause {0} does not have exactly three literals over distinct variables")]
    NotExact3Cnf(usize),
    #[error("variable {var} occurs {count} time(s); at least {min} required")]
    TooFewOccurrences { var: usize, count: usize, min: usize },
    #[error("pattern {0} has no edge disjoint from its smallest non-edge")]
    NoDisjointEdge(String),
    #[error("free pair {0} is not valid for this instance")]
    InvalidFree(Pair),
    #[error("instance mode is {found}, expected {expected}")]
    WrongMode { expected: Mode, found: Mode },
    #[error("some C4 subgraph uses only deletable edges")]
    DeletableC4,
    #[error("polynomial value overflows")]
    Overflow,
    #[error("gadget {gadget} violates its contract: {detail}")]
    GadgetContract { gadget: &'static str, detail: String },
    #[error("the graph spanned by fillable pairs contains a C4")]
    FillableC4,
    #[error("unknown lift family `{0}`")]
    UnknownFamily(String),
}

/// A polynomial `a * l^d + c` with `a >= 1` and `d >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Poly {
    pub a: usize,
    pub d: u32,
    pub c: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid polynomial `{0}`: expected `a,d,c` with a >= 1 and d >= 1")]
pub struct PolyError(String);

impl Poly {
    pub fn new(a: usize, d: u32, c: usize) -> Result<Self, PolyError> {
        if a == 0 || d == 0 {
            return Err(PolyError(format!("{a},{d},{c}")));
        }
        Ok(Poly { a, d, c })
    }

    /// `l + 1`.
    pub fn successor() -> Self {
        Poly { a: 1, d: 1, c: 1 }
    }

    pub fn eval(&self, l: usize) -> Result<usize, ReduceError> {
        l.checked_pow(self.d)
            .and_then(|x| x.checked_mul(self.a))
            .and_then(|x| x.checked_add(self.c))
            .ok_or(ReduceError::Overflow)
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolyError(s.to_string());
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, d, c] = parts.as_slice() else {
            return Err(bad());
        };
        let a = a.parse().map_err(|_| bad())?;
        let d = d.parse().map_err(|_| bad())?;
        let c = c.parse().map_err(|_| bad())?;
        Poly::new(a, d, c).map_err(|_| bad())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.d, self.c)
    }
}

/// Named block of freshly created vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetExtent {
    pub name: String,
    pub vertices: Range<usize>,
}

/// Where the literals of a formula live inside a reduced instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SatTrace {
    /// Positive and negative literal pair of each variable that has a gadget.
    pub variables: Vec<Option<(Pair, Pair)>>,
    /// Literal pairs of each clause, in literal order.
    pub clauses: Vec<[Pair; 3]>,
    /// Connector chain pairs per clause literal, from clause to variable.
    pub chains: Vec<[Vec<Pair>; 3]>,
    pub gadgets: Vec<GadgetExtent>,
}

impl SatTrace {
    /// Reads an assignment off a solution: a variable is true iff its
    /// positive literal pair was modified.
    pub fn decode(&self, solution: &ModificationSet) -> Assignment {
        Assignment(
            self.variables
                .iter()
                .map(|v| v.is_some_and(|(pos, _)| solution.contains(pos)))
                .collect(),
        )
    }
}

/// Reduced sandwich instance with its pattern and literal bookkeeping.
#[derive(Clone, Debug)]
pub struct SatReduction {
    pub instance: SandwichInstance,
    pub pattern: Pattern,
    pub trace: SatTrace,
}

pub(crate) fn check_exact_3cnf(f: &CnfFormula) -> Result<(), ReduceError> {
    for (i, c) in f.clauses.iter().enumerate() {
        let vars: BTreeSet<usize> = c.iter().map(|l| l.var).collect();
        if c.len() != 3 || vars.len() != 3 {
            return Err(ReduceError::NotExact3Cnf(i));
        }
    }
    Ok(())
}

/// Incrementally glues gadget copies into one host graph.
#[derive(Clone, Debug, Default)]
pub(crate) struct Assembler {
    pub graph: Graph,
    pub free: BTreeSet<Pair>,
    pub labels: BTreeMap<String, Pair>,
    pub gadgets: Vec<GadgetExtent>,
}

impl Assembler {
    pub fn from_graph(graph: Graph) -> Self {
        Assembler { graph, ..Default::default() }
    }

    /// Adds a copy of `local`, identifying local vertex `l` with host vertex
    /// `h` for each `(l, h)` in `glue`; other vertices are fresh. Returns the
    /// local-to-host vertex map.
    pub fn place(&mut self, name: impl Into<String>, local: &Graph, glue: &[(usize, usize)]) -> Vec<usize> {
        let start = self.graph.vertex_count();
        let mut map = vec![usize::MAX; local.vertex_count()];
        for &(l, h) in glue {
            map[l] = h;
        }
        for m in map.iter_mut().filter(|m| **m == usize::MAX) {
            *m = self.graph.add_vertex();
        }
        for e in local.edges() {
            self.graph.add_edge(map[e.lo()], map[e.hi()]);
        }
        self.gadgets
            .push(GadgetExtent { name: name.into(), vertices: start..self.graph.vertex_count() });
        map
    }

    pub fn free(&mut self, p: Pair) {
        self.free.insert(p);
    }

    pub fn label(&mut self, name: impl Into<String>, p: Pair) {
        self.labels.insert(name.into(), p);
    }

    pub fn finish(self, mode: Mode) -> (SandwichInstance, Vec<GadgetExtent>) {
        let inst =
            SandwichInstance { graph: self.graph, mode, free: self.free, labels: self.labels };
        (inst, self.gadgets)
    }
}

/// Glue list identifying local pair `local` with host pair `host`, smaller
/// endpoint to smaller endpoint.
pub(crate) fn glue(local: Pair, host: Pair) -> [(usize, usize); 2] {
    [(local.lo(), host.lo()), (local.hi(), host.hi())]
}
