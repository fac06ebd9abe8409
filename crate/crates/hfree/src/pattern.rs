//! Named forbidden patterns and their structural requirements.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Pair};

/// A forbidden graph H together with the data the reductions consult.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    graph: Graph,
    non_edges: Vec<Pair>,
    edges: Vec<Pair>,
    three_connected: bool,
}

/// A structural precondition a reduction places on its pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Requirement {
    ThreeConnected,
    MinNonEdges(usize),
    MinEdges(usize),
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::ThreeConnected => write!(f, "three_connected"),
            Requirement::MinNonEdges(q) => write!(f, "min_non_edges({q})"),
            Requirement::MinEdges(q) => write!(f, "min_edges({q})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("unknown pattern name `{0}`")]
    UnknownName(String),
    #[error("pattern {pattern} fails {requirement}: {detail}")]
    Unsatisfied { pattern: String, requirement: Requirement, detail: String },
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        let non_edges = graph.non_edges().collect();
        let edges = graph.edges().collect();
        let three_connected = graph.is_3_connected();
        Pattern { name: name.into(), graph, non_edges, edges, three_connected }
    }

    /// Resolves a pattern name.
    ///
    /// Accepted forms: `K<n>`, `K<n>-e`, `C<l>`, `P<l>`, `house`, `wheel<r>`,
    /// `octahedron`, and `co-<name>` for the complement of any of these.
    pub fn named(name: &str) -> Result<Self, PatternError> {
        let unknown = || PatternError::UnknownName(name.to_string());
        let num = |s: &str, min: usize| -> Result<usize, PatternError> {
            match s.parse::<usize>() {
                Ok(v) if v >= min && v <= 64 => Ok(v),
                _ => Err(unknown()),
            }
        };
        if let Some(rest) = name.strip_prefix("co-") {
            let inner = Pattern::named(rest).map_err(|_| unknown())?;
            return Ok(inner.complement());
        }
        let graph = if name == "house" {
            Graph::path(5).complement()
        } else if name == "octahedron" {
            octahedron()
        } else if let Some(r) = name.strip_prefix("wheel") {
            wheel(num(r, 3)?)
        } else if let Some(body) = name.strip_prefix('K') {
            match body.strip_suffix("-e") {
                Some(n) => {
                    let mut g = Graph::complete(num(n, 2)?);
                    g.remove_edge(0, 1);
                    g
                }
                None => Graph::complete(num(body, 2)?),
            }
        } else if let Some(l) = name.strip_prefix('C') {
            Graph::cycle(num(l, 3)?)
        } else if let Some(l) = name.strip_prefix('P') {
            Graph::path(num(l, 2)?)
        } else {
            return Err(unknown());
        };
        Ok(Pattern::new(name, graph))
    }

    /// The complement pattern, named by the usual complement where one exists.
    pub fn complement(&self) -> Pattern {
        let name = match self.name.as_str() {
            "house" => "P5".to_string(),
            "P5" => "house".to_string(),
            "C5" => "C5".to_string(),
            "P4" => "P4".to_string(),
            other => match other.strip_prefix("co-") {
                Some(inner) => inner.to_string(),
                None => format!("co-{other}"),
            },
        };
        Pattern::new(name, self.graph.complement())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Non-adjacent pairs in lexicographic order.
    pub fn non_edges(&self) -> &[Pair] {
        &self.non_edges
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Pair] {
        &self.edges
    }

    pub fn is_three_connected(&self) -> bool {
        self.three_connected
    }

    /// Checks the requirements in order and reports the first that fails.
    pub fn require(&self, requirements: &[Requirement]) -> Result<(), PatternError> {
        for &requirement in requirements {
            let detail = match requirement {
                Requirement::ThreeConnected if !self.three_connected => {
                    Some("not 3-connected".to_string())
                }
                Requirement::MinNonEdges(q) if self.non_edges.len() < q => {
                    Some(format!("needs {q}, has {}", self.non_edges.len()))
                }
                Requirement::MinEdges(q) if self.edges.len() < q => {
                    Some(format!("needs {q}, has {}", self.edges.len()))
                }
                _ => None,
            };
            if let Some(detail) = detail {
                return Err(PatternError::Unsatisfied {
                    pattern: self.name.clone(),
                    requirement,
                    detail,
                });
            }
        }
        Ok(())
    }
}

fn wheel(rim: usize) -> Graph {
    let mut g = Graph::new(rim + 1);
    for i in 0..rim {
        g.add_edge(0, i + 1);
        g.add_edge(i + 1, (i + 1) % rim + 1);
    }
    g
}

/// K_{2,2,2}: the complete graph on six vertices minus `{0,1}, {2,3}, {4,5}`.
fn octahedron() -> Graph {
    let mut g = Graph::complete(6);
    for i in [0, 2, 4] {
        g.remove_edge(i, i + 1);
    }
    g
}
