//! Text formats: `hfi` instance files and MinOnes files.
//!
//! An `hfi` file looks like
//!
//! ```text
//! hfi 1
//! mode deletion
//! pattern C4
//! vertices 4
//! edge 0 1 free
//! edge 1 2
//! budget 1
//! label top 0 1
//! ```
//!
//! In deletion mode `edge u v free` marks a deletable edge; in completion
//! mode `nonedge u v free` marks a fillable non-edge. Lines starting with `c`
//! are comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Pair};
use crate::minhorn::{Constraint, ConstraintKind, MinHornError, MinOnesInstance};
use crate::pattern::{Pattern, PatternError};
use crate::solver::{BudgetedInstance, Mode, SandwichInstance};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: expected `{expected}`")]
    Expected { line: usize, expected: &'static str },
    #[error("line {line}: cannot parse `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range")]
    VertexOutOfRange { line: usize, vertex: usize },
    #[error("line {line}: self-loop on {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: pair {pair} listed twice")]
    Duplicate { line: usize, pair: Pair },
    #[error("line {line}: `{keyword}` is not allowed in {mode} mode")]
    WrongMode { line: usize, keyword: &'static str, mode: Mode },
    #[error("line {line}: label {name} refers to {pair}, which cannot be modified")]
    BadLabel { line: usize, name: String, pair: Pair },
    #[error("line {line}: {source}")]
    Pattern { line: usize, source: PatternError },
    #[error("line {line}: {source}")]
    Constraint { line: usize, source: MinHornError },
    #[error("file has no pattern line")]
    MissingPattern,
    #[error("file has no budget line")]
    MissingBudget,
}

/// Contents of an `hfi` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HfiFile {
    pub mode: Mode,
    pub pattern: Option<Pattern>,
    pub graph: Graph,
    pub free: BTreeSet<Pair>,
    pub budget: Option<usize>,
    pub labels: BTreeMap<String, Pair>,
}

impl HfiFile {
    pub fn from_sandwich(inst: &SandwichInstance, pattern: Option<&Pattern>) -> Self {
        HfiFile {
            mode: inst.mode,
            pattern: pattern.cloned(),
            graph: inst.graph.clone(),
            free: inst.free.clone(),
            budget: None,
            labels: inst.labels.clone(),
        }
    }

    pub fn from_budgeted(inst: &BudgetedInstance) -> Self {
        HfiFile {
            mode: inst.mode,
            pattern: Some(inst.pattern.clone()),
            graph: inst.graph.clone(),
            free: BTreeSet::new(),
            budget: Some(inst.budget),
            labels: BTreeMap::new(),
        }
    }

    pub fn sandwich(&self) -> SandwichInstance {
        SandwichInstance {
            graph: self.graph.clone(),
            mode: self.mode,
            free: self.free.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn budgeted(&self) -> Result<BudgetedInstance, FormatError> {
        Ok(BudgetedInstance {
            graph: self.graph.clone(),
            mode: self.mode,
            pattern: self.pattern.clone().ok_or(FormatError::MissingPattern)?,
            budget: self.budget.ok_or(FormatError::MissingBudget)?,
        })
    }
}

fn tokens(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn number(line: usize, s: &str) -> Result<usize, FormatError> {
    s.parse().map_err(|_| FormatError::Syntax { line, text: s.to_string() })
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && *l != "c" && !l.starts_with("c "))
}

pub fn parse_hfi(text: &str) -> Result<HfiFile, FormatError> {
    let mut lines = content_lines(text);
    let mut next = |expected: &'static str| {
        lines.next().ok_or(FormatError::Expected { line: 0, expected })
    };
    let (line, l) = next("hfi 1")?;
    if tokens(l) != ["hfi", "1"] {
        return Err(FormatError::Expected { line, expected: "hfi 1" });
    }
    let (line, l) = next("mode deletion|completion")?;
    let mode = match tokens(l).as_slice() {
        ["mode", "deletion"] => Mode::Deletion,
        ["mode", "completion"] => Mode::Completion,
        _ => return Err(FormatError::Expected { line, expected: "mode deletion|completion" }),
    };
    let (mut line, mut l) = next("vertices <N>")?;
    let mut pattern = None;
    if let ["pattern", name] = tokens(l).as_slice() {
        pattern = Some(Pattern::named(name).map_err(|source| FormatError::Pattern { line, source })?);
        (line, l) = next("vertices <N>")?;
    }
    let n = match tokens(l).as_slice() {
        ["vertices", n] => number(line, n)?,
        _ => return Err(FormatError::Expected { line, expected: "vertices <N>" }),
    };
    let mut file = HfiFile {
        mode,
        pattern,
        graph: Graph::new(n),
        free: BTreeSet::new(),
        budget: None,
        labels: BTreeMap::new(),
    };
    let mut listed = BTreeSet::new();
    let mut labels = Vec::new();
    for (line, l) in lines {
        let t = tokens(l);
        let pair = |a: &str, b: &str| -> Result<Pair, FormatError> {
            let (u, v) = (number(line, a)?, number(line, b)?);
            if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
                return Err(FormatError::VertexOutOfRange { line, vertex });
            }
            if u == v {
                return Err(FormatError::SelfLoop { line, vertex: u });
            }
            Ok(Pair::new(u, v))
        };
        match t.as_slice() {
            ["edge", a, b, rest @ ..] if rest.is_empty() || rest == ["free"] => {
                let p = pair(a, b)?;
                if !listed.insert(p) {
                    return Err(FormatError::Duplicate { line, pair: p });
                }
                file.graph.add_edge(p.lo(), p.hi());
                if !rest.is_empty() {
                    if mode != Mode::Deletion {
                        return Err(FormatError::WrongMode { line, keyword: "edge free", mode });
                    }
                    file.free.insert(p);
                }
            }
            ["nonedge", a, b, "free"] => {
                let p = pair(a, b)?;
                if !listed.insert(p) {
                    return Err(FormatError::Duplicate { line, pair: p });
                }
                if mode != Mode::Completion {
                    return Err(FormatError::WrongMode { line, keyword: "nonedge", mode });
                }
                file.free.insert(p);
            }
            ["budget", k] => file.budget = Some(number(line, k)?),
            ["label", name, a, b] => labels.push((line, name.to_string(), pair(a, b)?)),
            _ => return Err(FormatError::Syntax { line, text: l.to_string() }),
        }
    }
    for (line, name, p) in labels {
        let valid = match mode {
            Mode::Deletion => file.graph.has_pair(p),
            Mode::Completion => file.free.contains(&p),
        };
        if !valid {
            return Err(FormatError::BadLabel { line, name, pair: p });
        }
        file.labels.insert(name, p);
    }
    Ok(file)
}

pub fn render_hfi(file: &HfiFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hfi 1");
    let _ = writeln!(out, "mode {}", file.mode);
    if let Some(p) = &file.pattern {
        let _ = writeln!(out, "pattern {}", p.name());
    }
    let _ = writeln!(out, "vertices {}", file.graph.vertex_count());
    let mut pairs: Vec<(Pair, &str)> = file.graph.edges().map(|p| (p, "edge")).collect();
    if file.mode == Mode::Completion {
        pairs.extend(file.free.iter().map(|&p| (p, "nonedge")));
    }
    pairs.sort();
    for (p, kind) in pairs {
        let free = if file.free.contains(&p) { " free" } else { "" };
        let _ = writeln!(out, "{kind} {} {}{free}", p.lo(), p.hi());
    }
    if let Some(k) = file.budget {
        let _ = writeln!(out, "budget {k}");
    }
    for (name, p) in &file.labels {
        let _ = writeln!(out, "label {name} {} {}", p.lo(), p.hi());
    }
    out
}

pub fn parse_minones(text: &str) -> Result<MinOnesInstance, FormatError> {
    let mut lines = content_lines(text);
    let (line, l) = lines.next().ok_or(FormatError::Expected { line: 0, expected: "minones 1" })?;
    if tokens(l) != ["minones", "1"] {
        return Err(FormatError::Expected { line, expected: "minones 1" });
    }
    let (line, l) = lines.next().ok_or(FormatError::Expected { line: 0, expected: "nvars <n>" })?;
    let nvars = match tokens(l).as_slice() {
        ["nvars", n] => number(line, n)?,
        _ => return Err(FormatError::Expected { line, expected: "nvars <n>" }),
    };
    let mut constraints = Vec::new();
    for (line, l) in lines {
        let t = tokens(l);
        let nums = |s: &[&str]| s.iter().map(|x| number(line, x)).collect::<Result<Vec<_>, _>>();
        let (kind, args) = match t.as_slice() {
            ["f1", rest @ ..] => (ConstraintKind::F1, nums(rest)?),
            ["f2", rest @ ..] => (ConstraintKind::F2, nums(rest)?),
            ["fn", n, rest @ ..] => (ConstraintKind::Fn(number(line, n)?), nums(rest)?),
            ["gn", n, rest @ ..] => (ConstraintKind::Gn(number(line, n)?), nums(rest)?),
            _ => return Err(FormatError::Syntax { line, text: l.to_string() }),
        };
        if let ConstraintKind::Fn(n) | ConstraintKind::Gn(n) = kind {
            if n < 5 {
                return Err(FormatError::Constraint { line, source: MinHornError::SmallClique(n) });
            }
        }
        let c = Constraint::new(kind, args).map_err(|source| FormatError::Constraint { line, source })?;
        if let Some(&var) = c.args.iter().find(|&&v| v >= nvars) {
            return Err(FormatError::Constraint {
                line,
                source: MinHornError::VariableOutOfRange { var, count: nvars },
            });
        }
        constraints.push(c);
    }
    Ok(MinOnesInstance { variable_count: nvars, constraints })
}

pub fn render_minones(inst: &MinOnesInstance) -> String {
    let mut out = format!("minones 1\nnvars {}\n", inst.variable_count);
    for c in &inst.constraints {
        let args: Vec<String> = c.args.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{} {}", c.kind, args.join(" "));
    }
    out
}
