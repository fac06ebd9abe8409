//! CNF formulas: DIMACS I/O, 3-CNF normalisation and a brute-force oracle.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// A literal over a 0-based variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Lit { var: self.var, positive: !self.positive }
    }

    fn from_dimacs(v: i64) -> Self {
        let var = (v.unsigned_abs() - 1) as usize;
        Lit { var, positive: v > 0 }
    }

    fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

pub type Clause = Vec<Lit>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<Clause>,
}

/// Truth values indexed by variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, lit: Lit) -> bool {
        self.0[lit.var] == lit.positive
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: bad token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: variable {var} outside 1..={max}")]
    VariableOutOfRange { line: usize, var: u64, max: usize },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("unterminated final clause")]
    Unterminated,
    #[error("clause {clause} has {distinct} distinct variables; at most 3 allowed")]
    TooWide { clause: usize, distinct: usize },
    #[error("{vars} variables exceed the brute-force guard of {guard}")]
    GuardExceeded { vars: usize, guard: usize },
}

/// Largest variable count the brute-force oracle accepts.
pub const SAT_GUARD: usize = 24;

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Self {
        CnfFormula { variable_count, clauses }
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| a.value(l)))
    }

    /// How often each variable occurs across all clauses.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.variable_count];
        for l in self.clauses.iter().flatten() {
            occ[l.var] += 1;
        }
        occ
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Clause = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            match (parsed, header) {
                (Some(h), None) => header = Some(h),
                _ => {
                    return Err(CnfError::MalformedHeader { line, text: trimmed.to_string() })
                }
            }
            continue;
        }
        let (n, _) = header.ok_or(CnfError::MissingHeader)?;
        for token in trimmed.split_whitespace() {
            let v: i64 = token
                .parse()
                .map_err(|_| CnfError::BadToken { line, token: token.to_string() })?;
            if v == 0 {
                if current.is_empty() {
                    return Err(CnfError::EmptyClause(clauses.len()));
                }
                clauses.push(std::mem::take(&mut current));
            } else if v.unsigned_abs() as usize > n {
                return Err(CnfError::VariableOutOfRange { line, var: v.unsigned_abs(), max: n });
            } else {
                current.push(Lit::from_dimacs(v));
            }
        }
    }
    let (n, m) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        return Err(CnfError::Unterminated);
    }
    if clauses.len() != m {
        return Err(CnfError::ClauseCountMismatch { declared: m, found: clauses.len() });
    }
    Ok(CnfFormula::new(n, clauses))
}

pub fn render_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

/// Rewrites `f` so every clause has exactly three literals over distinct
/// variables.
///
/// Repeated literals collapse, tautologies are dropped, and short clauses are
/// padded with fresh variables `z` as `(C ∨ z) ∧ (C ∨ ¬z)`. Already
/// normalised formulas come back unchanged.
pub fn normalize_3cnf(f: &CnfFormula) -> Result<CnfFormula, CnfError> {
    let mut next = f.variable_count;
    let mut out = Vec::new();
    for (i, clause) in f.clauses.iter().enumerate() {
        if clause.is_empty() {
            return Err(CnfError::EmptyClause(i));
        }
        let mut seen = BTreeSet::new();
        let mut lits: Clause = Vec::new();
        for &l in clause {
            if seen.insert(l) {
                lits.push(l);
            }
        }
        if lits.iter().any(|l| seen.contains(&l.negated())) {
            continue;
        }
        if lits.len() > 3 {
            return Err(CnfError::TooWide { clause: i, distinct: lits.len() });
        }
        let mut pending = vec![lits];
        while let Some(c) = pending.pop() {
            if c.len() == 3 {
                out.push(c);
                continue;
            }
            let z = next;
            next += 1;
            let mut with_neg = c.clone();
            with_neg.push(Lit::neg(z));
            let mut with_pos = c;
            with_pos.push(Lit::pos(z));
            pending.push(with_neg);
            pending.push(with_pos);
        }
    }
    Ok(CnfFormula::new(next, out))
}

/// Repeats the clause list until every occurring variable occurs at least
/// `min_occ` times.
pub fn duplicate_for_min_occurrences(f: &CnfFormula, min_occ: usize) -> CnfFormula {
    let least = f.occurrences().into_iter().filter(|&o| o > 0).min();
    let Some(least) = least else {
        return f.clone();
    };
    let copies = min_occ.div_ceil(least).max(1);
    let clauses = (0..copies).flat_map(|_| f.clauses.iter().cloned()).collect();
    CnfFormula::new(f.variable_count, clauses)
}

/// First satisfying assignment in lexicographic order (variable 0 most
/// significant, false before true), or `None` if unsatisfiable.
pub fn sat_brute_force(f: &CnfFormula) -> Result<Option<Assignment>, CnfError> {
    let n = f.variable_count;
    if n > SAT_GUARD {
        return Err(CnfError::GuardExceeded { vars: n, guard: SAT_GUARD });
    }
    // Bit (n-1-v) holds variable v so counting upwards is lexicographic.
    let bit = |v: usize| 1u32 << (n - 1 - v);
    let masks: Vec<(u32, u32)> = f
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(p, q), l| {
                if l.positive {
                    (p | bit(l.var), q)
                } else {
                    (p, q | bit(l.var))
                }
            })
        })
        .collect();
    let total: u64 = 1 << n;
    for x in 0..total {
        let x = x as u32;
        if masks.iter().all(|&(p, q)| x & p != 0 || !x & q != 0) {
            return Ok(Some(Assignment((0..n).map(|v| x & bit(v) != 0).collect())));
        }
    }
    Ok(None)
}
