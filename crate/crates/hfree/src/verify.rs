//! Checks that tie the reductions to the brute-force oracles, each producing
//! a [`VerificationReport`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cnf::{
    duplicate_for_min_occurrences, normalize_3cnf, render_dimacs, sat_brute_force, CnfError, CnfFormula, SAT_GUARD,
};
use crate::graph::{Graph, Pair};
use crate::io::{render_hfi, render_minones, HfiFile};
use crate::minhorn::{minones_brute_force, reduce_minones_to_quarantined, MinHornError, MinOnesInstance, MINONES_GUARD};
use crate::pattern::{Pattern, PatternError};
use crate::reduce::specific::{
    c4_comp_clause_gadget, c4_comp_variable_gadget, c4_del_clause_gadget, c4_del_variable_gadget,
    c5_del_clause_gadget, c5_del_variable_gadget, check_clause_gadget, check_variable_gadget,
};
use crate::reduce::{
    complement_instance, lift_sandwich_comp, lift_sandwich_del, lift_specific, reduce_3sat_to_sandwich_c4_comp,
    reduce_3sat_to_sandwich_c4_del, reduce_3sat_to_sandwich_c5_del, reduce_3sat_to_sandwich_comp,
    reduce_3sat_to_sandwich_del, reduce_c4comp_to_house_comp, Family, Poly, ReduceError, SatReduction,
};
use crate::solver::{apply, enumerate_solutions, BudgetedInstance, Mode, SandwichInstance, SolveError, Solver};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    /// Short SHA-256 digest of the checked instance's canonical text.
    pub digest: String,
    pub verdict: Verdict,
    pub details: String,
}

impl VerificationReport {
    fn new(check: impl Into<String>, digest: String, verdict: Verdict, details: impl Into<String>) -> Self {
        VerificationReport { check: check.into(), digest, verdict, details: details.into() }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RESULT {} {} digest={} {}", self.verdict, self.check, self.digest, self.details)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    MinHorn(#[from] MinHornError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("{0} needs a pattern")]
    MissingPattern(String),
    #[error("unknown target `{0}`")]
    UnknownTarget(String),
}

pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Which 3-SAT reduction to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SatTarget {
    GeneralDel,
    GeneralComp,
    C4Del,
    C5Del,
    C4Comp,
    HouseCompViaC4,
}

impl SatTarget {
    pub const ALL: [SatTarget; 6] = [
        SatTarget::GeneralDel,
        SatTarget::GeneralComp,
        SatTarget::C4Del,
        SatTarget::C5Del,
        SatTarget::C4Comp,
        SatTarget::HouseCompViaC4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SatTarget::GeneralDel => "general-del",
            SatTarget::GeneralComp => "general-comp",
            SatTarget::C4Del => "c4-del",
            SatTarget::C5Del => "c5-del",
            SatTarget::C4Comp => "c4-comp",
            SatTarget::HouseCompViaC4 => "house-comp-via-c4",
        }
    }
}

impl fmt::Display for SatTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SatTarget {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SatTarget::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| VerifyError::UnknownTarget(s.into()))
    }
}

/// Normalises `f` and runs the reduction for `target`. Returns the formula
/// the reduction actually encodes (normalised, and repeated for the C4
/// completion targets) together with the reduction.
pub fn reduce_for_target(
    f: &CnfFormula,
    target: SatTarget,
    pattern: Option<&Pattern>,
) -> Result<(CnfFormula, SatReduction), VerifyError> {
    let f = normalize_3cnf(f)?;
    let need = || pattern.ok_or_else(|| VerifyError::MissingPattern(target.to_string()));
    Ok(match target {
        SatTarget::GeneralDel => {
            let red = reduce_3sat_to_sandwich_del(&f, need()?)?;
            (f, red)
        }
        SatTarget::GeneralComp => {
            let red = reduce_3sat_to_sandwich_comp(&f, need()?)?;
            (f, red)
        }
        SatTarget::C4Del => {
            let red = reduce_3sat_to_sandwich_c4_del(&f)?;
            (f, red)
        }
        SatTarget::C5Del => {
            let red = reduce_3sat_to_sandwich_c5_del(&f)?;
            (f, red)
        }
        SatTarget::C4Comp | SatTarget::HouseCompViaC4 => {
            let f = duplicate_for_min_occurrences(&f, 2);
            let mut red = reduce_3sat_to_sandwich_c4_comp(&f)?;
            if target == SatTarget::HouseCompViaC4 {
                red.instance = reduce_c4comp_to_house_comp(&red.instance)?;
                red.pattern = Pattern::named("house")?;
            }
            (f, red)
        }
    })
}

fn skipped_by(e: SolveError) -> String {
    format!("oracle gave up: {e}")
}

/// Checks that `f` is satisfiable iff the reduced sandwich instance has a
/// solution, and that a found solution decodes to a satisfying assignment.
pub fn verify_sat_equivalence(
    f: &CnfFormula,
    target: SatTarget,
    pattern: Option<&Pattern>,
    solver: &Solver,
) -> Result<VerificationReport, VerifyError> {
    let check = format!("equivalence/{target}");
    let (formula, red) = reduce_for_target(f, target, pattern)?;
    let d = digest(&render_dimacs(&formula));
    if formula.variable_count > SAT_GUARD {
        let why = format!("{} variables exceed the guard {SAT_GUARD}", formula.variable_count);
        return Ok(VerificationReport::new(check, d, Verdict::Skipped, why));
    }
    let sat = sat_brute_force(&formula)?.is_some();
    let sol = match solver.sandwich(&red.instance, &red.pattern) {
        Ok(s) => s,
        Err(e) => return Ok(VerificationReport::new(check, d, Verdict::Skipped, skipped_by(e))),
    };
    let answer = |b: bool| if b { "YES" } else { "NO" };
    let mut details = format!(
        "sat={} sandwich={} vertices={} free={}",
        answer(sat),
        answer(sol.is_some()),
        red.instance.graph.vertex_count(),
        red.instance.free.len()
    );
    let mut verdict = if sat == sol.is_some() { Verdict::Pass } else { Verdict::Fail };
    if let Some(s) = &sol {
        let decoded = red.trace.decode(s);
        if !formula.is_satisfied_by(&decoded) {
            verdict = Verdict::Fail;
            details.push_str(" decoded-assignment-falsifies-formula");
        }
        if verdict == Verdict::Fail {
            let pairs: Vec<String> = s.iter().map(|p| p.to_string()).collect();
            details.push_str(&format!(" witness={}", pairs.join(",")));
        }
    }
    Ok(VerificationReport::new(check, d, verdict, details))
}

/// A sandwich-to-budgeted lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    GeneralDel,
    GeneralComp,
    Specific(Family),
}

impl Lift {
    pub fn mode(self) -> Mode {
        match self {
            Lift::GeneralDel => Mode::Deletion,
            Lift::GeneralComp => Mode::Completion,
            Lift::Specific(f) => f.mode(),
        }
    }

    /// Pattern the sandwich instance is solved against.
    pub fn source_pattern(self, pattern: Option<&Pattern>) -> Result<Pattern, VerifyError> {
        match self {
            Lift::Specific(f) => Ok(f.source_pattern()),
            _ => pattern.cloned().ok_or_else(|| VerifyError::MissingPattern(self.to_string())),
        }
    }

    pub fn apply(self, inst: &SandwichInstance, pattern: Option<&Pattern>, p: Poly) -> Result<BudgetedInstance, VerifyError> {
        Ok(match self {
            Lift::GeneralDel => lift_sandwich_del(inst, &self.source_pattern(pattern)?, p)?,
            Lift::GeneralComp => lift_sandwich_comp(inst, &self.source_pattern(pattern)?, p)?,
            Lift::Specific(f) => lift_specific(inst, f, p)?,
        })
    }
}

impl fmt::Display for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lift::GeneralDel => f.write_str("general-del"),
            Lift::GeneralComp => f.write_str("general-comp"),
            Lift::Specific(family) => family.fmt(f),
        }
    }
}

impl FromStr for Lift {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general-del" => Ok(Lift::GeneralDel),
            "general-comp" => Ok(Lift::GeneralComp),
            other => other.parse().map(Lift::Specific).map_err(|_| VerifyError::UnknownTarget(s.into())),
        }
    }
}

/// Checks the gap of a lift on one sandwich instance: a YES instance lifts to
/// one solvable within `k` modifications, a NO instance to one with no
/// solution of size at most `p(k)`.
pub fn verify_gap(
    inst: &SandwichInstance,
    lift: Lift,
    pattern: Option<&Pattern>,
    p: Poly,
    solver: &Solver,
) -> Result<VerificationReport, VerifyError> {
    let check = format!("gap/{lift}");
    let source = lift.source_pattern(pattern)?;
    let d = digest(&render_hfi(&HfiFile::from_sandwich(inst, Some(&source))));
    let lifted = lift.apply(inst, pattern, p)?;
    let k = inst.free.len();
    let pk = p.eval(k)?;
    let yes = match solver.sandwich(inst, &source) {
        Ok(s) => s.is_some(),
        Err(e) => return Ok(VerificationReport::new(check, d, Verdict::Skipped, skipped_by(e))),
    };
    let cap = if yes { k } else { pk };
    let best = match solver.minimum(&lifted.graph, &lifted.pattern, lifted.mode, &BTreeSet::new(), Some(cap)) {
        Ok(b) => b,
        Err(e) => return Ok(VerificationReport::new(check, d, Verdict::Skipped, skipped_by(e))),
    };
    let size = format!("k={k} p(k)={pk} lifted-vertices={}", lifted.graph.vertex_count());
    let (verdict, details) = match (yes, best) {
        (true, Some((_, cost))) => (Verdict::Pass, format!("sandwich=YES lifted-cost={cost} {size}")),
        (true, None) => (Verdict::Fail, format!("sandwich=YES but no lifted solution within k {size}")),
        (false, None) => (Verdict::Pass, format!("sandwich=NO no-lifted-solution-within-p(k) {size}")),
        (false, Some((s, cost))) => {
            let pairs: Vec<String> = s.iter().map(|p| p.to_string()).collect();
            (Verdict::Fail, format!("sandwich=NO but lifted cost {cost} {size} witness={}", pairs.join(",")))
        }
    };
    Ok(VerificationReport::new(check, d, verdict, details))
}

/// Checks that deleting at most `k` edges from `g` to avoid `pattern` is
/// possible iff adding at most `k` edges to the complement to avoid the
/// complement pattern is.
pub fn verify_duality(g: &Graph, pattern: &Pattern, k: usize, solver: &Solver) -> VerificationReport {
    let inst = BudgetedInstance { graph: g.clone(), mode: Mode::Deletion, pattern: pattern.clone(), budget: k };
    let check = format!("duality/{}", pattern.name());
    let d = digest(&render_hfi(&HfiFile::from_budgeted(&inst)));
    let dual = complement_instance(&inst);
    let none = BTreeSet::new();
    let solve = |b: &BudgetedInstance| solver.minimum(&b.graph, &b.pattern, b.mode, &none, Some(b.budget));
    match (solve(&inst), solve(&dual)) {
        (Ok(a), Ok(b)) => {
            let cost = |r: &Option<(_, usize)>| r.as_ref().map_or("none".to_string(), |(_, c)| c.to_string());
            let verdict = if a.is_some() == b.is_some() { Verdict::Pass } else { Verdict::Fail };
            let details = format!("k={k} deletion-cost={} completion-cost={}", cost(&a), cost(&b));
            VerificationReport::new(check, d, verdict, details)
        }
        (Err(e), _) | (_, Err(e)) => VerificationReport::new(check, d, Verdict::Skipped, skipped_by(e)),
    }
}

/// Checks that the quarantined graph built from `inst` has optimum exactly
/// `delta` times the MinOnes optimum, with both absent together.
pub fn verify_opt_scaling(
    inst: &MinOnesInstance,
    n: usize,
    delta: Option<usize>,
    solver: &Solver,
) -> Result<VerificationReport, VerifyError> {
    let check = "scaling";
    let d = digest(&format!("{}n={n} delta={delta:?}", render_minones(inst)));
    if inst.variable_count > MINONES_GUARD {
        let why = format!("{} variables exceed the guard {MINONES_GUARD}", inst.variable_count);
        return Ok(VerificationReport::new(check, d, Verdict::Skipped, why));
    }
    let q = reduce_minones_to_quarantined(inst, n, delta)?;
    let delta = q.groups.group_size;
    let ones = minones_brute_force(inst)?;
    let graph = match solver.minimum(&q.graph, &q.pattern(), Mode::Deletion, &q.quarantine, None) {
        Ok(r) => r,
        Err(e) => return Ok(VerificationReport::new(check, d, Verdict::Skipped, skipped_by(e))),
    };
    let show = |v: Option<usize>| v.map_or("none".to_string(), |c| c.to_string());
    let details = format!(
        "delta={delta} minones={} graph-optimum={} vertices={}",
        show(ones.as_ref().map(|o| o.1)),
        show(graph.as_ref().map(|g| g.1)),
        q.graph.vertex_count()
    );
    let agree = match (&ones, &graph) {
        (Some((_, k)), Some((sol, cost))) => {
            *cost == delta * k
                && q.groups.assignment_for(sol).is_ok_and(|a| inst.is_satisfied_by(&a))
        }
        (None, None) => true,
        _ => false,
    };
    Ok(VerificationReport::new(check, d, if agree { Verdict::Pass } else { Verdict::Fail }, details))
}

/// Exhaustive contract checks of every shipped gadget.
pub fn verify_gadgets() -> Vec<VerificationReport> {
    let c4 = Pattern::named("C4").expect("built-in pattern");
    let c5 = Pattern::named("C5").expect("built-in pattern");
    let report = |name: &str, graph: &Graph, result: Result<(), ReduceError>| {
        let d = digest(&format!("{graph:?}"));
        match result {
            Ok(()) => VerificationReport::new(format!("gadget/{name}"), d, Verdict::Pass, "contract holds"),
            Err(e) => VerificationReport::new(format!("gadget/{name}"), d, Verdict::Fail, e.to_string()),
        }
    };
    let mut out = Vec::new();
    let v = c4_del_variable_gadget();
    out.push(report("c4-del-variable", &v.graph, check_variable_gadget("c4-del variable", &v, &c4, Mode::Deletion)));
    let c = c4_del_clause_gadget();
    out.push(report("c4-del-clause", &c.graph, check_clause_gadget("c4-del clause", &c, &c4, Mode::Deletion)));
    let v = c5_del_variable_gadget();
    out.push(report("c5-del-variable", &v.graph, check_variable_gadget("c5-del variable", &v, &c5, Mode::Deletion)));
    let c = c5_del_clause_gadget();
    out.push(report("c5-del-clause", &c.graph, check_clause_gadget("c5-del clause", &c, &c5, Mode::Deletion)));
    let c = c4_comp_clause_gadget();
    out.push(report("c4-comp-clause", &c.graph, check_clause_gadget("c4-comp clause", &c, &c4, Mode::Completion)));
    let (v, ladder) = c4_comp_variable_gadget(2);
    let ladder_check = check_variable_gadget("c4-comp ladder", &v, &c4, Mode::Completion).and_then(|()| {
        let sols = enumerate_solutions(&v.instance(Mode::Completion), &c4)
            .map_err(|e| ReduceError::GadgetContract { gadget: "c4-comp ladder", detail: e.to_string() })?;
        let lean = |shift: usize| -> BTreeSet<Pair> {
            (0..ladder.len).map(|i| Pair::new(ladder.t(i + shift), ladder.b(i + 1 - shift))).collect()
        };
        let expected = [lean(0), lean(1)];
        if sols.iter().all(|s| expected.contains(&s.0)) {
            Ok(())
        } else {
            Err(ReduceError::GadgetContract { gadget: "c4-comp ladder", detail: "diagonals do not lean uniformly".into() })
        }
    });
    out.push(report("c4-comp-ladder", &v.graph, ladder_check));
    out
}

/// Checks a solution against a sandwich instance: only free pairs are
/// modified and the result avoids the pattern.
pub fn is_valid_solution(inst: &SandwichInstance, pattern: &Pattern, solution: &crate::solver::ModificationSet) -> bool {
    solution.iter().all(|p| inst.free.contains(&p))
        && apply(&inst.graph, inst.mode, solution)
            .is_ok_and(|g| crate::iso::is_h_free(&g, pattern.graph()))
}
