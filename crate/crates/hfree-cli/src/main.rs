//! `hfree-cli`: reductions, lifts, solving and verification from the shell.
//!
//! Exit codes: 0 success or pass, 1 failed check, 2 usage or input error,
//! 3 an oracle gave up.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hfree::cnf::{parse_dimacs, CnfFormula};
use hfree::corpus::{random_exact_3cnf, random_graph, rng};
use hfree::io::{parse_hfi, parse_minones, render_hfi, render_minones, HfiFile};
use hfree::minhorn::{reduce_knexdel_to_minones, reduce_minones_to_quarantined};
use hfree::reduce::general::{complement_instance, protected_pairs};
use hfree::reduce::{reduce_c4comp_to_house_comp, reduce_c4del_to_house_del, Poly};
use hfree::solver::{Mode, SandwichInstance, Solver, DEFAULT_NODE_LIMIT};
use hfree::verify::{
    reduce_for_target, verify_duality, verify_gadgets, verify_gap, verify_opt_scaling, verify_sat_equivalence,
    Lift, SatTarget, Verdict, VerificationReport,
};
use hfree::{Pattern, SolveError};

#[derive(Parser)]
#[command(name = "hfree-cli", version, about = "H-free edge modification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Io {
    /// Input file; standard input if omitted.
    #[arg(short = 'i', long = "input", global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output if omitted.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Forbidden pattern, e.g. `wheel4`, `C4`, `K5-e`.
    #[arg(long, global = true)]
    pattern: Option<String>,
    /// Seed for generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search node limit of the exact solver.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run a reduction.
    Reduce {
        kind: ReduceKind,
        /// Polynomial `a,d,c` for `house-del`.
        #[arg(long, default_value = "1,1,1")]
        poly: Poly,
        /// Clique size for the MinOnes reductions.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Uniform group size for `minones2graph`.
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Turn a sandwich instance into a budgeted instance.
    Lift {
        #[arg(long, default_value = "1,1,1")]
        poly: Poly,
        /// `general-del`, `general-comp`, `c4-del`, `c5-del`, `c4-comp`,
        /// `house-comp` or `house-del`.
        #[arg(long)]
        family: String,
        #[command(flatten)]
        io: Io,
    },
    /// Complement a budgeted instance.
    Complement {
        #[command(flatten)]
        io: Io,
    },
    /// Solve an instance exactly.
    Solve {
        /// Upper bound on the number of modifications.
        #[arg(long)]
        budget: Option<usize>,
        /// Decide the sandwich problem instead of minimising.
        #[arg(long)]
        existence: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Check a reduction or a gadget against the oracles.
    Verify {
        check: VerifyKind,
        /// Reduction target for `equivalence`.
        #[arg(long, default_value = "general-del")]
        target: String,
        /// Lift for `gap`.
        #[arg(long, default_value = "general-del")]
        lift: String,
        #[arg(long, default_value = "1,1,1")]
        poly: Poly,
        /// Budget for `duality` when the file has none.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Inspect patterns.
    Pattern {
        #[command(subcommand)]
        action: PatternAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Sat2del,
    Sat2comp,
    C4del,
    C5del,
    C4comp,
    HouseComp,
    HouseDel,
    Minones2graph,
    Graph2minones,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Equivalence,
    Gap,
    Duality,
    Scaling,
    Gadgets,
}

#[derive(Subcommand)]
enum PatternAction {
    Info { name: String },
}

/// Failure that maps to a specific exit code.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct GaveUp(SolveError);

impl Io {
    fn read(&self) -> Result<String> {
        match &self.input {
            Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
            None => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => Ok(io::stdout().write_all(text.as_bytes())?),
        }
    }

    fn pattern(&self) -> Result<Option<Pattern>> {
        self.pattern.as_deref().map(Pattern::named).transpose().map_err(Into::into)
    }

    fn solver(&self) -> Solver {
        Solver::with_node_limit(self.node_limit)
    }

    fn hfi(&self) -> Result<HfiFile> {
        let mut file = parse_hfi(&self.read()?)?;
        if let Some(p) = self.pattern()? {
            file.pattern = Some(p);
        }
        Ok(file)
    }

    fn cnf(&self) -> Result<CnfFormula> {
        Ok(parse_dimacs(&self.read()?)?)
    }
}

fn require_pattern(file: &HfiFile) -> Result<Pattern> {
    file.pattern.clone().ok_or_else(|| anyhow!("instance has no pattern; pass --pattern"))
}

fn reduce(kind: ReduceKind, poly: Poly, n: usize, delta: Option<usize>, io: &Io) -> Result<()> {
    let sat = |target: SatTarget| -> Result<String> {
        let (_, red) = reduce_for_target(&io.cnf()?, target, io.pattern()?.as_ref())?;
        Ok(render_hfi(&HfiFile::from_sandwich(&red.instance, Some(&red.pattern))))
    };
    let text = match kind {
        ReduceKind::Sat2del => sat(SatTarget::GeneralDel)?,
        ReduceKind::Sat2comp => sat(SatTarget::GeneralComp)?,
        ReduceKind::C4del => sat(SatTarget::C4Del)?,
        ReduceKind::C5del => sat(SatTarget::C5Del)?,
        ReduceKind::C4comp => sat(SatTarget::C4Comp)?,
        ReduceKind::HouseComp => {
            let out = reduce_c4comp_to_house_comp(&io.hfi()?.sandwich())?;
            render_hfi(&HfiFile::from_sandwich(&out, Some(&Pattern::named("house")?)))
        }
        ReduceKind::HouseDel => render_hfi(&HfiFile::from_budgeted(&reduce_c4del_to_house_del(
            &io.hfi()?.sandwich(),
            poly,
        )?)),
        ReduceKind::Minones2graph => {
            let q = reduce_minones_to_quarantined(&parse_minones(&io.read()?)?, n, delta)?;
            let inst = SandwichInstance {
                free: q.graph.edges().filter(|p| !q.quarantine.contains(p)).collect(),
                graph: q.graph.clone(),
                mode: Mode::Deletion,
                labels: Default::default(),
            };
            render_hfi(&HfiFile::from_sandwich(&inst, Some(&q.pattern())))
        }
        ReduceKind::Graph2minones => {
            let (inst, _) = reduce_knexdel_to_minones(&io.hfi()?.graph, n)?;
            render_minones(&inst)
        }
    };
    io.write(&text)
}

fn lift(family: &str, poly: Poly, io: &Io) -> Result<()> {
    let lift: Lift = family.parse()?;
    let file = io.hfi()?;
    let out = lift.apply(&file.sandwich(), file.pattern.as_ref(), poly)?;
    io.write(&render_hfi(&HfiFile::from_budgeted(&out)))
}

fn solve(budget: Option<usize>, existence: bool, io: &Io) -> Result<()> {
    let file = io.hfi()?;
    let pattern = require_pattern(&file)?;
    let solver = io.solver();
    let (found, header) = if existence {
        let inst = file.sandwich();
        match solver.sandwich(&inst, &pattern).map_err(GaveUp)? {
            Some(s) => {
                let k = s.len();
                (Some(s), format!("s YES\ncost {k}\n"))
            }
            None => (None, "s NO\n".to_string()),
        }
    } else {
        // Free pairs, if any, are the only modifiable ones.
        let quarantine: BTreeSet<_> = if file.free.is_empty() {
            BTreeSet::new()
        } else {
            protected_pairs(&file.sandwich()).into_iter().collect()
        };
        let cap = budget.or(file.budget);
        match solver.minimum(&file.graph, &pattern, file.mode, &quarantine, cap).map_err(GaveUp)? {
            Some((s, cost)) => (Some(s), format!("s YES\ncost {cost}\n")),
            None => (None, "s NO\n".to_string()),
        }
    };
    let mut text = header;
    for p in found.iter().flat_map(|s| s.iter()) {
        text.push_str(&format!("modify {} {}\n", p.lo(), p.hi()));
    }
    io.write(&text)
}

fn report_all(reports: &[VerificationReport], io: &Io) -> Result<ExitCode> {
    let mut text = String::new();
    for r in reports {
        text.push_str(&format!("{r}\n"));
    }
    let failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    let skipped = reports.iter().filter(|r| r.verdict == Verdict::Skipped).count();
    text.push_str(&format!(
        "{} checks: {} passed, {failed} failed, {skipped} skipped\n",
        reports.len(),
        reports.len() - failed - skipped
    ));
    io.write(&text)?;
    Ok(if failed > 0 {
        ExitCode::from(1)
    } else if skipped > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    check: VerifyKind,
    target: &str,
    lift: &str,
    poly: Poly,
    budget: Option<usize>,
    n: usize,
    delta: Option<usize>,
    io: &Io,
) -> Result<ExitCode> {
    let solver = io.solver();
    let report = match check {
        VerifyKind::Gadgets => return report_all(&verify_gadgets(), io),
        VerifyKind::Equivalence => {
            let target: SatTarget = target.parse()?;
            let f = if io.input.is_some() {
                io.cnf()?
            } else {
                random_exact_3cnf(&mut rng(io.seed), 3, 2)
            };
            verify_sat_equivalence(&f, target, io.pattern()?.as_ref(), &solver)?
        }
        VerifyKind::Gap => {
            let lift: Lift = lift.parse()?;
            let file = io.hfi()?;
            verify_gap(&file.sandwich(), lift, file.pattern.as_ref(), poly, &solver)?
        }
        VerifyKind::Duality => {
            let (graph, pattern, k) = if io.input.is_some() {
                let file = io.hfi()?;
                let k = budget.or(file.budget).ok_or_else(|| anyhow!("duality needs a budget"))?;
                (file.graph.clone(), require_pattern(&file)?, k)
            } else {
                let pattern = io.pattern()?.ok_or_else(|| anyhow!("duality needs --pattern"))?;
                (random_graph(&mut rng(io.seed), 6, 0.5), pattern, budget.unwrap_or(2))
            };
            if graph.vertex_count() > 7 {
                bail!("duality is checked on graphs with at most 7 vertices");
            }
            verify_duality(&graph, &pattern, k, &solver)
        }
        VerifyKind::Scaling => verify_opt_scaling(&parse_minones(&io.read()?)?, n, delta, &solver)?,
    };
    report_all(&[report], io)
}

fn pattern_info(name: &str) -> Result<()> {
    let p = Pattern::named(name)?;
    let pairs = |ps: &[hfree::Pair]| ps.iter().map(|p| format!("{}-{}", p.lo(), p.hi())).collect::<Vec<_>>().join(" ");
    println!("name {}", p.name());
    println!("vertices {}", p.order());
    println!("edges {}", pairs(p.edges()));
    println!("non-edges {}", pairs(p.non_edges()));
    println!("degrees {:?}", p.graph().degree_sequence());
    println!("3-connected {}", p.is_three_connected());
    println!("complement {}", p.complement().name());
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Reduce { kind, poly, n, delta, io } => reduce(kind, poly, n, delta, &io)?,
        Command::Lift { poly, family, io } => lift(&family, poly, &io)?,
        Command::Complement { io } => {
            let mut file = io.hfi()?;
            if file.pattern.is_none() {
                bail!("instance has no pattern; pass --pattern");
            }
            file.budget.get_or_insert(0);
            let dual = complement_instance(&file.budgeted()?);
            io.write(&render_hfi(&HfiFile::from_budgeted(&dual)))?;
        }
        Command::Solve { budget, existence, io } => solve(budget, existence, &io)?,
        Command::Verify { check, target, lift, poly, budget, n, delta, io } => {
            return verify(check, &target, &lift, poly, budget, n, delta, &io)
        }
        Command::Pattern { action: PatternAction::Info { name } } => pattern_info(&name)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<GaveUp>().is_some() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
