//! Command-line front end. [`run`] is what the `ebfs` binary calls; it
//! writes to the given streams and returns the process exit code.
//!
//! Exit codes: 0 success, 1 the engine disagreed with the reference
//! algorithm, 2 bad arguments or instance, 3 greedy violation, 4 the
//! reference algorithm hit its size cap.

pub mod format;
pub mod generate;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::engine::{self, EngineConfig, EngineError, GreedyViolationPolicy, Mode, SearchStats};
use crate::oracles::{self, OracleError};
use crate::problems::{Graph, KnapsackTheory, KruskalTheory, PathTreeTheory, PrimTheory, SpspTheory};
use crate::theory::{Cost, ProblemTheory};

pub use format::{parse_graph, parse_knapsack, render_graph, render_knapsack, FormatError};
pub use generate::{random_graph, random_knapsack, GraphSpec, KnapsackSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GREEDY: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Spsp,
    Sssp,
    #[value(alias = "mst")]
    MstPrim,
    MstKruskal,
    Knapsack,
}

impl ProblemKind {
    fn is_graph(self) -> bool {
        self != ProblemKind::Knapsack
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Greedy,
}

#[derive(Parser, Debug)]
#[command(name = "ebfs", version, about = "Breadth-first search with dominance pruning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file.
    Solve(SolveArgs),
    /// Solve and check the result against a reference algorithm.
    Compare(SolveArgs),
    /// Print raw and undominated frontier width per level.
    Stats(SolveArgs),
    /// Write a seeded random instance to stdout.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: ProblemKind,
    /// Instance file, or `-` for stdin.
    #[arg(long)]
    input: PathBuf,
    /// Start node (spsp, sssp) or root (mst-prim).
    #[arg(long, default_value_t = 0)]
    source: usize,
    /// End node, required for spsp.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// In greedy mode, finish exhaustively instead of failing on a wide level.
    #[arg(long)]
    greedy_fallback: bool,
    /// Also run the reference algorithm.
    #[arg(long)]
    compare: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Report `ms` as null so output is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    problem: ProblemKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    nodes: usize,
    /// Fraction of node pairs joined by an edge.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Exact edge count, overriding --density.
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long, default_value_t = 100)]
    max_weight: Cost,
    #[arg(long, default_value_t = 10)]
    items: usize,
    /// Knapsack capacity; defaults to half the total weight.
    #[arg(long)]
    capacity: Option<Cost>,
    #[arg(long, default_value_t = 100)]
    max_utility: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum InstanceSummary {
    Graph {
        nodes: usize,
        edges: usize,
        source: Option<usize>,
        target: Option<usize>,
    },
    Knapsack {
        items: usize,
        capacity: Cost,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub problem: ProblemKind,
    pub instance: InstanceSummary,
    pub mode: Mode,
    pub optimal_cost: Option<Cost>,
    pub optima_count: usize,
    /// Smallest optimal solution: edge ids for graph problems, item
    /// indices for knapsack.
    pub witness: Option<Vec<usize>>,
    /// Root distances in the witness tree (sssp only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<Option<Cost>>>,
    pub stats: SearchStats,
    pub oracle_cost: Option<Cost>,
    pub agree: Option<bool>,
    pub ms: Option<f64>,
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let problem = self.problem.to_possible_value().expect("no skipped variants");
        let instance = match &self.instance {
            InstanceSummary::Graph { nodes, edges, .. } => format!("{nodes} nodes, {edges} edges"),
            InstanceSummary::Knapsack { items, capacity } => {
                format!("{items} items, capacity {capacity}")
            }
        };
        let opt = |c: Option<Cost>| c.map_or("none".to_string(), |c| c.to_string());
        let mut lines = vec![
            format!("problem: {}", problem.get_name()),
            format!("instance: {instance}"),
            format!("mode: {}", if self.mode == Mode::Greedy { "greedy" } else { "exhaustive" }),
            format!("optimal cost: {}", opt(self.optimal_cost)),
            format!("optima: {}", self.optima_count),
        ];
        if let Some(w) = &self.witness {
            let ids: Vec<String> = w.iter().map(ToString::to_string).collect();
            lines.push(format!("witness: {}", ids.join(" ")));
        }
        let s = &self.stats;
        lines.push(format!(
            "levels: {}, generated: {}, duplicates: {}, merged: {}, pruned: {}, retained: {}",
            s.levels, s.generated, s.duplicates_removed, s.equivalence_merged, s.dominated_pruned, s.retained
        ));
        lines.push(format!("max undominated width: {}", s.max_undominated_width()));
        if s.greedy_fallbacks > 0 {
            lines.push(format!("greedy fallbacks: {}", s.greedy_fallbacks));
        }
        if let Some(agree) = self.agree {
            lines.push(format!("oracle cost: {}", opt(self.oracle_cost)));
            lines.push(format!("agree: {}", if agree { "yes" } else { "no" }));
        }
        if let Some(ms) = self.ms {
            lines.push(format!("time: {ms:.3} ms"));
        }
        lines.join("\n") + "\n"
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("reference algorithm: {0}")]
    Cap(OracleError),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Engine(EngineError::GreedyViolation { .. }) => EXIT_GREEDY,
            Failure::Cap(_) => EXIT_CAP,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<crate::problems::ProblemError> for Failure {
    fn from(e: crate::problems::ProblemError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(args) => solve_command(&args, args.compare, out),
        Command::Compare(args) => solve_command(&args, true, out),
        Command::Stats(args) => stats_command(&args, out),
        Command::Gen(args) => gen_command(&args, out).map(|()| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn read_input(args: &SolveArgs) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if args.input.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(&args.input).map(|t| text = t)
    };
    read.map_err(|e| Failure::Input(format!("{}: {e}", args.input.display())))?;
    Ok(text)
}

fn config(args: &SolveArgs) -> EngineConfig {
    EngineConfig {
        mode: match args.mode {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Greedy => Mode::Greedy,
        },
        greedy_violation: if args.greedy_fallback {
            GreedyViolationPolicy::FallbackExhaustive
        } else {
            GreedyViolationPolicy::Fail
        },
        threads: args.threads.map(usize::from),
        ..EngineConfig::default()
    }
}

/// Solves the instance named by `args`, optionally checking it against
/// the reference algorithm for the problem.
pub fn execute(
    problem: ProblemKind,
    input: &str,
    source: usize,
    target: Option<usize>,
    config: &EngineConfig,
    compare: bool,
    timing: bool,
) -> Result<RunReport, String> {
    run_problem(problem, input, source, target, config, compare, timing).map_err(|e| e.to_string())
}

fn run_problem(
    problem: ProblemKind,
    input: &str,
    source: usize,
    target: Option<usize>,
    config: &EngineConfig,
    compare: bool,
    timing: bool,
) -> Result<RunReport, Failure> {
    if !problem.is_graph() {
        let instance = parse_knapsack(input)?;
        let summary = InstanceSummary::Knapsack {
            items: instance.items.len(),
            capacity: instance.capacity,
        };
        let theory = KnapsackTheory::new(instance);
        let mut report = solved(&theory, problem, summary, config, timing)?;
        if compare {
            let oracle = oracles::knapsack_dp_ref(theory.instance(), oracles::DEFAULT_DP_CELL_CAP)
                .map_err(Failure::Cap)?;
            report.oracle_cost = Some(oracle);
            report.agree = Some(report.optimal_cost == Some(oracle));
        }
        return Ok(report);
    }

    let graph = parse_graph(input)?;
    let summary = |target| InstanceSummary::Graph {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        source: (problem != ProblemKind::MstKruskal).then_some(source),
        target,
    };
    let summary = summary(target.filter(|_| problem == ProblemKind::Spsp));
    match problem {
        ProblemKind::Spsp => {
            let target = target.ok_or(Failure::Input("spsp needs --target".into()))?;
            let theory = SpspTheory::new(graph.clone(), source, target)?;
            let mut report = solved(&theory, problem, summary, config, timing)?;
            if compare {
                let oracle = oracles::reachable_distances(&graph, source)[target];
                report.oracle_cost = oracle;
                report.agree = Some(report.optimal_cost == oracle);
            }
            Ok(report)
        }
        ProblemKind::Sssp => {
            let theory = PathTreeTheory::new(graph.clone(), source)?;
            let mut report = solved(&theory, problem, summary, config, timing)?;
            report.distances = report.witness.as_ref().map(|z| theory.tree_distances(z));
            if compare {
                let dist = oracles::shortest_path_ref(&graph, source).map_err(Failure::Cap)?;
                let oracle = dist.iter().sum();
                report.oracle_cost = Some(oracle);
                let per_node = report
                    .distances
                    .as_ref()
                    .is_some_and(|d| d.iter().zip(&dist).all(|(a, b)| *a == Some(*b)));
                report.agree = Some(report.optimal_cost == Some(oracle) && per_node);
            }
            Ok(report)
        }
        ProblemKind::MstPrim => {
            let theory = PrimTheory::new(graph.clone(), source)?;
            let report = solved(&theory, problem, summary, config, timing)?;
            mst_compare(report, &graph, compare)
        }
        ProblemKind::MstKruskal => {
            let theory = KruskalTheory::new(graph.clone())?;
            let report = solved(&theory, problem, summary, config, timing)?;
            mst_compare(report, &graph, compare)
        }
        ProblemKind::Knapsack => unreachable!("handled above"),
    }
}

fn mst_compare(mut report: RunReport, graph: &Graph, compare: bool) -> Result<RunReport, Failure> {
    if compare {
        let oracle = oracles::mst_ref(graph).map_err(Failure::Cap)?;
        report.oracle_cost = Some(oracle);
        report.agree = Some(report.optimal_cost == Some(oracle));
    }
    Ok(report)
}

fn solved<T: ProblemTheory<Solution = Vec<usize>>>(
    theory: &T,
    problem: ProblemKind,
    instance: InstanceSummary,
    config: &EngineConfig,
    timing: bool,
) -> Result<RunReport, Failure> {
    let start = Instant::now();
    let result = engine::solve(theory, config)?;
    let ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    Ok(RunReport {
        problem,
        instance,
        mode: config.mode,
        optimal_cost: result.optimal_cost,
        optima_count: result.optima.len(),
        witness: result.optima.into_iter().next(),
        distances: None,
        stats: result.stats,
        oracle_cost: None,
        agree: None,
        ms: timing.then_some(ms),
    })
}

fn solve_command(args: &SolveArgs, compare: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let input = read_input(args)?;
    let report = run_problem(
        args.problem,
        &input,
        args.source,
        args.target,
        &config(args),
        compare,
        !args.no_timing,
    )?;
    let text = if args.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        report.to_text()
    };
    write_out(out, &text)?;
    Ok(if report.agree == Some(false) { EXIT_DISAGREE } else { EXIT_OK })
}

#[derive(Serialize)]
struct LevelRow {
    level: usize,
    raw: usize,
    undominated: usize,
}

fn stats_command(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let input = read_input(args)?;
    let report = run_problem(args.problem, &input, args.source, args.target, &config(args), false, false)?;
    let rows: Vec<LevelRow> = report
        .stats
        .per_level_width
        .iter()
        .enumerate()
        .map(|(i, w)| LevelRow {
            level: i + 1,
            raw: w.raw,
            undominated: w.undominated,
        })
        .collect();
    let text = if args.json {
        serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
    } else {
        let mut text = String::from("level raw undominated\n");
        for r in &rows {
            text += &format!("{} {} {}\n", r.level, r.raw, r.undominated);
        }
        text
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn gen_command(args: &GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let text = if args.problem.is_graph() {
        if !(0.0..=1.0).contains(&args.density) {
            return Err(Failure::Input(format!("density {} is outside [0, 1]", args.density)));
        }
        let spec = GraphSpec {
            nodes: args.nodes,
            density: args.density,
            edges: args.edges,
            max_weight: args.max_weight,
        };
        render_graph(&random_graph(&spec, args.seed))
    } else {
        let spec = KnapsackSpec {
            items: args.items,
            capacity: args.capacity,
            max_weight: args.max_weight,
            max_utility: args.max_utility,
        };
        render_knapsack(&random_knapsack(&spec, args.seed))
    };
    write_out(out, &text)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| Failure::Input(format!("writing output: {e}")))
}
