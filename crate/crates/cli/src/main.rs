//! `clustermin` command-line front end.
//!
//! Exit codes: 0 success or YES, 1 a valid NO (or a failed check), 2 usage or
//! data error, 3 node budget exhausted.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clustermin::reductions::{
    clique_to_weighted_edge, cluster_to_weighted_edge, interpret_clique_answer, interpret_udg_answer, udg_to_cluster,
    DecisionAnswer, ReductionReceipt,
};
use clustermin::solvers::{solve_cluster_min, solve_udg_independent_set, solve_weighted_edge};
use clustermin::toolkit::bench::{bench_scaling, BenchFamily, BenchOptions};
use clustermin::toolkit::generate::{generate, GeneratorHeader, GeneratorKind, GeneratorSpec};
use clustermin::toolkit::io::{
    instance_to_json, read_dimacs, read_instance, read_json, write_instance, write_instance_with_header, write_json,
    SolutionDocument,
};
use clustermin::toolkit::svg::write_udg_svg;
use clustermin::verify::{check_solution_for, run_clique_harness, run_udg_harness, HarnessConfig};
use clustermin::{Algorithm, CliqueInstance, Error, Instance, ProblemKind, Solution, SolverConfig};
use serde::Serialize;

const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "clustermin",
    version,
    about = "Reductions and exact solvers for site-based cluster minimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for generators, harness and bench runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = AlgorithmArg::BranchAndBound)]
    algorithm: AlgorithmArg,

    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[arg(long = "node-budget", global = true)]
    node_budget: Option<u64>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl Common {
    fn solver(&self) -> SolverConfig {
        SolverConfig {
            algorithm: self.algorithm.into(),
            node_budget: self.node_budget,
            parallel_workers: self.workers,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Exhaustive,
    BranchAndBound,
    Greedy,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Exhaustive => Algorithm::Exhaustive,
            AlgorithmArg::BranchAndBound => Algorithm::BranchAndBound,
            AlgorithmArg::Greedy => Algorithm::Greedy,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum HarnessProblem {
    Udg,
    Clique,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance, or convert a DIMACS graph into a clique instance.
    Gen(GenArgs),
    /// Reduce an instance: clique -> weighted_edge, udg_is -> cluster_min, cluster_min -> weighted_edge.
    Reduce {
        input: PathBuf,
        /// Where to write the reduction receipt as JSON.
        #[arg(long)]
        receipt: Option<PathBuf>,
    },
    /// Solve an instance; decision kinds exit 0 on YES and 1 on NO.
    Solve {
        input: PathBuf,
        /// Answer udg_is through udg_to_cluster instead of the native search.
        #[arg(long)]
        via_reduction: bool,
    },
    /// Re-check a solution document against its instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Randomized comparison of the brute-force oracle and the reduction path.
    Harness {
        #[arg(long, value_enum, default_value_t = HarnessProblem::Udg)]
        problem: HarnessProblem,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long = "max-size", default_value_t = 10)]
        max_size: usize,
    },
    /// Wall time and node counts of the cluster solver over a size sweep.
    Bench {
        /// Comma-separated site counts.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        instances: usize,
        /// Particles per instance; half the sites by default.
        #[arg(long)]
        particles: Option<usize>,
        #[arg(long, default_value = "random_udg")]
        family: String,
    },
    /// Draw a udg_is instance as SVG.
    Render { input: PathBuf },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value = "random_points")]
    kind: String,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long = "target-size", default_value_t = 3)]
    target_size: usize,
    #[arg(long, default_value_t = 4)]
    resolution: u64,
    /// Squared conflict distance in lattice units (default resolution^2).
    #[arg(long)]
    threshold: Option<u128>,
    #[arg(long = "box-extent")]
    box_extent: Option<u64>,
    #[arg(long = "grid-spacing", default_value_t = 8)]
    grid_spacing: u64,
    #[arg(long = "edge-probability", default_value_t = 0.5)]
    edge_probability: f64,
    #[arg(long = "site-scaling-exponent")]
    site_scaling_exponent: Option<u32>,
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    /// Read the graph from a DIMACS edge list instead of generating one.
    #[arg(long = "from-dimacs")]
    from_dimacs: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted { .. } => EXIT_BUDGET,
            _ => EXIT_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

// a closed pipe (e.g. `| head`) is not an error worth a panic
fn stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit_text(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: EXIT_ERROR,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            stdout(text);
            Ok(())
        }
    }
}

fn emit<T: Serialize>(common: &Common, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    if let Some(path) = &common.out {
        write_json(value, path)?;
        if common.format == Format::Text {
            stdout(&text());
        }
        return Ok(());
    }
    match common.format {
        Format::Json => stdout(&format!(
            "{}\n",
            serde_json::to_string_pretty(value).expect("serializable")
        )),
        Format::Text => stdout(&text()),
    }
    Ok(())
}

fn describe(s: &Solution) -> String {
    format!(
        "selected {:?}\nobjective {}\nproven_optimal {}\nnodes {}\npair_evaluations {}\n",
        s.selected, s.objective, s.proven_optimal, s.nodes_explored, s.pair_evaluations
    )
}

fn cmd_gen(common: &Common, args: &GenArgs) -> CmdResult {
    if let Some(path) = &args.from_dimacs {
        let graph = read_dimacs(path)?;
        let inst = Instance::Clique(CliqueInstance::new(graph, args.target_size)?);
        write_or_print_instance(common, &inst, None)?;
        return Ok(0);
    }
    let spec = GeneratorSpec {
        kind: args.kind.parse::<GeneratorKind>()?,
        seed: common.seed,
        count: args.count,
        target_size: args.target_size,
        resolution: args.resolution,
        conflict_threshold: args.threshold,
        box_extent: args.box_extent,
        grid_spacing: args.grid_spacing,
        edge_probability: args.edge_probability,
        site_scaling_exponent: args.site_scaling_exponent,
        density: args.density,
    };
    let inst = generate(&spec)?;
    write_or_print_instance(common, &inst, Some(&GeneratorHeader::new(&spec)))?;
    Ok(0)
}

fn write_or_print_instance(common: &Common, inst: &Instance, header: Option<&GeneratorHeader>) -> Result<(), Failure> {
    match &common.out {
        Some(path) => write_instance_with_header(inst, header, path)?,
        None => stdout(&format!("{}\n", instance_to_json(inst, header))),
    }
    Ok(())
}

fn cmd_reduce(common: &Common, input: &Path, receipt_path: &Option<PathBuf>) -> CmdResult {
    let inst = read_instance(input)?;
    let (target, receipt): (Instance, Option<ReductionReceipt>) = match &inst {
        Instance::Clique(c) => {
            let (w, r) = clique_to_weighted_edge(c.graph(), c.clique_size())?;
            (Instance::WeightedEdge(w), Some(r))
        }
        Instance::UdgIs(u) => {
            let (c, r) = udg_to_cluster(u)?;
            (Instance::ClusterMin(c), Some(r))
        }
        Instance::ClusterMin(c) => (Instance::WeightedEdge(cluster_to_weighted_edge(c)?), None),
        Instance::WeightedEdge(_) => {
            return Err(Failure {
                code: EXIT_ERROR,
                message: "weighted_edge instances have no outgoing reduction".into(),
            })
        }
    };
    match &common.out {
        Some(path) => write_instance(&target, path)?,
        None => stdout(&format!("{}\n", instance_to_json(&target, None))),
    }
    if let Some(r) = receipt {
        match receipt_path {
            Some(path) => write_json(&r, path)?,
            None => eprintln!(
                "{} -> {}: threshold {}, {} construction steps",
                r.source_kind, r.target_kind, r.decision_threshold, r.construction_steps
            ),
        }
    }
    Ok(0)
}

fn cmd_solve(common: &Common, input: &Path, via_reduction: bool) -> CmdResult {
    let inst = read_instance(input)?;
    let config = common.solver();
    let (solution, answer, receipt): (Solution, Option<DecisionAnswer>, Option<ReductionReceipt>) = match &inst {
        Instance::WeightedEdge(w) => (solve_weighted_edge(w, &config)?, None, None),
        Instance::ClusterMin(c) => (solve_cluster_min(c, &config)?, None, None),
        Instance::UdgIs(u) if via_reduction => {
            let (cluster, receipt) = udg_to_cluster(u)?;
            let s = solve_cluster_min(&cluster, &config)?;
            let a = interpret_udg_answer(&s, &receipt)?;
            (s, Some(a), Some(receipt))
        }
        Instance::UdgIs(u) => {
            let s = solve_udg_independent_set(u, &config)?;
            let yes = s.objective.is_zero();
            if !yes && !s.proven_optimal {
                return Err(Failure {
                    code: EXIT_ERROR,
                    message: "heuristic search found no independent set; a NO needs an exact algorithm".into(),
                });
            }
            let a = DecisionAnswer {
                yes,
                certificate: yes.then(|| s.selected.clone()),
            };
            (s, Some(a), None)
        }
        Instance::Clique(c) => {
            let (w, receipt) = clique_to_weighted_edge(c.graph(), c.clique_size())?;
            let s = solve_weighted_edge(&w, &config)?;
            let a = interpret_clique_answer(&s, &receipt)?;
            (s, Some(a), Some(receipt))
        }
    };
    // clique solutions are computed on the reduced instance; report them
    // against the kind whose objective they carry
    let kind = match (&inst, &receipt) {
        (_, Some(r)) => r.target_kind,
        (i, None) => i.kind(),
    };
    let doc = SolutionDocument {
        kind,
        solution,
        answer,
        receipt,
    };
    emit(common, &doc, || {
        let mut t = describe(&doc.solution);
        if let Some(a) = &doc.answer {
            t.push_str(if a.yes { "answer YES\n" } else { "answer NO\n" });
        }
        t
    })?;
    Ok(match &doc.answer {
        Some(a) if !a.yes => EXIT_NO,
        _ => 0,
    })
}

fn cmd_verify(common: &Common, instance: &Path, solution: &Path) -> CmdResult {
    let mut inst = read_instance(instance)?;
    let doc: SolutionDocument = read_json(solution)?;
    // a document produced through a reduction is checked on the reduced instance
    if doc.kind != inst.kind() {
        inst = match (&inst, doc.kind) {
            (Instance::Clique(c), ProblemKind::WeightedEdge) => {
                Instance::WeightedEdge(clique_to_weighted_edge(c.graph(), c.clique_size())?.0)
            }
            (Instance::UdgIs(u), ProblemKind::ClusterMin) => Instance::ClusterMin(udg_to_cluster(u)?.0),
            _ => inst,
        };
    }
    let ok = check_solution_for(doc.kind, &inst, &doc.solution)?;
    emit(common, &serde_json::json!({ "valid": ok }), || format!("valid {ok}\n"))?;
    Ok(if ok { 0 } else { EXIT_NO })
}

fn cmd_harness(common: &Common, problem: HarnessProblem, trials: u64, max_size: usize) -> CmdResult {
    let config = HarnessConfig {
        trials,
        max_size,
        seed: common.seed,
        workers: common.workers,
        node_budget: common.node_budget,
    };
    let report = match problem {
        HarnessProblem::Udg => run_udg_harness(&config)?,
        HarnessProblem::Clique => run_clique_harness(&config)?,
    };
    emit(common, &report, || {
        let mut t = format!(
            "{} harness: {} trials, {} agreements ({} YES), {} disagreements, {} inconclusive, {:.2?}\n",
            report.problem,
            report.trials,
            report.agreements,
            report.yes_count,
            report.disagreements.len(),
            report.inconclusive.len(),
            report.elapsed
        );
        for d in &report.disagreements {
            t.push_str(&format!(
                "  trial {} seed {}: {} oracle={} reduction={}\n",
                d.trial, d.seed, d.summary, d.oracle_yes, d.reduction_yes
            ));
        }
        t
    })?;
    Ok(if !report.disagreements.is_empty() {
        EXIT_NO
    } else if !report.inconclusive.is_empty() {
        EXIT_BUDGET
    } else {
        0
    })
}

fn cmd_bench(common: &Common, sizes: &[usize], instances: usize, particles: Option<usize>, family: &str) -> CmdResult {
    let options = BenchOptions {
        family: family.parse::<BenchFamily>()?,
        instances_per_size: instances,
        particles,
    };
    let report = bench_scaling(sizes, &common.solver(), common.seed, &options)?;
    emit(common, &report, || report.to_text())?;
    Ok(0)
}

fn cmd_render(common: &Common, input: &Path) -> CmdResult {
    let Instance::UdgIs(u) = read_instance(input)? else {
        return Err(Failure {
            code: EXIT_ERROR,
            message: "render needs a udg_is instance".into(),
        });
    };
    match &common.out {
        Some(path) => write_udg_svg(&u, path)?,
        None => emit_text(&None, &clustermin::toolkit::svg::render_udg_svg(&u))?,
    }
    Ok(0)
}

fn run(cli: &Cli) -> CmdResult {
    let common = &cli.common;
    match &cli.command {
        Command::Gen(args) => cmd_gen(common, args),
        Command::Reduce { input, receipt } => cmd_reduce(common, input, receipt),
        Command::Solve { input, via_reduction } => cmd_solve(common, input, *via_reduction),
        Command::Verify { instance, solution } => cmd_verify(common, instance, solution),
        Command::Harness {
            problem,
            trials,
            max_size,
        } => cmd_harness(common, *problem, *trials, *max_size),
        Command::Bench {
            sizes,
            instances,
            particles,
            family,
        } => cmd_bench(common, sizes, *instances, *particles, family),
        Command::Render { input } => cmd_render(common, input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
