//! `diamaug`: best single shortcut for an edge-weighted tree.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use diamaug_core::decision::feasible;
use diamaug_core::generate::{embedded_tree, random_matrix, random_tree, seeded, TreeModel};
use diamaug_core::io::{parse_tree, write_coords, write_matrix, write_tree, CostSpec, LoadError};
use diamaug_core::oracle::best_shortcut_brute;
use diamaug_core::{
    check_graph_metric, decompose, induce_instance, solve_general, solve_tree, solve_tree_approx,
    CostOracle, Error, Solution, Tree,
};

use report::{Report, Row};

/// Largest tree on which the graph-metric property is verified before a
/// metric-only solver runs. Above it the declaration is trusted.
const METRIC_CHECK_LIMIT: usize = 200;

#[derive(Parser)]
#[command(name = "diamaug", version, about = "Minimize tree diameter with one shortcut")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Tree file: vertex count, then one `u v weight` line per edge.
    #[arg(long)]
    tree: PathBuf,
    /// `matrix FILE`, `coords FILE`, `const K` or `treedist`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "ARG"], required = true)]
    cost: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Find an optimal shortcut.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = SolveMode::Metric)]
        mode: SolveMode,
    },
    /// Find any shortcut reaching diameter at most LAMBDA.
    Decide {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lambda: f64,
    },
    /// Find a shortcut within a factor 1 + EPSILON of the optimum.
    Approx {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        epsilon: f64,
    },
    /// Write a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "random-tree")]
        model: TreeModel,
        #[arg(long, default_value_t = 1)]
        min_weight: u32,
        #[arg(long, default_value_t = 100)]
        max_weight: u32,
        #[arg(long, value_enum, default_value_t = CostModel::Coords)]
        cost_model: CostModel,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tree output; standard output when absent.
        #[arg(long)]
        tree_out: Option<PathBuf>,
        /// Cost output, required unless the cost model is `none`.
        #[arg(long)]
        cost_out: Option<PathBuf>,
    },
    /// Time a solver on generated instances and print CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, value_enum, default_value_t = BenchMode::Metric)]
        mode: BenchMode,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Metric,
    General,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostModel {
    /// Random points in the plane, tree edges at least as long as the segments.
    Coords,
    /// Random symmetric matrix with no metric structure.
    Matrix,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchMode {
    Metric,
    General,
    Approx,
    Brute,
}

impl BenchMode {
    fn name(self) -> &'static str {
        match self {
            BenchMode::Metric => "metric",
            BenchMode::General => "general",
            BenchMode::Approx => "approx",
            BenchMode::Brute => "brute",
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
    NotMetric(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
            Failure::NotMetric(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) | Failure::Internal(m) | Failure::NotMetric(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn load(input: &Input) -> Result<(Tree, CostOracle), Failure> {
    let text = read_file(&input.tree)?;
    let tree = parse_tree(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.tree.display())))?;
    let spec = CostSpec::parse(&input.cost).map_err(|e| Failure::Input(e.to_string()))?;
    let cost = spec.load(&tree, |p| fs::read_to_string(p))?;
    Ok((tree, cost))
}

fn require_graph_metric(tree: &Tree, cost: &CostOracle) -> Result<(), Failure> {
    if tree.vertex_count() <= METRIC_CHECK_LIMIT && !check_graph_metric(tree, cost) {
        return Err(Failure::NotMetric(
            "cost violates c(u,v) <= c(u,z) + d(z,v); use --mode general".into(),
        ));
    }
    Ok(())
}

fn check_improves(before: f64, sol: &Solution) -> Result<(), Failure> {
    if sol.diameter > before * (1.0 + 1e-12) {
        return Err(Failure::Internal(format!(
            "diameter grew from {before} to {} with shortcut ({}, {})",
            sol.diameter,
            sol.u + 1,
            sol.v + 1
        )));
    }
    Ok(())
}

fn solve(input: &Input, mode: SolveMode) -> Result<Report, Failure> {
    let (tree, cost) = load(input)?;
    let before = tree.diameter();
    let start = Instant::now();
    let mut report = Report::new();
    let sol = match mode {
        SolveMode::Metric => {
            require_graph_metric(&tree, &cost)?;
            solve_tree(&tree, &cost)?
        }
        SolveMode::General => {
            let general = solve_general(&tree, &cost)?;
            let (a, b) = general.realizing;
            report.extra(Row::Vertex("realizing_u", a));
            report.extra(Row::Vertex("realizing_v", b));
            report.extra(Row::Number("realizing_cost", general.realizing_cost));
            general.solution
        }
        SolveMode::Brute => best_shortcut_brute(&tree, &cost),
    };
    let elapsed = start.elapsed();
    check_improves(before, &sol)?;
    let name = match mode {
        SolveMode::Metric => "metric",
        SolveMode::General => "general",
        SolveMode::Brute => "brute",
    };
    Ok(report.solution(name, tree.vertex_count(), Some(&sol), before, elapsed))
}

fn decide(input: &Input, lambda: f64) -> Result<Report, Failure> {
    if !lambda.is_finite() {
        return Err(Failure::Input(format!("lambda must be finite, got {lambda}")));
    }
    let (tree, cost) = load(input)?;
    require_graph_metric(&tree, &cost)?;
    let before = tree.diameter();
    let start = Instant::now();
    let dec = decompose(&tree);
    let inst = induce_instance(&tree, &dec, &cost).map_err(Error::from)?;
    let answer = feasible(&inst, lambda).map(|(i, j)| {
        let (a, b) = (dec.path()[i], dec.path()[j]);
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Solution {
            u,
            v,
            cost: cost.cost(u, v),
            diameter: inst.eval_d(i, j),
        }
    });
    let elapsed = start.elapsed();
    if let Some(sol) = &answer {
        if sol.diameter > lambda {
            return Err(Failure::Internal(format!(
                "accepted shortcut reaches {} > lambda {lambda}",
                sol.diameter
            )));
        }
    }
    let mut report = Report::new();
    report.extra(Row::Number("lambda", lambda));
    Ok(report.solution("decide", tree.vertex_count(), answer.as_ref(), before, elapsed))
}

fn approx(input: &Input, epsilon: f64) -> Result<Report, Failure> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidEpsilon(epsilon).into());
    }
    let (tree, cost) = load(input)?;
    require_graph_metric(&tree, &cost)?;
    let before = tree.diameter();
    let start = Instant::now();
    let sol = solve_tree_approx(&tree, &cost, epsilon)?;
    let elapsed = start.elapsed();
    check_improves(before, &sol)?;
    let mut report = Report::new();
    report.extra(Row::Number("epsilon", epsilon));
    Ok(report.solution("approx", tree.vertex_count(), Some(&sol), before, elapsed))
}

#[allow(clippy::too_many_arguments)]
fn generate(
    n: usize,
    model: TreeModel,
    lo: u32,
    hi: u32,
    cost_model: CostModel,
    seed: u64,
    tree_out: Option<&Path>,
    cost_out: Option<&Path>,
) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::Input(format!("need at least 2 vertices, got {n}")));
    }
    if lo == 0 || lo > hi {
        return Err(Failure::Input(format!("invalid weight range [{lo}, {hi}]")));
    }
    if !matches!(cost_model, CostModel::None) && cost_out.is_none() {
        return Err(Failure::Input("--cost-out is required for this cost model".into()));
    }
    let mut rng = seeded(seed);
    let (tree, cost_text) = match cost_model {
        CostModel::Coords => {
            let (tree, cost) = embedded_tree(n, model, lo, hi, &mut rng);
            let points = cost.points().expect("euclidean oracle");
            (tree, Some(write_coords(&points)))
        }
        CostModel::Matrix => {
            let tree = random_tree(n, model, lo, hi, &mut rng);
            let cost = random_matrix(n, 0, 2 * hi, &mut rng);
            (tree, Some(write_matrix(n, |u, v| cost.cost(u, v))))
        }
        CostModel::None => (random_tree(n, model, lo, hi, &mut rng), None),
    };
    let tree_text = write_tree(&tree);
    match tree_out {
        Some(path) => write_file(path, &tree_text)?,
        None => print!("{tree_text}"),
    }
    if let (Some(text), Some(path)) = (cost_text, cost_out) {
        write_file(path, &text)?;
    }
    Ok(())
}

fn bench(sizes: &[usize], repeats: usize, mode: BenchMode, epsilon: f64, seed: u64) -> Result<(), Failure> {
    if repeats == 0 {
        return Err(Failure::Input("--repeats must be positive".into()));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n < 2) {
        return Err(Failure::Input(format!("sizes must be at least 2, got {n}")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidEpsilon(epsilon).into());
    }
    println!("n,mode,mean_ms");
    for &n in sizes {
        let mut rng = seeded(seed ^ n as u64);
        let (tree, cost) = match mode {
            BenchMode::General => {
                let tree = random_tree(n, TreeModel::RandomTree, 1, 100, &mut rng);
                let cost = random_matrix(n, 0, 200, &mut rng);
                (tree, cost)
            }
            _ => embedded_tree(n, TreeModel::RandomTree, 1, 100, &mut rng),
        };
        let mut total = 0.0;
        for _ in 0..repeats {
            let start = Instant::now();
            match mode {
                BenchMode::Metric => {
                    solve_tree(&tree, &cost)?;
                }
                BenchMode::General => {
                    solve_general(&tree, &cost)?;
                }
                BenchMode::Approx => {
                    solve_tree_approx(&tree, &cost, epsilon)?;
                }
                BenchMode::Brute => {
                    best_shortcut_brute(&tree, &cost);
                }
            }
            total += start.elapsed().as_secs_f64() * 1e3;
        }
        println!("{n},{},{:.3}", mode.name(), total / repeats as f64);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let report = match cli.command {
        Command::Solve { input, mode } => solve(&input, mode)?,
        Command::Decide { input, lambda } => decide(&input, lambda)?,
        Command::Approx { input, epsilon } => approx(&input, epsilon)?,
        Command::Gen {
            n,
            model,
            min_weight,
            max_weight,
            cost_model,
            seed,
            tree_out,
            cost_out,
        } => {
            return generate(
                n,
                model,
                min_weight,
                max_weight,
                cost_model,
                seed,
                tree_out.as_deref(),
                cost_out.as_deref(),
            )
        }
        Command::Bench {
            sizes,
            repeats,
            mode,
            epsilon,
            seed,
        } => return bench(&sizes, repeats, mode, epsilon, seed),
    };
    println!("{}", report.to_json());
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
