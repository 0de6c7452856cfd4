//! Batch front-end for the solver: reads a problem file, solves it, prints a
//! result document.
//!
//! Exit codes: 0 feasible, 1 infeasible, 2 invalid input, 3 search budget
//! exhausted (a partial document is still printed).

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use swfri::solver::{solve, SearchLimits, SolveError, SolveOptions, SolveResult};
use swfri::system::Problem;

#[derive(Parser)]
#[command(
    name = "swfri",
    version,
    about = "Exact solver for two-sided max-T fuzzy relational inequality systems \
             under the Sugeno-Weber t-norm family",
    after_help = "The input file is a JSON document with entries \"lambda\" (number), \
                  \"D\" and \"b2\" (the lower system), optionally \"A\" and \"b1\" \
                  (the upper system; omit both for a pure lower system) and an ignored \
                  \"comment\". All grades and thresholds must lie in [0, 1]."
)]
struct Cli {
    /// Problem file to solve
    input: PathBuf,

    /// Emit the full minimal-solution set alongside the optimal ones
    #[arg(long, conflicts_with = "optimal_only")]
    all_minimal: bool,

    /// Emit only the solutions attaining the optimum (the default)
    #[arg(long)]
    optimal_only: bool,

    /// Absolute tolerance for feasibility and candidate tests
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Stop after expanding this many search nodes
    #[arg(long)]
    max_nodes: Option<u64>,

    /// Stop after this many milliseconds of search
    #[arg(long)]
    time_budget_ms: Option<u64>,

    /// Append search statistics (includes a wall-clock field, so two otherwise
    /// identical runs may differ)
    #[arg(long)]
    stats: bool,

    /// Worker threads for the search: 1 forces the sequential path, higher
    /// values use a dedicated pool of that size
    #[arg(long, env = "SWFRI_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// One JSON document on stdout
    Json,
    /// Line-oriented text, one solution per row, objective first
    Table,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    lambda: f64,
    #[serde(rename = "A")]
    a: Option<Vec<Vec<f64>>>,
    b1: Option<Vec<f64>>,
    #[serde(rename = "D")]
    d: Vec<Vec<f64>>,
    b2: Vec<f64>,
    #[serde(default)]
    #[allow(dead_code)]
    comment: Option<String>,
}

fn main() -> ExitCode {
    ExitCode::from(run(&Cli::parse()))
}

fn run(cli: &Cli) -> u8 {
    let text = match fs::read_to_string(&cli.input) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("swfri: cannot read {}: {err}", cli.input.display());
            return 2;
        }
    };
    let file: ProblemFile = match serde_json::from_str(&text) {
        Ok(file) => file,
        Err(err) => {
            eprintln!("swfri: {}: {err}", cli.input.display());
            return 2;
        }
    };
    let (a, b1) = match (file.a, file.b1) {
        (Some(a), Some(b1)) => (a, b1),
        (None, None) => (Vec::new(), Vec::new()),
        (Some(_), None) => {
            eprintln!(
                "swfri: {}: \"A\" is present but \"b1\" is missing",
                cli.input.display()
            );
            return 2;
        }
        (None, Some(_)) => {
            eprintln!(
                "swfri: {}: \"b1\" is present but \"A\" is missing",
                cli.input.display()
            );
            return 2;
        }
    };
    let problem = match Problem::new(file.lambda, a, b1, file.d, file.b2) {
        Ok(problem) => problem,
        Err(err) => {
            eprintln!("swfri: {}: {err}", cli.input.display());
            return 2;
        }
    };

    let options = SolveOptions {
        tolerance: cli.tolerance,
        all_minimal: cli.all_minimal,
        witnesses: false,
        limits: SearchLimits {
            max_solutions: None,
            max_nodes: cli.max_nodes,
            time_budget: cli.time_budget_ms.map(Duration::from_millis),
        },
        threads: cli.threads,
    };

    match solve(&problem, &options) {
        Ok(result) => {
            emit(cli, &result);
            if result.feasible {
                0
            } else {
                1
            }
        }
        Err(SolveError::BudgetExceeded { partial }) => {
            emit(cli, &partial);
            eprintln!(
                "swfri: search budget exhausted; the document holds the reduced set found so far"
            );
            3
        }
        Err(err) => {
            eprintln!("swfri: {err}");
            2
        }
    }
}

#[derive(Serialize)]
struct ResultDocument<'a> {
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    x_max: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    z_star: Option<f64>,
    optimal_solutions: Vec<&'a [f64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_solutions: Option<Vec<&'a [f64]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<StatsDocument>,
}

#[derive(Serialize)]
struct StatsDocument {
    nodes_expanded: u64,
    solutions_recorded: u64,
    assignment_count: String,
    elapsed_ms: u64,
}

/// Serializes floats as `{:.16e}` so every grade survives a round trip
/// regardless of magnitude.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn emit(cli: &Cli, result: &SolveResult) {
    let document = ResultDocument {
        feasible: result.feasible,
        reason: result.reason.map(|r| r.as_str()),
        x_max: &result.report.x_max,
        z_star: result.z_star,
        optimal_solutions: result
            .optimal_solutions
            .iter()
            .map(|s| s.x.as_slice())
            .collect(),
        minimal_solutions: result
            .minimal_solutions
            .as_ref()
            .map(|set| set.iter().map(|s| s.x.as_slice()).collect()),
        stats: cli.stats.then(|| StatsDocument {
            nodes_expanded: result.stats.nodes_expanded,
            solutions_recorded: result.stats.solutions_recorded,
            assignment_count: result.stats.assignment_count.to_string(),
            elapsed_ms: result.stats.elapsed.as_millis() as u64,
        }),
    };
    match cli.format {
        Format::Json => print_json(&document),
        Format::Table => print_table(result, &document),
    }
}

fn print_json(document: &ResultDocument) {
    let mut buffer = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut buffer, SciFormatter);
    document
        .serialize(&mut serializer)
        .expect("a result document serializes");
    buffer.push(b'\n');
    io::stdout().write_all(&buffer).expect("writing to stdout");
}

fn row_line(objective: f64, x: &[f64]) -> String {
    let mut line = format!("{objective:.16e}");
    for value in x {
        write!(line, " {value:.16e}").unwrap();
    }
    line
}

fn print_table(result: &SolveResult, document: &ResultDocument) {
    println!("feasible {}", document.feasible);
    if let Some(reason) = document.reason {
        println!("reason {reason}");
    }
    let x_max: Vec<String> = document.x_max.iter().map(|v| format!("{v:.16e}")).collect();
    println!("x_max {}", x_max.join(" "));
    if let Some(z) = document.z_star {
        println!("z_star {z:.16e}");
    }
    println!("optimal_solutions {}", result.optimal_solutions.len());
    for solution in &result.optimal_solutions {
        println!("{}", row_line(solution.objective, &solution.x));
    }
    if let Some(minimal) = &result.minimal_solutions {
        println!("minimal_solutions {}", minimal.len());
        for solution in minimal {
            println!("{}", row_line(solution.objective, &solution.x));
        }
    }
    if let Some(stats) = &document.stats {
        println!(
            "stats nodes_expanded={} solutions_recorded={} assignment_count={} elapsed_ms={}",
            stats.nodes_expanded,
            stats.solutions_recorded,
            stats.assignment_count,
            stats.elapsed_ms
        );
    }
}
