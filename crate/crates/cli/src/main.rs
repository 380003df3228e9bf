//! `altpath`: batch computations and verification sweeps.
//!
//! Every run prints one JSON report on stdout and a short summary on stderr.
//! Exit codes: 0 ok, 2 unreadable input, 3 violated precondition, 4 a checked
//! property failed.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use altpath_core::verify::Suite;
use altpath_core::Execution;
use clap::{Parser, Subcommand};

use commands::{Method, SweepArgs};
use report::{CliError, CliResult, ErrorReport, RunReport};

/// Raises the size guards of `invert` and `sweep`. Verification may be slow
/// beyond the defaults.
const MAX_ORDER_ENV: &str = "ALTPATH_MAX_ORDER";

#[derive(Parser)]
#[command(name = "altpath", version, about = "Inverses of triangular matrices via alternating paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invert a lower triangular matrix document.
    Invert {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Paths)]
        method: Method,
        /// Read the entries in this ring: rational, gf2, block or block:<d>.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Path matrix of a weighted tree for the matching in the document,
    /// with the outer-inverse check.
    PathMatrix { file: PathBuf },
    /// Find the unique perfect matching by peeling degree-one vertices.
    Peel {
        file: PathBuf,
        /// Also count perfect matchings by enumeration and compare.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Corona test and pattern preservation of the inverse.
    CoronaCheck { file: PathBuf },
    /// List the family of inverse graphs of trees on 2k vertices.
    FkGen {
        #[arg(long)]
        k: usize,
    },
    /// Graph of the inverse of a tree with a perfect matching.
    TreeInverse { file: PathBuf },
    /// Run a property suite on generated instances.
    Sweep {
        #[arg(long, value_parser = parse_suite, required_unless_present = "replay")]
        suite: Option<Suite>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances, or weightings per tree for the tree suites.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        ring: Option<String>,
        /// Re-run an instance document or the first failure of a report.
        #[arg(long, conflicts_with = "suite")]
        replay: Option<PathBuf>,
        /// Run instances one after another on the calling thread.
        #[arg(long)]
        sequential: bool,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: altpath_core::Error| e.to_string())
}

fn max_order_override() -> CliResult<Option<usize>> {
    match std::env::var(MAX_ORDER_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{MAX_ORDER_ENV} must be a nonnegative integer, got \"{v}\""))),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Invert { .. } => "invert",
        Command::PathMatrix { .. } => "path-matrix",
        Command::Peel { .. } => "peel",
        Command::CoronaCheck { .. } => "corona-check",
        Command::FkGen { .. } => "fk-gen",
        Command::TreeInverse { .. } => "tree-inverse",
        Command::Sweep { .. } => "sweep",
    }
}

fn run(command: &Command) -> CliResult<RunReport> {
    let max_order = max_order_override()?;
    match command {
        Command::Invert { file, method, ring } => commands::invert(file, *method, ring.as_deref(), max_order),
        Command::PathMatrix { file } => commands::path_matrix_cmd(file),
        Command::Peel { file, exhaustive } => commands::peel(file, *exhaustive),
        Command::CoronaCheck { file } => commands::corona_check(file),
        Command::FkGen { k } => commands::fk_gen(*k),
        Command::TreeInverse { file } => commands::tree_inverse(file),
        Command::Sweep { suite, max_n, seed, count, ring, replay, sequential } => commands::sweep(&SweepArgs {
            suite: *suite,
            max_n: *max_n,
            seed: *seed,
            count: *count,
            ring: ring.as_deref(),
            replay: replay.as_deref(),
            size_limit: max_order,
            execution: if *sequential { Execution::Sequential } else { Execution::Parallel },
        }),
    }
}

/// A closed pipe on stdout is not worth a panic.
fn print_report(report: &RunReport) {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli.command);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(mut report) => {
            report.elapsed_ms = elapsed_ms;
            print_report(&report);
            let failed: Vec<_> = report.checks.iter().filter(|c| c["passed"] != true).collect();
            eprintln!(
                "{}: {}; {} of {} checks passed ({elapsed_ms} ms)",
                report.command,
                report.instance,
                report.checks.len() - failed.len(),
                report.checks.len()
            );
            for c in &failed {
                match c.get("detail").and_then(|d| d.as_str()) {
                    Some(d) => eprintln!("  FAIL {}: {d}", c["name"].as_str().unwrap_or("?")),
                    None => eprintln!("  FAIL {}", c["name"].as_str().unwrap_or("?")),
                }
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            let mut report = RunReport::new(command_name(&cli.command), 0);
            if let Command::Sweep { seed, .. } = &cli.command {
                report.seed = *seed;
            }
            report.elapsed_ms = elapsed_ms;
            report.error = Some(ErrorReport { kind: e.kind(), message: e.to_string() });
            print_report(&report);
            eprintln!("{}: {} error: {e}", report.command, e.kind());
            e.exit_code()
        }
    }
}
