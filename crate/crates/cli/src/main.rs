//! `tswarp` command line: align, simulate, score, evaluate, compare and bench.

mod align;
mod bench;
mod compare;
mod error;
mod evaluate;
mod output;
mod params;
mod score;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tswarp::evaluate::MethodKind;

use crate::error::{AppError, AppResult};
use crate::output::{Format, OutDir};

#[derive(Debug, Parser)]
#[command(name = "tswarp", version, about = "Elastic alignment of time series")]
struct Cli {
    /// Seed for every random draw (folds, simulations, benchmark sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Rendering of summary and report records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory receiving the output files.
    #[arg(long = "out-dir", global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Align two series and write the path, match segments and a summary.
    Align(align::AlignArgs),
    /// Generate aligned pairs with known ground truth.
    Simulate(simulate::SimulateArgs),
    /// Score a produced path against simulator ground truth.
    Score(score::ScoreArgs),
    /// Tune by 2-fold cross-validation and report 1-NN test error.
    Evaluate(evaluate::EvaluateArgs),
    /// Win-loss ratios and average ranks from an error table.
    Compare(compare::CompareArgs),
    /// Time the methods on pairs drawn from a dataset.
    Bench(bench::BenchArgs),
}

/// Methods in first-seen order, without repeats.
pub(crate) fn unique(methods: &[MethodKind]) -> Vec<MethodKind> {
    let mut out = Vec::new();
    for &m in methods {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

fn run(cli: Cli) -> AppResult<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(AppError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| tswarp::Error::Invariant(e.to_string()))?;
    }
    let out = OutDir::create(&cli.out_dir, cli.format)?;
    match &cli.command {
        Command::Align(args) => align::run(args, &out),
        Command::Simulate(args) => simulate::run(args, cli.seed, &out),
        Command::Score(args) => score::run(args, &out),
        Command::Evaluate(args) => evaluate::run(args, cli.seed, &out),
        Command::Compare(args) => compare::run(args, &out),
        Command::Bench(args) => bench::run(args, cli.seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
        // the panic message is already on stderr
        Err(_) => ExitCode::from(3),
    }
}
