use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;
use tswarp::evaluate::{one_nn, tune_params, MethodKind};
use tswarp::io::{load_ucr, write_error_table, ErrorTable};

use crate::compare::{compare, emit, Comparison};
use crate::error::{AppError, AppResult};
use crate::output::OutDir;
use crate::params::ParamArgs;

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Train/test file pairs in UCR layout: `TRAIN TEST [TRAIN TEST ...]`.
    #[arg(required = true, num_args = 2..)]
    pub datasets: Vec<PathBuf>,
    /// Methods to evaluate, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "dtw")]
    pub method: Vec<MethodKind>,
    /// Explicit widths fix that axis of the tuning grid; others are tuned.
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Serialize)]
struct MethodResult {
    method: MethodKind,
    w_q: usize,
    w_h: usize,
    cv_error: f64,
    test_error: f64,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct DatasetResult {
    name: String,
    train: String,
    test: String,
    series_len: usize,
    train_items: usize,
    test_items: usize,
    results: Vec<MethodResult>,
}

#[derive(Serialize)]
struct Report {
    seed: u64,
    datasets: Vec<DatasetResult>,
    comparison: Option<Comparison>,
}

/// `Coffee_TRAIN.tsv` -> `Coffee`.
fn dataset_name(path: &Path) -> String {
    let stem = path
        .file_stem()
        .map_or_else(|| "dataset".into(), |s| s.to_string_lossy().into_owned());
    for suffix in ["_TRAIN", "_train", "-train", ".train"] {
        if let Some(base) = stem.strip_suffix(suffix) {
            if !base.is_empty() {
                return base.to_string();
            }
        }
    }
    stem
}

pub fn run(args: &EvaluateArgs, seed: u64, out: &OutDir) -> AppResult<()> {
    if !args.datasets.len().is_multiple_of(2) {
        return Err(AppError::Usage("datasets come in TRAIN TEST pairs".into()));
    }
    let methods = crate::unique(&args.method);
    let mut datasets = Vec::new();
    for pair in args.datasets.chunks_exact(2) {
        let train = load_ucr(&pair[0])?;
        let test = load_ucr(&pair[1])?;
        let n = train.series_len();
        let mut name = dataset_name(&pair[0]);
        if datasets.iter().any(|d: &DatasetResult| d.name == name) {
            name = format!("{name}_{}", datasets.len() + 1);
        }
        let mut results = Vec::new();
        for &method in &methods {
            let (base, grid) = args.params.tuning(n)?;
            let tuned = tune_params(&train, method, &grid, &base, seed)?;
            let report = one_nn(&train, &test, method, &tuned.apply(&base))?;
            let mut csv = String::from("test_index,label,predicted,neighbor,measure\n");
            for d in &report.decisions {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    d.test_index, d.label, d.predicted, d.neighbor, d.measure
                );
            }
            out.write(&format!("decisions_{name}_{method}.csv"), &csv)?;
            println!(
                "{name} {method}: test error {:.4} (cv {:.4}, w_q {}, w_h {})",
                report.error_rate, tuned.cv_error, tuned.w_q, tuned.w_h
            );
            results.push(MethodResult {
                method,
                w_q: tuned.w_q,
                w_h: tuned.w_h,
                cv_error: tuned.cv_error,
                test_error: report.error_rate,
                warnings: tuned.warnings.iter().map(ToString::to_string).collect(),
            });
        }
        datasets.push(DatasetResult {
            name,
            train: pair[0].display().to_string(),
            test: pair[1].display().to_string(),
            series_len: n,
            train_items: train.len(),
            test_items: test.len(),
            results,
        });
    }

    let table = ErrorTable {
        methods: methods.iter().map(|m| m.name().to_string()).collect(),
        datasets: datasets.iter().map(|d| d.name.clone()).collect(),
        errors: (0..methods.len())
            .map(|k| datasets.iter().map(|d| d.results[k].test_error).collect())
            .collect(),
    };
    out.write("errors.csv", &write_error_table(&table))?;
    let comparison = if methods.len() > 1 {
        let c = compare(&table, tswarp::evaluate::CRITICAL_DIFFERENCE)?;
        emit(&table, &c, out)?;
        Some(c)
    } else {
        None
    };
    out.record(
        "report",
        &Report {
            seed,
            datasets,
            comparison,
        },
    )?;
    Ok(())
}
