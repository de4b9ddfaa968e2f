use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde::Serialize;
use tswarp::evaluate::{align_with, MethodKind};
use tswarp::io::{load_series, write_pairs};

use crate::error::AppResult;
use crate::output::OutDir;
use crate::params::{describe, ParamArgs, ResolvedParams};

#[derive(Debug, Args)]
pub struct AlignArgs {
    /// Series `s`: values separated by commas, tabs, spaces or newlines.
    pub s: PathBuf,
    /// Series `t`.
    pub t: PathBuf,
    #[arg(long, default_value = "dtw")]
    pub method: MethodKind,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Serialize)]
struct Summary {
    method: MethodKind,
    n: usize,
    m: usize,
    params: ResolvedParams,
    measure: f64,
    matches: usize,
    iterations: Option<usize>,
    converged: Option<bool>,
    c: Option<f64>,
    e: Option<f64>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct Timing {
    wall_seconds: f64,
}

pub fn run(args: &AlignArgs, out: &OutDir) -> AppResult<()> {
    let s = load_series(&args.s)?;
    let t = load_series(&args.t)?;
    let params = args.params.resolve(s.len())?;

    let start = Instant::now();
    let result = align_with(args.method, &params, &s, &t)?;
    let wall_seconds = start.elapsed().as_secs_f64();

    out.write("path.csv", &write_pairs(result.path.pairs()))?;
    let mut segments = String::from("a,s_a,b,t_b\n");
    for (a, b) in result.path.iter() {
        let _ = writeln!(segments, "{a},{},{b},{}", s.at(a), t.at(b));
    }
    out.write("segments.csv", &segments)?;
    let summary = Summary {
        method: args.method,
        n: s.len(),
        m: t.len(),
        params: describe(args.method, &params),
        measure: result.measure,
        matches: result.path.len(),
        iterations: result.iterations,
        converged: result.converged,
        c: result.params.map(|p| p.c),
        e: result.params.map(|p| p.e),
        warnings: result.warnings.iter().map(ToString::to_string).collect(),
    };
    out.record("summary", &summary)?;
    out.record("timing", &Timing { wall_seconds })?;

    println!(
        "{}: measure {} over {} matches",
        args.method,
        result.measure,
        result.path.len()
    );
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}
