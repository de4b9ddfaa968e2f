use std::path::PathBuf;

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tswarp::bench::{run_bench, BenchConfig};
use tswarp::evaluate::MethodKind;
use tswarp::io::load_ucr;
use tswarp::TimeSeries;

use crate::error::AppResult;
use crate::output::OutDir;
use crate::params::ParamArgs;

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Dataset in UCR layout; labels are ignored.
    pub dataset: PathBuf,
    /// Series drawn from the dataset; consecutive draws form the timed pairs.
    #[arg(long, default_value_t = 20)]
    pub series: usize,
    /// Timed alignments per pair and method.
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    /// Methods to time, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "dtw,adtw,rdtw,gardtw,lardtw")]
    pub method: Vec<MethodKind>,
    /// Widths default to w_q/n = w_h/n = 0.2.
    #[command(flatten)]
    pub params: ParamArgs,
}

pub fn run(args: &BenchArgs, seed: u64, out: &OutDir) -> AppResult<()> {
    let data = load_ucr(&args.dataset)?;
    let pool: Vec<TimeSeries> = data.items().iter().map(|(s, _)| s.clone()).collect();
    let params = args
        .params
        .clone()
        .with_default_ratios(0.2, 0.2)
        .resolve(data.series_len())?;
    let cfg = BenchConfig {
        series_count: args.series,
        repeats: args.repeats,
        methods: crate::unique(&args.method),
        params,
    };
    let report = run_bench(&pool, &cfg, &mut ChaCha8Rng::seed_from_u64(seed))?;
    println!(
        "{} pairs of length {}, {} repeats",
        report.pairs, report.series_len, report.repeats
    );
    for e in &report.entries {
        let ratio = e.ratio_to_dtw.map_or_else(String::new, |r| format!("  x{r:.2}"));
        let iters = e
            .mean_iterations
            .map_or_else(String::new, |i| format!("  {i:.1} iterations"));
        println!("{:>8}  {:.3} ms{ratio}{iters}", e.method, e.mean_seconds * 1e3);
    }
    out.record("bench", &report)?;
    Ok(())
}
