use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use tswarp::evaluate::{mc_score, mg_score};
use tswarp::io::{parse_mask, parse_pairs, parse_path, read_text};
use tswarp::simulate::TrueAlignment;

use crate::error::{AppError, AppResult};
use crate::output::OutDir;

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Produced path, one `a,b` pair per line.
    pub path: PathBuf,
    /// True matches, one `a,b` pair per line.
    #[arg(long)]
    pub truth: PathBuf,
    /// Component mask (one 0/1 per line); also scores M_c.
    #[arg(long)]
    pub mask: Option<PathBuf>,
    /// Length of `s` (defaults to the mask length).
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Serialize)]
struct Scores {
    n: usize,
    mg: f64,
    mc: Option<f64>,
}

pub fn run(args: &ScoreArgs, out: &OutDir) -> AppResult<()> {
    let path = parse_path(&read_text(&args.path)?)?;
    let pairs = parse_pairs(&read_text(&args.truth)?)?;
    let mask = args
        .mask
        .as_ref()
        .map(|p| read_text(p).and_then(|t| parse_mask(&t)))
        .transpose()?;
    let n = match (args.n, &mask) {
        (Some(n), _) => n,
        (None, Some(mask)) => mask.len(),
        (None, None) => return Err(AppError::Usage("--n is required without --mask".into())),
    };
    let m = pairs.iter().chain(path.pairs()).map(|p| p.1).max().unwrap_or(1);
    let has_mask = mask.is_some();
    let truth = TrueAlignment::new(pairs, mask, n, m)?;
    let scores = Scores {
        n,
        mg: mg_score(&truth, &path, n)?,
        mc: if has_mask {
            Some(mc_score(&truth, &path, n)?)
        } else {
            None
        },
    };
    match scores.mc {
        Some(mc) => println!("M_g {} M_c {mc}", scores.mg),
        None => println!("M_g {}", scores.mg),
    }
    out.record("scores", &scores)?;
    Ok(())
}
