use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::Value;
use tswarp::evaluate::{average_ranks, significantly_different, win_loss, CRITICAL_DIFFERENCE};
use tswarp::io::{parse_error_table, read_text, ErrorTable};

use crate::error::AppResult;
use crate::output::{finite_or_string, OutDir};

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Error table: header `dataset,<method>,...`, one row per dataset.
    pub errors: PathBuf,
    /// Critical rank difference used to flag significant gaps.
    #[arg(long = "critical-difference", default_value_t = CRITICAL_DIFFERENCE)]
    pub critical_difference: f64,
}

#[derive(Debug, Serialize)]
pub struct WinLossRow {
    pub method: String,
    pub versus: String,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
    pub ratio: Value,
}

#[derive(Debug, Serialize)]
pub struct RankRow {
    pub method: String,
    pub average_rank: f64,
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub win_loss: Vec<WinLossRow>,
    pub average_ranks: Vec<RankRow>,
    /// Method pairs whose rank gap exceeds the critical difference.
    pub significant: Vec<(String, String)>,
}

pub fn compare(table: &ErrorTable, cd: f64) -> AppResult<Comparison> {
    let mut rows = Vec::new();
    for (i, a) in table.methods.iter().enumerate() {
        for (j, b) in table.methods.iter().enumerate() {
            if i == j {
                continue;
            }
            let wl = win_loss(&table.errors[i], &table.errors[j])?;
            rows.push(WinLossRow {
                method: a.clone(),
                versus: b.clone(),
                wins: wl.wins,
                ties: wl.ties,
                losses: wl.losses,
                ratio: finite_or_string(wl.ratio),
            });
        }
    }
    let ranks = average_ranks(&table.errors)?;
    let mut significant = Vec::new();
    for i in 0..ranks.len() {
        for j in i + 1..ranks.len() {
            if significantly_different(ranks[i], ranks[j], cd) {
                significant.push((table.methods[i].clone(), table.methods[j].clone()));
            }
        }
    }
    Ok(Comparison {
        win_loss: rows,
        average_ranks: table
            .methods
            .iter()
            .zip(ranks)
            .map(|(m, r)| RankRow {
                method: m.clone(),
                average_rank: r,
            })
            .collect(),
        significant,
    })
}

/// Writes `winloss.csv` and `ranks.csv` and prints the ratio matrix at one decimal.
pub fn emit(table: &ErrorTable, c: &Comparison, out: &OutDir) -> AppResult<()> {
    let mut csv = String::from("method,versus,wins,ties,losses,ratio\n");
    for r in &c.win_loss {
        let ratio = r
            .ratio
            .as_f64()
            .map_or_else(|| r.ratio.as_str().unwrap_or("").to_string(), |x| x.to_string());
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{ratio}",
            r.method, r.versus, r.wins, r.ties, r.losses
        );
    }
    out.write("winloss.csv", &csv)?;
    let mut ranks = String::from("method,average_rank\n");
    for r in &c.average_ranks {
        let _ = writeln!(ranks, "{},{}", r.method, r.average_rank);
    }
    out.write("ranks.csv", &ranks)?;

    let k = table.methods.len();
    let width = table.methods.iter().map(String::len).max().unwrap_or(0).max(6);
    let mut text = format!("{:width$}", "");
    for m in &table.methods {
        let _ = write!(text, " {m:>width$}");
    }
    text.push('\n');
    for (i, a) in table.methods.iter().enumerate() {
        let _ = write!(text, "{a:width$}");
        for j in 0..k {
            if i == j {
                let _ = write!(text, " {:>width$}", "-");
                continue;
            }
            let row = &c.win_loss[i * (k - 1) + if j < i { j } else { j - 1 }];
            let cell = row
                .ratio
                .as_f64()
                .map_or_else(|| "inf".to_string(), |x| format!("{x:.1}"));
            let _ = write!(text, " {cell:>width$}");
        }
        text.push('\n');
    }
    for r in &c.average_ranks {
        let _ = writeln!(text, "rank {:width$} {:.3}", r.method, r.average_rank);
    }
    print!("{text}");
    Ok(())
}

pub fn run(args: &CompareArgs, out: &OutDir) -> AppResult<()> {
    let table = parse_error_table(&read_text(&args.errors)?)?;
    let c = compare(&table, args.critical_difference)?;
    emit(&table, &c, out)?;
    out.record("comparison", &c)?;
    Ok(())
}
