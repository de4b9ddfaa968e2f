//! Wall-clock comparison of the alignment methods.

use std::time::Instant;

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evaluate::{align_with, MethodKind, MethodParams};
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// Series drawn from the pool; consecutive draws form the timed pairs.
    pub series_count: usize,
    /// Timed alignments per pair and method.
    pub repeats: usize,
    pub methods: Vec<MethodKind>,
    pub params: MethodParams,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repeats == 0 {
            return Err(Error::config("repeats must be at least 1"));
        }
        if self.series_count < 2 {
            return Err(Error::config("at least two series are needed to form a pair"));
        }
        if self.methods.is_empty() {
            return Err(Error::config("no methods to benchmark"));
        }
        Ok(())
    }
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            series_count: 20,
            repeats: 10,
            methods: vec![
                MethodKind::Dtw,
                MethodKind::Adtw,
                MethodKind::Rdtw,
                MethodKind::Gardtw,
                MethodKind::Lardtw,
            ],
            params: MethodParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchEntry {
    pub method: MethodKind,
    pub alignments: usize,
    pub mean_seconds: f64,
    /// Mean time relative to DTW, when DTW was benchmarked.
    pub ratio_to_dtw: Option<f64>,
    /// Mean hard-EM iterations per alignment (ADTW and GARDTW).
    pub mean_iterations: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub series_len: usize,
    pub pairs: usize,
    pub repeats: usize,
    pub entries: Vec<BenchEntry>,
}

/// Draws `series_count` series without replacement (all of them if the pool
/// is smaller), pairs them up in draw order and times every method on every
/// pair `repeats` times. Methods are interleaved per pair so slow drift in
/// machine load affects all of them alike.
pub fn run_bench(pool: &[TimeSeries], cfg: &BenchConfig, rng: &mut impl Rng) -> Result<BenchReport> {
    cfg.validate()?;
    let count = cfg.series_count.min(pool.len());
    if count < 2 {
        return Err(Error::data("benchmark needs at least two series"));
    }
    let chosen: Vec<&TimeSeries> = sample(rng, pool.len(), count).into_iter().map(|k| &pool[k]).collect();
    let pairs: Vec<(&TimeSeries, &TimeSeries)> = chosen.chunks_exact(2).map(|c| (c[0], c[1])).collect();

    let mut seconds = vec![0.0; cfg.methods.len()];
    let mut iterations = vec![0usize; cfg.methods.len()];
    for &(s, t) in &pairs {
        for (k, &method) in cfg.methods.iter().enumerate() {
            for _ in 0..cfg.repeats {
                let start = Instant::now();
                let out = align_with(method, &cfg.params, s, t)?;
                seconds[k] += start.elapsed().as_secs_f64();
                iterations[k] += out.iterations.unwrap_or(0);
            }
        }
    }

    let alignments = pairs.len() * cfg.repeats;
    let means: Vec<f64> = seconds.iter().map(|s| s / alignments as f64).collect();
    let dtw_mean = cfg.methods.iter().position(|&m| m == MethodKind::Dtw).map(|k| means[k]);
    let entries = cfg
        .methods
        .iter()
        .enumerate()
        .map(|(k, &method)| BenchEntry {
            method,
            alignments,
            mean_seconds: means[k],
            ratio_to_dtw: dtw_mean.map(|d| means[k] / d),
            mean_iterations: method.is_iterative().then(|| iterations[k] as f64 / alignments as f64),
        })
        .collect();
    Ok(BenchReport {
        series_len: chosen[0].len(),
        pairs: pairs.len(),
        repeats: cfg.repeats,
        entries,
    })
}
