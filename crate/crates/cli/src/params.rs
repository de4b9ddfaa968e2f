use clap::Args;
use serde::Serialize;
use tswarp::evaluate::{MethodKind, MethodParams, TuningGrid};
use tswarp::{BandConfig, EmConfig, ScalingBounds};

use crate::error::{AppError, AppResult};

/// Band, region and fitting parameters shared by every alignment command.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Sakoe-Chiba half-width in samples (default: unbounded).
    #[arg(long, conflicts_with = "wq_ratio")]
    pub wq: Option<usize>,
    /// Sakoe-Chiba half-width as a fraction of the series length.
    #[arg(long = "wq-ratio")]
    pub wq_ratio: Option<f64>,
    /// Region half-width in samples (default: 0).
    #[arg(long, conflicts_with = "wh_ratio")]
    pub wh: Option<usize>,
    /// Region half-width as a fraction of the series length.
    #[arg(long = "wh-ratio")]
    pub wh_ratio: Option<f64>,
    /// Lower bound on the scaling factor.
    #[arg(long, default_value_t = 0.2)]
    pub cmin: f64,
    /// Upper bound on the scaling factor.
    #[arg(long, default_value_t = 5.0)]
    pub cmax: f64,
    /// Hard-EM stops once the objective improves by less than this.
    #[arg(long, default_value_t = 1e-5)]
    pub dstop: f64,
    /// Hard-EM iteration cap.
    #[arg(long = "max-iters", default_value_t = 100)]
    pub max_iters: usize,
}

fn check_ratio(name: &str, r: Option<f64>) -> AppResult<()> {
    match r {
        Some(r) if !(r.is_finite() && r >= 0.0) => Err(AppError::Usage(format!(
            "--{name} must be a non-negative number, got {r}"
        ))),
        _ => Ok(()),
    }
}

/// Parameters as resolved for one run, recorded in summaries.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedParams {
    /// `null` for an unbounded band.
    pub w_q: Option<usize>,
    pub w_h: usize,
    pub c_min: f64,
    pub c_max: f64,
    pub d_stop: f64,
    pub max_iters: usize,
}

impl ParamArgs {
    fn validate(&self) -> AppResult<()> {
        check_ratio("wq-ratio", self.wq_ratio)?;
        check_ratio("wh-ratio", self.wh_ratio)
    }

    fn fixed(&self) -> AppResult<(ScalingBounds, EmConfig)> {
        self.validate()?;
        Ok((
            ScalingBounds::new(self.cmin, self.cmax)?,
            EmConfig::new(self.dstop, self.max_iters)?,
        ))
    }

    /// Concrete parameters for series of length `n`; ratios round to the nearest sample.
    pub fn resolve(&self, n: usize) -> AppResult<MethodParams> {
        let (bounds, em) = self.fixed()?;
        let band = match (self.wq, self.wq_ratio) {
            (Some(w), _) => BandConfig::new(w),
            (None, Some(r)) => BandConfig::from_ratio(r, n),
            (None, None) => BandConfig::unbounded(),
        };
        let w_h = match (self.wh, self.wh_ratio) {
            (Some(w), _) => w,
            (None, Some(r)) => (r * n as f64).round() as usize,
            (None, None) => 0,
        };
        Ok(MethodParams { band, w_h, bounds, em })
    }

    /// Fixed parameters plus the tuning grid; an explicit width replaces its grid axis.
    pub fn tuning(&self, n: usize) -> AppResult<(MethodParams, TuningGrid)> {
        let base = self.resolve(n)?;
        let mut grid = TuningGrid::default();
        let as_ratio = |w: usize| w as f64 / n.max(1) as f64;
        if let Some(r) = self.wq_ratio.or(self.wq.map(as_ratio)) {
            grid.wq_ratios = vec![r];
        }
        if let Some(r) = self.wh_ratio.or(self.wh.map(as_ratio)) {
            grid.wh_ratios = vec![r];
        }
        grid.validate()?;
        Ok((base, grid))
    }

    pub fn with_default_ratios(mut self, wq: f64, wh: f64) -> Self {
        if self.wq.is_none() && self.wq_ratio.is_none() {
            self.wq_ratio = Some(wq);
        }
        if self.wh.is_none() && self.wh_ratio.is_none() {
            self.wh_ratio = Some(wh);
        }
        self
    }
}

pub fn describe(method: MethodKind, p: &MethodParams) -> ResolvedParams {
    ResolvedParams {
        w_q: p.band.half_width(),
        w_h: if method.uses_region() { p.w_h } else { 0 },
        c_min: p.bounds.c_min(),
        c_max: p.bounds.c_max(),
        d_stop: p.em.d_stop(),
        max_iters: p.em.max_iters(),
    }
}
