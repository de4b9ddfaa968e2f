//! Affine DTW: alignment, scaling and offset estimated jointly by hard EM.

use crate::dp::{dtw, pointwise_cost, BandConfig};
use crate::error::{Error, Result};
use crate::path::AlignmentPath;
use crate::series::TimeSeries;

/// Scaling `c` and offset `e`, applied as `c * t + e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineParams {
    pub c: f64,
    pub e: f64,
}

impl AffineParams {
    pub const IDENTITY: AffineParams = AffineParams { c: 1.0, e: 0.0 };

    pub fn new(c: f64, e: f64) -> Self {
        Self { c, e }
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        self.c * x + self.e
    }
}

impl Default for AffineParams {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// Admissible range for the fitted scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingBounds {
    c_min: f64,
    c_max: f64,
}

impl ScalingBounds {
    pub fn new(c_min: f64, c_max: f64) -> Result<Self> {
        if c_min.is_nan() || c_max.is_nan() || c_min > c_max {
            return Err(Error::config(format!(
                "scaling bounds must satisfy c_min <= c_max, got ({c_min}, {c_max})"
            )));
        }
        Ok(Self { c_min, c_max })
    }

    /// No clamping.
    pub fn unbounded() -> Self {
        Self {
            c_min: f64::NEG_INFINITY,
            c_max: f64::INFINITY,
        }
    }

    pub fn c_min(&self) -> f64 {
        self.c_min
    }

    pub fn c_max(&self) -> f64 {
        self.c_max
    }

    #[inline]
    pub fn clamp(&self, c: f64) -> f64 {
        // bounds are validated at construction, so no ordering check here
        c.max(self.c_min).min(self.c_max)
    }
}

impl Default for ScalingBounds {
    fn default() -> Self {
        Self { c_min: 0.2, c_max: 5.0 }
    }
}

/// Stopping rule for the hard-EM loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmConfig {
    d_stop: f64,
    max_iters: usize,
}

impl EmConfig {
    pub fn new(d_stop: f64, max_iters: usize) -> Result<Self> {
        if !d_stop.is_finite() || d_stop <= 0.0 {
            return Err(Error::config(format!("d_stop must be positive, got {d_stop}")));
        }
        if max_iters == 0 {
            return Err(Error::config("max_iters must be at least 1"));
        }
        Ok(Self { d_stop, max_iters })
    }

    pub fn d_stop(&self) -> f64 {
        self.d_stop
    }

    pub fn max_iters(&self) -> usize {
        self.max_iters
    }
}

impl Default for EmConfig {
    fn default() -> Self {
        Self {
            d_stop: 1e-5,
            max_iters: 100,
        }
    }
}

/// Final state of a hard-EM run.
#[derive(Debug, Clone, PartialEq)]
pub struct EmOutcome {
    pub path: AlignmentPath,
    pub params: AffineParams,
    /// Objective evaluated on the returned `(path, params)`.
    pub measure: f64,
    pub iterations: usize,
    /// Objective after each iteration; the last entry equals `measure`.
    pub objectives: Vec<f64>,
    /// False when `max_iters` was reached before the stopping test fired.
    pub converged: bool,
}

/// Accumulated moments of matched `(s, t)` values.
///
/// `weight` is the total weight of the matched terms; for a plain path it is
/// the number of pairs.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct FitSums {
    pub st: f64,
    pub s: f64,
    pub t: f64,
    pub tt: f64,
    pub weight: f64,
}

/// Below this ratio of `sum(t^2) - sum(t)^2 / w` to `sum(t^2)` the matched
/// t-values are treated as constant.
pub(crate) const DEGENERATE_RATIO: f64 = 1e-12;

impl FitSums {
    /// Least-squares `(c, e)`, with `c` clamped and `e` re-derived for the clamped `c`.
    ///
    /// When the matched t-values are constant the scaling is unidentifiable;
    /// `c` then defaults to 1 (before clamping).
    #[inline]
    pub fn solve(&self, bounds: &ScalingBounds) -> AffineParams {
        let inv = 1.0 / self.weight;
        let denom = self.tt - self.t * self.t * inv;
        let raw = if denom <= DEGENERATE_RATIO * self.tt {
            1.0
        } else {
            (self.st - self.s * self.t * inv) / denom
        };
        let c = bounds.clamp(raw);
        let e = (self.s - c * self.t) * inv;
        AffineParams { c, e }
    }
}

/// Least-squares scaling and offset of `t` onto `s` over the matches in `p`.
pub fn affine_fit(s: &TimeSeries, t: &TimeSeries, p: &AlignmentPath, bounds: &ScalingBounds) -> AffineParams {
    let mut sums = FitSums::default();
    for (a, b) in p.iter() {
        let (x, y) = (s.at(a), t.at(b));
        sums.st += x * y;
        sums.s += x;
        sums.t += y;
        sums.tt += y * y;
        sums.weight += 1.0;
    }
    sums.solve(bounds)
}

/// Elementwise `c * t_i + e`.
pub fn apply_affine(t: &TimeSeries, params: AffineParams) -> TimeSeries {
    TimeSeries::from_vec_unchecked(t.values().iter().map(|&y| params.apply(y)).collect())
}

/// `sum_k d(s_{a_k}, c t_{b_k} + e)` over the path.
pub fn affine_objective(s: &TimeSeries, t: &TimeSeries, p: &AlignmentPath, params: AffineParams) -> f64 {
    p.iter()
        .map(|(a, b)| pointwise_cost(s.at(a), params.apply(t.at(b))))
        .sum()
}

/// Affine DTW.
///
/// Alternates a DTW alignment of `s` against the currently transformed `t`
/// with a least-squares refit of `(c, e)` on that alignment, starting from
/// the identity transform. Stops once the objective drops by less than
/// `d_stop` in one iteration and returns that iteration's solution.
pub fn adtw(s: &TimeSeries, t: &TimeSeries, band: BandConfig, bounds: &ScalingBounds, em: &EmConfig) -> EmOutcome {
    hard_em(
        em,
        |params| dtw(s, &apply_affine(t, params), band).path,
        |path| affine_fit(s, t, path, bounds),
        |path, params| affine_objective(s, t, path, params),
    )
}

pub(crate) fn hard_em(
    em: &EmConfig,
    mut align: impl FnMut(AffineParams) -> AlignmentPath,
    mut fit: impl FnMut(&AlignmentPath) -> AffineParams,
    mut objective: impl FnMut(&AlignmentPath, AffineParams) -> f64,
) -> EmOutcome {
    let mut params = AffineParams::IDENTITY;
    let mut prev = f64::INFINITY;
    let mut objectives = Vec::new();
    let mut iteration = 0;
    loop {
        iteration += 1;
        let path = align(params);
        let next = fit(&path);
        let value = objective(&path, next);
        objectives.push(value);
        let converged = prev - value < em.d_stop;
        if converged || iteration >= em.max_iters {
            return EmOutcome {
                path,
                params: next,
                measure: value,
                iterations: iteration,
                objectives,
                converged,
            };
        }
        prev = value;
        params = next;
    }
}
