//! Regional DTW combined with affine modelling.
//!
//! GARDTW fits one global `(c, e)` under the regional objective by hard EM.
//! LARDTW fits a separate `(c, e)` inside every matched window; the fit and
//! its residual come in closed form from five window sums, which roll along
//! band diagonals like the regional costs do.

use crate::affine::{
    apply_affine, hard_em, AffineParams, EmConfig, EmOutcome, FitSums, ScalingBounds, DEGENERATE_RATIO,
};
use crate::dp::{align_rows, pointwise_cost, Alignment, BandConfig, BandCostTable, BandLayout, RowCost};
use crate::error::{Error, Result};
use crate::path::AlignmentPath;
use crate::regional::rdtw;
use crate::series::TimeSeries;
use crate::window::{direct, offsets, Kernel, RollingWindows, WindowAcc};

/// Sums over one matched window: `rho = sum s*t`, `phi = sum s`,
/// `tau = sum t`, `eta = sum s^2`, `gamma = sum t^2`, and the number of
/// in-range terms.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WindowStats {
    pub rho: f64,
    pub phi: f64,
    pub tau: f64,
    pub eta: f64,
    pub gamma: f64,
    pub count: usize,
}

impl WindowAcc for WindowStats {
    #[inline]
    fn push(&mut self, x: f64, y: f64) {
        self.rho += x * y;
        self.phi += x;
        self.tau += y;
        self.eta += x * x;
        self.gamma += y * y;
        self.count += 1;
    }
}

impl WindowStats {
    /// Stats of the window around 1-based `(a, b)`, summed directly.
    pub fn direct(s: &TimeSeries, t: &TimeSeries, a: usize, b: usize, w_h: usize) -> Self {
        direct(s.values(), t.values(), a - 1, b - 1, w_h)
    }

    /// Mean over the window of `(s - (c t + e))^2`, from the sums alone.
    #[inline]
    pub fn residual(&self, params: AffineParams) -> f64 {
        let w = self.count as f64;
        (residual_total(self.rho, self.phi, self.tau, self.eta, self.gamma, w, params) / w).max(0.0)
    }

    fn fit_sums(&self) -> FitSums {
        fit_sums(self.rho, self.phi, self.tau, self.gamma, self.count as f64)
    }
}

#[inline]
fn fit_sums(rho: f64, phi: f64, tau: f64, gamma: f64, count: f64) -> FitSums {
    FitSums {
        st: rho,
        s: phi,
        t: tau,
        tt: gamma,
        weight: count,
    }
}

#[inline]
fn residual_total(rho: f64, phi: f64, tau: f64, eta: f64, gamma: f64, w: f64, params: AffineParams) -> f64 {
    let AffineParams { c, e } = params;
    eta - 2.0 * c * rho - 2.0 * e * phi + c * c * gamma + 2.0 * c * e * tau + w * e * e
}

/// Residual of the best local fit, from the centered sums
/// `sxx = eta - phi^2/w`, `sxy = rho - phi tau/w`, `syy = gamma - tau^2/w`.
///
/// With `e` re-derived for the (possibly clamped) `c`, the printed
/// expansion collapses to `(sxx - 2 c sxy + c^2 syy) / w`.
#[inline(always)]
fn fitted_residual(rho: f64, phi: f64, tau: f64, eta: f64, gamma: f64, w: f64, bounds: &ScalingBounds) -> f64 {
    let inv = 1.0 / w;
    let syy = gamma - tau * tau * inv;
    let sxy = rho - phi * tau * inv;
    let sxx = eta - phi * phi * inv;
    let raw = if syy <= DEGENERATE_RATIO * gamma {
        1.0
    } else {
        sxy / syy
    };
    let c = bounds.clamp(raw);
    ((sxx - 2.0 * c * sxy + c * c * syy) * inv).max(0.0)
}

/// Least-squares `(c, e)` mapping the window's t-values onto its s-values.
///
/// The scaling is clamped and the offset re-derived for the clamped value;
/// a constant t-window falls back to `c = 1` and the difference of means.
pub fn local_affine_fit(stats: &WindowStats, bounds: &ScalingBounds) -> AffineParams {
    stats.fit_sums().solve(bounds)
}

/// `d_l` at 1-based `(a, b)`: residual of the best local affine fit, per window term.
pub fn local_cost(s: &TimeSeries, t: &TimeSeries, a: usize, b: usize, w_h: usize, bounds: &ScalingBounds) -> f64 {
    let st = WindowStats::direct(s, t, a, b, w_h);
    fitted_residual(st.rho, st.phi, st.tau, st.eta, st.gamma, st.count as f64, bounds)
}

/// Fields in [`WindowStats`] order: rho, phi, tau, eta, gamma, count.
struct LocalKernel;

impl Kernel for LocalKernel {
    const FIELDS: usize = 6;

    #[inline(always)]
    fn term<const F: usize>(x: f64, y: f64) -> f64 {
        match F {
            0 => x * y,
            1 => x,
            2 => y,
            3 => x * x,
            4 => y * y,
            _ => 1.0,
        }
    }
}

struct LocalRows<'a> {
    windows: RollingWindows<'a, LocalKernel>,
    bounds: ScalingBounds,
    costs: Vec<f64>,
}

impl<'a> LocalRows<'a> {
    fn new(s: &'a TimeSeries, t: &'a TimeSeries, w_h: usize, layout: BandLayout, bounds: &ScalingBounds) -> Self {
        Self {
            windows: RollingWindows::new(s.values(), t.values(), w_h, layout),
            bounds: *bounds,
            costs: vec![0.0; layout.width()],
        }
    }
}

impl RowCost for LocalRows<'_> {
    #[inline(always)]
    fn start_row(&mut self, i: usize, jlo: usize, len: usize) {
        self.windows.start_row(i, jlo, len);
        let w = &self.windows;
        let (rho, phi, tau, eta, gamma, count) =
            (w.field(0), w.field(1), w.field(2), w.field(3), w.field(4), w.field(5));
        for (idx, c) in self.costs[..len].iter_mut().enumerate() {
            let (r, p, t, e, g, n) = (rho[idx], phi[idx], tau[idx], eta[idx], gamma[idx], count[idx]);
            *c = fitted_residual(r, p, t, e, g, n, &self.bounds);
        }
    }

    #[inline]
    fn cell(&mut self, idx: usize) -> f64 {
        self.costs[idx]
    }
}

fn check_local_half_width(w_h: usize) -> Result<()> {
    if w_h == 0 {
        return Err(Error::config(
            "LARDTW needs a region half-width of at least 1; with 0 every local fit is exact and all costs vanish",
        ));
    }
    Ok(())
}

/// All in-band `d_l` values, built from rolling window sums.
pub fn local_cost_table(
    s: &TimeSeries,
    t: &TimeSeries,
    band: BandConfig,
    w_h: usize,
    bounds: &ScalingBounds,
) -> Result<BandCostTable> {
    check_local_half_width(w_h)?;
    let layout = BandLayout::new(s.len(), t.len(), band);
    let mut rows = LocalRows::new(s, t, w_h, layout, bounds);
    Ok(BandCostTable::collect(&mut rows, layout))
}

/// Local-affine regional DTW. Rejects `w_h = 0`.
pub fn lardtw(
    s: &TimeSeries,
    t: &TimeSeries,
    band: BandConfig,
    w_h: usize,
    bounds: &ScalingBounds,
) -> Result<Alignment> {
    check_local_half_width(w_h)?;
    let layout = BandLayout::new(s.len(), t.len(), band);
    let mut rows = LocalRows::new(s, t, w_h, layout, bounds);
    Ok(align_rows(&mut rows, layout))
}

/// Global `(c, e)` minimizing the regional objective `D_G` for a fixed path.
///
/// Each path pair contributes its window sums divided by the window's term
/// count; the offset divides by the path length.
pub fn gardtw_affine_fit(
    s: &TimeSeries,
    t: &TimeSeries,
    p: &AlignmentPath,
    w_h: usize,
    bounds: &ScalingBounds,
) -> AffineParams {
    let mut sums = FitSums::default();
    for (a, b) in p.iter() {
        let st = WindowStats::direct(s, t, a, b, w_h);
        let w = st.count as f64;
        sums.st += st.rho / w;
        sums.s += st.phi / w;
        sums.t += st.tau / w;
        sums.tt += st.gamma / w;
        sums.weight += 1.0;
    }
    sums.solve(bounds)
}

/// `D_G`: sum over the path of the window-mean `d(s, c t + e)`.
pub fn gardtw_objective(s: &TimeSeries, t: &TimeSeries, p: &AlignmentPath, params: AffineParams, w_h: usize) -> f64 {
    let (sv, tv) = (s.values(), t.values());
    p.iter()
        .map(|(a, b)| {
            let (i, j) = (a - 1, b - 1);
            let (lo, hi) = offsets(i, j, sv.len(), tv.len(), w_h);
            let mut sum = 0.0;
            for w in lo..=hi {
                let (x, y) = ((i as isize + w) as usize, (j as isize + w) as usize);
                sum += pointwise_cost(sv[x], params.apply(tv[y]));
            }
            sum / (hi - lo + 1) as f64
        })
        .sum()
}

/// Global-affine regional DTW by hard EM, alternating [`rdtw`] on the
/// transformed `t` with [`gardtw_affine_fit`]. With `w_h = 0` every
/// iterate equals that of [`crate::adtw`].
pub fn gardtw(
    s: &TimeSeries,
    t: &TimeSeries,
    band: BandConfig,
    w_h: usize,
    bounds: &ScalingBounds,
    em: &EmConfig,
) -> EmOutcome {
    hard_em(
        em,
        |params| rdtw(s, &apply_affine(t, params), band, w_h).path,
        |path| gardtw_affine_fit(s, t, path, w_h, bounds),
        |path, params| gardtw_objective(s, t, path, params, w_h),
    )
}
