//! Ground-truth alignment generators.
//!
//! Two families: a base series warped by a random monotone index map and
//! then scaled, offset and perturbed ([`global_affine_instance`]); and pairs
//! built by superimposing windowed components whose placements correspond
//! across the two series ([`component_instance`]).
//!
//! Every generator splits into a sampling step that draws all random
//! quantities into a serializable record and a deterministic build step, so
//! a stored record reproduces the instance without touching an RNG.
//!
//! Window shapes, for a window of `L = 2h + 1` points and offset `k` from
//! the center (`|k| <= h`):
//!
//! | code | shape       | value |
//! |------|-------------|-------|
//! | 1    | Parzen      | `1 - 6x^2 + 6x^3` for `\|k\| <= (L-1)/4`, else `2(1-x)^3`, with `x = \|k\| / (L/2)` |
//! | 2    | rectangular | `1` |
//! | 3    | triangular  | `1 - \|k\| / (h + 1)` |
//! | 4    | flat top    | `sum_r a_r cos(r pi k / h) / sum_r a_r`, `a = (0.21557895, 0.41663158, 0.277263158, 0.083578947, 0.006947368)` |
//!
//! All shapes peak at exactly 1 at the center; a one-point window is `1`.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Step probabilities of the random warping function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WarpConfig {
    pub p_match: f64,
    pub p_delete: f64,
    pub p_insert: f64,
}

impl WarpConfig {
    pub fn new(p_match: f64, p_delete: f64, p_insert: f64) -> Result<Self> {
        let cfg = Self {
            p_match,
            p_delete,
            p_insert,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `P_delete = P_insert = p_w / 2`, `P_match = 1 - p_w`.
    pub fn from_warping_level(p_w: f64) -> Result<Self> {
        Self::new(1.0 - p_w, p_w / 2.0, p_w / 2.0)
    }

    pub fn validate(&self) -> Result<()> {
        let probs = [self.p_match, self.p_delete, self.p_insert];
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::config(format!(
                "warp probabilities must lie in [0, 1], got {probs:?}"
            )));
        }
        if (probs.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::config(format!(
                "warp probabilities must sum to 1, got {probs:?}"
            )));
        }
        if self.p_insert >= 1.0 {
            return Err(Error::config("p_insert = 1 never advances the warping function"));
        }
        Ok(())
    }
}

impl Default for WarpConfig {
    fn default() -> Self {
        Self {
            p_match: 0.6,
            p_delete: 0.2,
            p_insert: 0.2,
        }
    }
}

/// Ground-truth matches between `s` (first index) and `t` (second index).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TrueAlignment {
    pairs: Vec<(usize, usize)>,
    component_mask: Option<Vec<bool>>,
}

impl TrueAlignment {
    /// Sorts the pairs, drops duplicates and checks monotonicity and ranges.
    pub fn new(mut pairs: Vec<(usize, usize)>, component_mask: Option<Vec<bool>>, n: usize, m: usize) -> Result<Self> {
        pairs.sort_unstable();
        pairs.dedup();
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a == 0 || b == 0 || a > n || b > m) {
            return Err(Error::data(format!(
                "true alignment pair ({a}, {b}) is out of range for lengths ({n}, {m})"
            )));
        }
        if let Some(w) = pairs.windows(2).find(|w| w[1].1 < w[0].1) {
            return Err(Error::data(format!(
                "true alignment is not monotone: ({}, {}) precedes ({}, {})",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
        if let Some(mask) = &component_mask {
            if mask.len() != n {
                return Err(Error::data(format!(
                    "component mask has {} entries, expected {n}",
                    mask.len()
                )));
            }
        }
        Ok(Self { pairs, component_mask })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn component_mask(&self) -> Option<&[bool]> {
        self.component_mask.as_deref()
    }
}

/// Draws a monotone warping function `omega` over `1..=n`.
///
/// `omega(1) = 1` and each step adds 1, 2 or 0 with probabilities
/// `p_match`, `p_delete`, `p_insert`, stopping before `omega` would exceed
/// `n`. The raw truth pairs are `(omega(j), j)`.
pub fn sample_warp<R: Rng + ?Sized>(n: usize, cfg: &WarpConfig, rng: &mut R) -> Result<(Vec<usize>, TrueAlignment)> {
    if n < 2 {
        return Err(Error::config("warping needs a series of length at least 2"));
    }
    cfg.validate()?;
    let mut omega = vec![1];
    let mut current = 1;
    loop {
        let u: f64 = rng.random();
        let step = if u < cfg.p_match {
            1
        } else if u < cfg.p_match + cfg.p_delete {
            2
        } else if cfg.p_insert > 0.0 {
            0
        } else if cfg.p_delete > 0.0 {
            // only reachable through rounding of the cumulative sum
            2
        } else {
            1
        };
        if current + step > n {
            break;
        }
        current += step;
        omega.push(current);
    }
    let z = omega.len();
    let pairs = omega.iter().enumerate().map(|(j, &w)| (w, j + 1)).collect();
    let truth = TrueAlignment::new(pairs, None, n, z)?;
    Ok((omega, truth))
}

/// Ranges and noise of the global scaling/offset perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalAffineConfig {
    pub c_range: (f64, f64),
    pub e_range: (f64, f64),
    pub noise_sigma: f64,
}

impl GlobalAffineConfig {
    pub fn new(c_range: (f64, f64), e_range: (f64, f64), noise_sigma: f64) -> Result<Self> {
        let cfg = Self {
            c_range,
            e_range,
            noise_sigma,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `c ~ U[0.2, 5]`, `e ~ U[-sigma, sigma]`, noise `noise_level * sigma`,
    /// where `sigma` is the standard deviation of the base data.
    pub fn with_noise_level(sigma: f64, noise_level: f64) -> Result<Self> {
        Self::new((0.2, 5.0), (-sigma, sigma), noise_level * sigma)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.c_range.0,
            self.c_range.1,
            self.e_range.0,
            self.e_range.1,
            self.noise_sigma,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite || self.c_range.0 > self.c_range.1 || self.e_range.0 > self.e_range.1 || self.noise_sigma < 0.0 {
            return Err(Error::config(format!("invalid global affine configuration {self:?}")));
        }
        Ok(())
    }
}

/// Every random draw behind one global-affine instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalAffineSample {
    pub omega: Vec<usize>,
    pub c: f64,
    pub e: f64,
    pub noise: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalAffineInstance {
    pub t: TimeSeries,
    pub truth: TrueAlignment,
    pub sample: GlobalAffineSample,
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    let u: f64 = rng.random();
    lo + (hi - lo) * u
}

/// Draws the warp, scaling, offset and noise for a base series of length `n`.
pub fn sample_global_affine<R: Rng + ?Sized>(
    n: usize,
    warp: &WarpConfig,
    affine: &GlobalAffineConfig,
    rng: &mut R,
) -> Result<GlobalAffineSample> {
    affine.validate()?;
    let (omega, _) = sample_warp(n, warp, rng)?;
    let c = uniform(rng, affine.c_range);
    let e = uniform(rng, affine.e_range);
    let normal = Normal::new(0.0, affine.noise_sigma).map_err(|err| Error::config(err.to_string()))?;
    let noise = (0..n).map(|_| normal.sample(rng)).collect();
    Ok(GlobalAffineSample { omega, c, e, noise })
}

/// Builds `t` and its true alignment to `s` from a recorded sample.
///
/// The warped series `psi_i = s_{omega(i)}` of length `z` is linearly
/// resampled onto `n` points at positions `1 + (j - 1)(z - 1)/(n - 1)`, and
/// raw truth pair `j` moves to `t` index `round(1 + (j - 1)(n - 1)/(z - 1))`.
pub fn build_global_affine(s: &TimeSeries, sample: &GlobalAffineSample) -> Result<(TimeSeries, TrueAlignment)> {
    let n = s.len();
    let z = sample.omega.len();
    if n < 2 || z == 0 || sample.noise.len() != n {
        return Err(Error::data(
            "global affine sample does not match the base series length",
        ));
    }
    if sample.omega.iter().any(|&w| w == 0 || w > n) {
        return Err(Error::data("warping function leaves the base series"));
    }
    let psi: Vec<f64> = sample.omega.iter().map(|&w| s.at(w)).collect();
    let resampled: Vec<f64> = (0..n)
        .map(|j| {
            if z == 1 {
                return psi[0];
            }
            let x = (j as f64) * (z - 1) as f64 / (n - 1) as f64;
            let k = (x.floor() as usize).min(z - 1);
            let frac = x - k as f64;
            if frac == 0.0 || k + 1 >= z {
                psi[k]
            } else {
                psi[k] + frac * (psi[k + 1] - psi[k])
            }
        })
        .collect();
    let values: Vec<f64> = resampled
        .iter()
        .zip(&sample.noise)
        .map(|(&v, &eps)| sample.c * v + sample.e + eps)
        .collect();
    let pairs = sample
        .omega
        .iter()
        .enumerate()
        .map(|(j, &w)| {
            let b = if z == 1 {
                1
            } else {
                (1.0 + j as f64 * (n - 1) as f64 / (z - 1) as f64).round() as usize
            };
            (w, b)
        })
        .collect();
    let truth = TrueAlignment::new(pairs, None, n, n)?;
    Ok((TimeSeries::new(values)?, truth))
}

/// Warps, rescales and perturbs `s` into a new series `t` of the same length.
pub fn global_affine_instance<R: Rng + ?Sized>(
    s: &TimeSeries,
    warp: &WarpConfig,
    affine: &GlobalAffineConfig,
    rng: &mut R,
) -> Result<GlobalAffineInstance> {
    let sample = sample_global_affine(s.len(), warp, affine, rng)?;
    let (t, truth) = build_global_affine(s, &sample)?;
    Ok(GlobalAffineInstance { t, truth, sample })
}

/// Component window types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowShape {
    Parzen,
    Rectangular,
    Triangular,
    FlatTop,
}

const FLAT_TOP: [f64; 5] = [0.21557895, 0.41663158, 0.277263158, 0.083578947, 0.006947368];

impl WindowShape {
    /// Shape for code 1 (Parzen), 2 (rectangular), 3 (triangular) or 4 (flat top).
    pub fn from_code(z: u8) -> Result<Self> {
        match z {
            1 => Ok(WindowShape::Parzen),
            2 => Ok(WindowShape::Rectangular),
            3 => Ok(WindowShape::Triangular),
            4 => Ok(WindowShape::FlatTop),
            _ => Err(Error::config(format!("window type must be 1..=4, got {z}"))),
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            WindowShape::Parzen => 1,
            WindowShape::Rectangular => 2,
            WindowShape::Triangular => 3,
            WindowShape::FlatTop => 4,
        }
    }

    /// Window value at offset `k` from the center of a `2 * half + 1` point window.
    pub fn value(&self, k: isize, half: usize) -> f64 {
        let k = k.unsigned_abs();
        debug_assert!(k <= half);
        if half == 0 {
            return 1.0;
        }
        match self {
            WindowShape::Rectangular => 1.0,
            WindowShape::Triangular => 1.0 - k as f64 / (half + 1) as f64,
            WindowShape::Parzen => {
                let len = (2 * half + 1) as f64;
                let x = k as f64 / (len / 2.0);
                if k as f64 <= (len - 1.0) / 4.0 {
                    1.0 - 6.0 * x * x + 6.0 * x * x * x
                } else {
                    2.0 * (1.0 - x).powi(3)
                }
            }
            WindowShape::FlatTop => {
                let theta = std::f64::consts::PI * k as f64 / half as f64;
                let total: f64 = FLAT_TOP.iter().sum();
                FLAT_TOP
                    .iter()
                    .enumerate()
                    .map(|(r, a)| a * (r as f64 * theta).cos())
                    .sum::<f64>()
                    / total
            }
        }
    }
}

/// A length-`n` series holding one unit-peak window of type `z` centered at
/// 1-based `center`, spanning `center - width/2 ..= center + width/2`
/// (integer halving), zero elsewhere.
pub fn window_component(z: u8, center: usize, width: usize, n: usize) -> Result<TimeSeries> {
    let shape = WindowShape::from_code(z)?;
    if width == 0 || center == 0 || center > n {
        return Err(Error::config(format!(
            "component needs width >= 1 and 1 <= center <= n, got width {width}, center {center}, n {n}"
        )));
    }
    let mut values = vec![0.0; n];
    add_component(&mut values, shape, center, width, 1.0);
    TimeSeries::new(values)
}

fn support(center: usize, width: usize, n: usize) -> (usize, usize) {
    let half = width / 2;
    (center.saturating_sub(half).max(1), (center + half).min(n))
}

fn add_component(values: &mut [f64], shape: WindowShape, center: usize, width: usize, amplitude: f64) {
    let half = width / 2;
    let (lo, hi) = support(center, width, values.len());
    for i in lo..=hi {
        values[i - 1] += amplitude * shape.value(i as isize - center as isize, half);
    }
}

/// Parameters of the component-superposition generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComponentConfig {
    pub n: usize,
    pub n_components: usize,
    pub z_range: (u8, u8),
    pub width_range: (usize, usize),
    pub location_range: (usize, usize),
    pub amp_mean: f64,
    pub amp_sigma: f64,
}

impl ComponentConfig {
    /// Widths uniform on `[n / (2 n_c), n / n_c]`, centers on `[1, n]`, all
    /// four window types, amplitudes `|N(1, amp_sigma^2)|`.
    pub fn paper_defaults(n: usize, n_components: usize, amp_sigma: f64) -> Self {
        let n_c = n_components.max(1);
        Self {
            n,
            n_components,
            z_range: (1, 4),
            width_range: ((n / (2 * n_c)).max(1), (n / n_c).max(1)),
            location_range: (1, n),
            amp_mean: 1.0,
            amp_sigma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::config(msg));
        if self.n == 0 || self.n_components == 0 {
            return bad(format!("need n >= 1 and at least one component, got {self:?}"));
        }
        let (zl, zh) = self.z_range;
        if !(1 <= zl && zl <= zh && zh <= 4) {
            return bad(format!(
                "window type range must satisfy 1 <= z_min <= z_max <= 4, got {:?}",
                self.z_range
            ));
        }
        let (wl, wh) = self.width_range;
        if wl == 0 || wl > wh {
            return bad(format!(
                "width range must be positive and ordered, got {:?}",
                self.width_range
            ));
        }
        let (il, ih) = self.location_range;
        if il == 0 || il > ih || ih > self.n {
            return bad(format!(
                "location range must lie within [1, n], got {:?}",
                self.location_range
            ));
        }
        if !self.amp_mean.is_finite() || !self.amp_sigma.is_finite() || self.amp_sigma < 0.0 {
            return bad(format!(
                "amplitude parameters must be finite with sigma >= 0, got ({}, {})",
                self.amp_mean, self.amp_sigma
            ));
        }
        Ok(())
    }
}

/// Per-component draws for both series, indexed by component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSample {
    pub shapes: Vec<u8>,
    pub s_widths: Vec<usize>,
    pub t_widths: Vec<usize>,
    pub s_centers: Vec<usize>,
    pub t_centers: Vec<usize>,
    pub s_amplitudes: Vec<f64>,
    pub t_amplitudes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentInstance {
    pub s: TimeSeries,
    pub t: TimeSeries,
    pub truth: TrueAlignment,
    pub sample: ComponentSample,
}

fn chronological_order(centers: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..centers.len()).collect();
    order.sort_by_key(|&j| centers[j]);
    order
}

/// Draws component types, widths, centers and amplitudes.
///
/// Center vectors are redrawn together until both series list their
/// components in the same chronological order.
pub fn sample_components<R: Rng + ?Sized>(cfg: &ComponentConfig, rng: &mut R) -> Result<ComponentSample> {
    cfg.validate()?;
    let k = cfg.n_components;
    let shapes = (0..k)
        .map(|_| rng.random_range(cfg.z_range.0..=cfg.z_range.1))
        .collect();
    let (wl, wh) = cfg.width_range;
    let s_widths = (0..k).map(|_| rng.random_range(wl..=wh)).collect();
    let t_widths = (0..k).map(|_| rng.random_range(wl..=wh)).collect();
    let (il, ih) = cfg.location_range;
    let (s_centers, t_centers) = loop {
        let s: Vec<usize> = (0..k).map(|_| rng.random_range(il..=ih)).collect();
        let t: Vec<usize> = (0..k).map(|_| rng.random_range(il..=ih)).collect();
        if chronological_order(&s) == chronological_order(&t) {
            break (s, t);
        }
    };
    let normal = Normal::new(cfg.amp_mean, cfg.amp_sigma).map_err(|err| Error::config(err.to_string()))?;
    let s_amplitudes = (0..k).map(|_| normal.sample(rng).abs()).collect();
    let t_amplitudes = (0..k).map(|_| normal.sample(rng).abs()).collect();
    Ok(ComponentSample {
        shapes,
        s_widths,
        t_widths,
        s_centers,
        t_centers,
        s_amplitudes,
        t_amplitudes,
    })
}

/// Builds both series and the true alignment from a recorded sample.
///
/// Every `s` index covered by a component window is matched to the same
/// relative position in the corresponding `t` component. Where `s` windows
/// overlap, the component with the nearest center owns the index, ties
/// going to the leftmost center. Matches falling outside `t`, and the
/// fewest matches needed to keep the truth monotone, are dropped.
pub fn build_components(n: usize, sample: &ComponentSample) -> Result<(TimeSeries, TimeSeries, TrueAlignment)> {
    let k = sample.shapes.len();
    let lens = [
        sample.s_widths.len(),
        sample.t_widths.len(),
        sample.s_centers.len(),
        sample.t_centers.len(),
        sample.s_amplitudes.len(),
        sample.t_amplitudes.len(),
    ];
    if k == 0 || lens.iter().any(|&l| l != k) {
        return Err(Error::data("component sample has inconsistent lengths"));
    }
    let centers_ok = sample
        .s_centers
        .iter()
        .chain(&sample.t_centers)
        .all(|&c| c >= 1 && c <= n);
    let widths_ok = sample.s_widths.iter().chain(&sample.t_widths).all(|&w| w >= 1);
    if !centers_ok || !widths_ok {
        return Err(Error::data(
            "component sample has centers outside the series or zero widths",
        ));
    }
    let shapes = sample
        .shapes
        .iter()
        .map(|&z| WindowShape::from_code(z))
        .collect::<Result<Vec<_>>>()?;

    let mut s = vec![0.0; n];
    let mut t = vec![0.0; n];
    for j in 0..k {
        add_component(
            &mut s,
            shapes[j],
            sample.s_centers[j],
            sample.s_widths[j],
            sample.s_amplitudes[j],
        );
        add_component(
            &mut t,
            shapes[j],
            sample.t_centers[j],
            sample.t_widths[j],
            sample.t_amplitudes[j],
        );
    }

    let mut mask = vec![false; n];
    let mut pairs = Vec::new();
    for i in 1..=n {
        let owner = (0..k)
            .filter(|&j| {
                let (lo, hi) = support(sample.s_centers[j], sample.s_widths[j], n);
                (lo..=hi).contains(&i)
            })
            .min_by_key(|&j| (i.abs_diff(sample.s_centers[j]), sample.s_centers[j], j));
        let Some(j) = owner else { continue };
        mask[i - 1] = true;
        let (hs, ht) = (sample.s_widths[j] / 2, sample.t_widths[j] / 2);
        let offset = i as f64 - sample.s_centers[j] as f64;
        let shift = if hs == 0 {
            0.0
        } else {
            (offset * ht as f64 / hs as f64).round()
        };
        let b = sample.t_centers[j] as f64 + shift;
        if b >= 1.0 && b <= n as f64 {
            pairs.push((i, b as usize));
        }
    }
    let pairs = longest_monotone_subsequence(pairs);
    let truth = TrueAlignment::new(pairs, Some(mask), n, n)?;
    Ok((TimeSeries::new(s)?, TimeSeries::new(t)?, truth))
}

/// Longest subsequence with non-decreasing second coordinate; input sorted by first.
fn longest_monotone_subsequence(pairs: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    // tails[len - 1] = index of the smallest tail of a run of that length
    let mut tails: Vec<usize> = Vec::new();
    let mut parent = vec![usize::MAX; pairs.len()];
    for (idx, &(_, b)) in pairs.iter().enumerate() {
        let pos = tails.partition_point(|&ti| pairs[ti].1 <= b);
        if pos > 0 {
            parent[idx] = tails[pos - 1];
        }
        if pos == tails.len() {
            tails.push(idx);
        } else {
            tails[pos] = idx;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(idx) = cur {
        out.push(pairs[idx]);
        cur = (parent[idx] != usize::MAX).then(|| parent[idx]);
    }
    out.reverse();
    out
}

/// Draws and builds one component-superposition pair.
pub fn component_instance<R: Rng + ?Sized>(cfg: &ComponentConfig, rng: &mut R) -> Result<ComponentInstance> {
    let sample = sample_components(cfg, rng)?;
    let (s, t, truth) = build_components(cfg.n, &sample)?;
    Ok(ComponentInstance { s, t, truth, sample })
}

/// A smooth random base series: a sum of three sinusoids with random
/// frequencies (0.5 to 4 cycles over the series), phases and amplitudes.
pub fn smooth_series<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TimeSeries> {
    if n == 0 {
        return Err(Error::config("series length must be positive"));
    }
    let waves: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.random_range(0.5..4.0),
                rng.random_range(0.0..std::f64::consts::TAU),
                rng.random_range(0.3..1.0),
            )
        })
        .collect();
    let values = (0..n)
        .map(|i| {
            let x = i as f64 / n as f64;
            waves
                .iter()
                .map(|&(f, ph, a)| a * (std::f64::consts::TAU * f * x + ph).sin())
                .sum()
        })
        .collect();
    TimeSeries::new(values)
}
