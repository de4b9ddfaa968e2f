use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{z_normalize, Warning};
use crate::affine::{adtw, AffineParams, EmConfig, ScalingBounds};
use crate::combined::{gardtw, lardtw};
use crate::dp::{dtw, ratio_to_samples, BandConfig};
use crate::error::{Error, Result};
use crate::path::AlignmentPath;
use crate::regional::rdtw;
use crate::series::TimeSeries;

/// Labelled series of a common length, in UCR order.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    items: Vec<(TimeSeries, String)>,
}

impl LabeledDataset {
    pub fn new(items: Vec<(TimeSeries, String)>) -> Result<Self> {
        if let Some((first, _)) = items.first() {
            let n = first.len();
            if let Some(k) = items.iter().position(|(s, _)| s.len() != n) {
                return Err(Error::data(format!(
                    "item {} has length {}, expected {n}",
                    k + 1,
                    items[k].0.len()
                )));
            }
        }
        Ok(Self { items })
    }

    pub fn items(&self) -> &[(TimeSeries, String)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Common series length, 0 for an empty dataset.
    pub fn series_len(&self) -> usize {
        self.items.first().map_or(0, |(s, _)| s.len())
    }

    /// Distinct labels in sorted order.
    pub fn classes(&self) -> Vec<&str> {
        let mut labels: Vec<&str> = self.items.iter().map(|(_, l)| l.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    fn subset(&self, indices: &[usize]) -> LabeledDataset {
        LabeledDataset {
            items: indices.iter().map(|&k| self.items[k].clone()).collect(),
        }
    }
}

/// Grids searched by [`tune_params`], as ratios of the series length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningGrid {
    pub wq_ratios: Vec<f64>,
    pub wh_ratios: Vec<f64>,
}

impl TuningGrid {
    pub fn new(wq_ratios: Vec<f64>, wh_ratios: Vec<f64>) -> Result<Self> {
        let grid = Self { wq_ratios, wh_ratios };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.wq_ratios.is_empty() || self.wh_ratios.is_empty() {
            return Err(Error::config("tuning grids must be non-empty"));
        }
        for &r in self.wq_ratios.iter().chain(&self.wh_ratios) {
            if !(0.0..=0.5).contains(&r) {
                return Err(Error::config(format!("grid ratio {r} is outside [0, 0.5]")));
            }
        }
        Ok(())
    }

    fn samples(ratios: &[f64], n: usize, min: usize) -> Vec<usize> {
        let mut v: Vec<usize> = ratios.iter().map(|&r| ratio_to_samples(r, n).max(min)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl Default for TuningGrid {
    fn default() -> Self {
        Self {
            wq_ratios: (0..=10).map(|k| k as f64 * 0.05).collect(),
            wh_ratios: (1..=10).map(|k| k as f64 * 0.05).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    Dtw,
    Adtw,
    Rdtw,
    Gardtw,
    Lardtw,
    DtwZnorm,
}

impl MethodKind {
    pub const ALL: [MethodKind; 6] = [
        MethodKind::Dtw,
        MethodKind::Adtw,
        MethodKind::Rdtw,
        MethodKind::Gardtw,
        MethodKind::Lardtw,
        MethodKind::DtwZnorm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodKind::Dtw => "dtw",
            MethodKind::Adtw => "adtw",
            MethodKind::Rdtw => "rdtw",
            MethodKind::Gardtw => "gardtw",
            MethodKind::Lardtw => "lardtw",
            MethodKind::DtwZnorm => "dtw-znorm",
        }
    }

    /// Whether the method has a region half-width.
    pub fn uses_region(self) -> bool {
        matches!(self, MethodKind::Rdtw | MethodKind::Gardtw | MethodKind::Lardtw)
    }

    /// Whether the method iterates hard EM.
    pub fn is_iterative(self) -> bool {
        matches!(self, MethodKind::Adtw | MethodKind::Gardtw)
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('_', "-");
        MethodKind::ALL
            .into_iter()
            .find(|m| m.name() == lower)
            .ok_or_else(|| Error::config(format!("unknown method {s:?}")))
    }
}

/// Everything a method needs besides the two series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodParams {
    pub band: BandConfig,
    /// Region half-width in samples; ignored by methods without a region.
    pub w_h: usize,
    pub bounds: ScalingBounds,
    pub em: EmConfig,
}

impl Default for MethodParams {
    fn default() -> Self {
        Self {
            band: BandConfig::unbounded(),
            w_h: 0,
            bounds: ScalingBounds::default(),
            em: EmConfig::default(),
        }
    }
}

/// Result of aligning one pair with any method.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodAlignment {
    pub path: AlignmentPath,
    pub measure: f64,
    /// Fitted global transform of `t` (ADTW and GARDTW).
    pub params: Option<AffineParams>,
    /// Hard-EM iterations (ADTW and GARDTW).
    pub iterations: Option<usize>,
    pub converged: Option<bool>,
    pub warnings: Vec<Warning>,
}

impl MethodAlignment {
    fn plain(a: crate::dp::Alignment) -> Self {
        Self {
            path: a.path,
            measure: a.measure,
            params: None,
            iterations: None,
            converged: None,
            warnings: Vec::new(),
        }
    }

    fn em(o: crate::affine::EmOutcome) -> Self {
        Self {
            path: o.path,
            measure: o.measure,
            params: Some(o.params),
            iterations: Some(o.iterations),
            converged: Some(o.converged),
            warnings: Vec::new(),
        }
    }
}

/// Aligns `s` with `t` using `method`.
pub fn align_with(
    method: MethodKind,
    params: &MethodParams,
    s: &TimeSeries,
    t: &TimeSeries,
) -> Result<MethodAlignment> {
    let p = params;
    Ok(match method {
        MethodKind::Dtw => MethodAlignment::plain(dtw(s, t, p.band)),
        MethodKind::Adtw => MethodAlignment::em(adtw(s, t, p.band, &p.bounds, &p.em)),
        MethodKind::Rdtw => MethodAlignment::plain(rdtw(s, t, p.band, p.w_h)),
        MethodKind::Gardtw => MethodAlignment::em(gardtw(s, t, p.band, p.w_h, &p.bounds, &p.em)),
        MethodKind::Lardtw => MethodAlignment::plain(lardtw(s, t, p.band, p.w_h, &p.bounds)?),
        MethodKind::DtwZnorm => {
            let (zs, ws) = z_normalize(s);
            let (zt, wt) = z_normalize(t);
            let mut out = MethodAlignment::plain(dtw(&zs, &zt, p.band));
            out.warnings.extend(ws.into_iter().chain(wt));
            out
        }
    })
}

/// Difference measure between `s` and `t` under `method`.
pub fn difference_measure(method: MethodKind, params: &MethodParams, s: &TimeSeries, t: &TimeSeries) -> Result<f64> {
    Ok(align_with(method, params, s, t)?.measure)
}

/// Classification of one test item.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decision {
    /// 1-based index into the test set.
    pub test_index: usize,
    pub label: String,
    pub predicted: String,
    /// 1-based index of the nearest training item.
    pub neighbor: usize,
    pub measure: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneNnReport {
    pub error_rate: f64,
    pub decisions: Vec<Decision>,
}

/// 1-NN classification of `test` against `train`. The test series plays the
/// role of `s`, the training series that of `t`; on equal measures the
/// earlier training item wins.
pub fn one_nn(
    train: &LabeledDataset,
    test: &LabeledDataset,
    method: MethodKind,
    params: &MethodParams,
) -> Result<OneNnReport> {
    if train.is_empty() {
        return Err(Error::data("training set is empty"));
    }
    if test.is_empty() {
        return Ok(OneNnReport {
            error_rate: 0.0,
            decisions: Vec::new(),
        });
    }
    let decisions = test
        .items
        .par_iter()
        .enumerate()
        .map(|(k, (s, label))| {
            let mut best = (f64::INFINITY, 0);
            for (j, (t, _)) in train.items.iter().enumerate() {
                let d = difference_measure(method, params, s, t)?;
                if d < best.0 {
                    best = (d, j);
                }
            }
            Ok(Decision {
                test_index: k + 1,
                label: label.clone(),
                predicted: train.items[best.1].1.clone(),
                neighbor: best.1 + 1,
                measure: best.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let wrong = decisions.iter().filter(|d| d.label != d.predicted).count();
    Ok(OneNnReport {
        error_rate: wrong as f64 / decisions.len() as f64,
        decisions,
    })
}

/// Splits item indices into two stratified folds: within each class (in
/// sorted label order) indices are shuffled and assigned alternately,
/// starting with fold 1. Singleton classes land in fold 1 and are reported.
pub fn stratified_folds(data: &LabeledDataset, seed: u64) -> ([Vec<usize>; 2], Vec<Warning>) {
    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (k, (_, label)) in data.items.iter().enumerate() {
        by_class.entry(label).or_default().push(k);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = [Vec::new(), Vec::new()];
    let mut warnings = Vec::new();
    for (label, mut members) in by_class {
        if members.len() == 1 {
            warnings.push(Warning::SingletonClass(label.to_string()));
        }
        members.shuffle(&mut rng);
        for (r, k) in members.into_iter().enumerate() {
            folds[r % 2].push(k);
        }
    }
    folds[0].sort_unstable();
    folds[1].sort_unstable();
    (folds, warnings)
}

/// Parameters chosen by cross-validation.
#[derive(Debug, Clone, PartialEq)]
pub struct TuneOutcome {
    /// Band half-width in samples.
    pub w_q: usize,
    /// Region half-width in samples, 0 for methods without a region.
    pub w_h: usize,
    pub cv_error: f64,
    pub warnings: Vec<Warning>,
}

impl TuneOutcome {
    /// `base` with the tuned band and region width.
    pub fn apply(&self, base: &MethodParams) -> MethodParams {
        MethodParams {
            band: BandConfig::new(self.w_q),
            w_h: self.w_h,
            ..*base
        }
    }
}

/// Picks `(w_q, w_h)` from `grid` by 2-fold stratified cross-validation on
/// `train`. Each fold serves once as validation set and the two error rates
/// are averaged. Ties go to the smaller `w_q`, then the smaller `w_h`.
/// LARDTW never receives `w_h = 0`.
pub fn tune_params(
    train: &LabeledDataset,
    method: MethodKind,
    grid: &TuningGrid,
    base: &MethodParams,
    seed: u64,
) -> Result<TuneOutcome> {
    grid.validate()?;
    let n = train.series_len();
    let ([f1, f2], warnings) = stratified_folds(train, seed);
    if f1.is_empty() || f2.is_empty() {
        return Err(Error::data("cross-validation needs at least one item in each fold"));
    }
    let (a, b) = (train.subset(&f1), train.subset(&f2));

    let wqs = TuningGrid::samples(&grid.wq_ratios, n, 0);
    let whs = if method.uses_region() {
        let min = usize::from(method == MethodKind::Lardtw);
        TuningGrid::samples(&grid.wh_ratios, n, min)
    } else {
        vec![0]
    };

    let points: Vec<(usize, usize)> = wqs.iter().flat_map(|&q| whs.iter().map(move |&h| (q, h))).collect();
    let errors = points
        .par_iter()
        .map(|&(w_q, w_h)| {
            let params = MethodParams {
                band: BandConfig::new(w_q),
                w_h,
                ..*base
            };
            let e1 = one_nn(&a, &b, method, &params)?.error_rate;
            let e2 = one_nn(&b, &a, method, &params)?.error_rate;
            Ok((e1 + e2) / 2.0)
        })
        .collect::<Result<Vec<f64>>>()?;

    // points are ordered by (w_q, w_h), so the first minimum is the tie-break winner
    let mut best = 0;
    for (k, &e) in errors.iter().enumerate() {
        if e < errors[best] {
            best = k;
        }
    }
    Ok(TuneOutcome {
        w_q: points[best].0,
        w_h: points[best].1,
        cv_error: errors[best],
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_series, rng};
    use rand::Rng;

    fn shape_dataset(per_class: usize, n: usize, seed: u64) -> LabeledDataset {
        let mut r = rng(seed);
        let mut items = Vec::new();
        for k in 0..2 * per_class {
            let phase: f64 = r.random_range(0.0..0.5);
            let values: Vec<f64> = (0..n)
                .map(|i| {
                    let x = std::f64::consts::TAU * (i as f64 / n as f64 + phase / n as f64);
                    let base = if k % 2 == 0 { x.sin() } else { x.sin().signum() };
                    base + r.random_range(-0.05..0.05)
                })
                .collect();
            items.push((
                TimeSeries::new(values).unwrap(),
                if k % 2 == 0 { "sine" } else { "square" }.to_string(),
            ));
        }
        LabeledDataset::new(items).unwrap()
    }

    #[test]
    fn method_names_round_trip() {
        for m in MethodKind::ALL {
            assert_eq!(m.name().parse::<MethodKind>().unwrap(), m);
        }
        assert_eq!("DTW_ZNORM".parse::<MethodKind>().unwrap(), MethodKind::DtwZnorm);
        assert!("wdtw".parse::<MethodKind>().is_err());
    }

    #[test]
    fn ragged_dataset_rejected() {
        let a = TimeSeries::new(vec![1.0, 2.0]).unwrap();
        let b = TimeSeries::new(vec![1.0]).unwrap();
        assert!(LabeledDataset::new(vec![(a, "x".into()), (b, "y".into())]).is_err());
    }

    #[test]
    fn default_grid_matches_table() {
        let g = TuningGrid::default();
        assert_eq!(g.wq_ratios.len(), 11);
        assert_eq!(g.wh_ratios.len(), 10);
        assert_eq!(
            TuningGrid::samples(&g.wq_ratios, 100, 0),
            (0..=10).map(|k| 5 * k).collect::<Vec<_>>()
        );
        assert!(TuningGrid::new(vec![0.6], vec![0.1]).is_err());
        assert!(TuningGrid::new(vec![], vec![0.1]).is_err());
    }

    #[test]
    fn duplicates_are_classified_exactly() {
        let mut r = rng(3);
        let train: Vec<_> = (0..6).map(|k| (random_series(&mut r, 20), format!("c{k}"))).collect();
        let test = LabeledDataset::new(train[1..4].to_vec()).unwrap();
        let train = LabeledDataset::new(train).unwrap();
        for m in MethodKind::ALL {
            let params = MethodParams {
                w_h: 2,
                ..MethodParams::default()
            };
            let report = one_nn(&train, &test, m, &params).unwrap();
            assert_eq!(report.error_rate, 0.0, "{m}");
        }
    }

    #[test]
    fn separable_shapes_have_zero_error() {
        let train = shape_dataset(20, 60, 1);
        let test = shape_dataset(20, 60, 2);
        let report = one_nn(&train, &test, MethodKind::Dtw, &MethodParams::default()).unwrap();
        assert_eq!(report.error_rate, 0.0);
        assert_eq!(report.decisions.len(), 40);
    }

    #[test]
    fn single_class_and_empty_training() {
        let mut r = rng(4);
        let items: Vec<_> = (0..5).map(|_| (random_series(&mut r, 10), "a".to_string())).collect();
        let data = LabeledDataset::new(items).unwrap();
        assert_eq!(
            one_nn(&data, &data, MethodKind::Dtw, &MethodParams::default())
                .unwrap()
                .error_rate,
            0.0
        );
        let empty = LabeledDataset::new(Vec::new()).unwrap();
        assert!(one_nn(&empty, &data, MethodKind::Dtw, &MethodParams::default()).is_err());
    }

    #[test]
    fn nearest_neighbor_tie_goes_to_first() {
        let s = TimeSeries::new(vec![0.0, 1.0, 0.0]).unwrap();
        let train = LabeledDataset::new(vec![(s.clone(), "first".into()), (s.clone(), "second".into())]).unwrap();
        let test = LabeledDataset::new(vec![(s, "first".into())]).unwrap();
        let report = one_nn(&train, &test, MethodKind::Dtw, &MethodParams::default()).unwrap();
        assert_eq!(report.decisions[0].neighbor, 1);
    }

    #[test]
    fn folds_are_stratified_and_seeded() {
        let data = shape_dataset(5, 10, 9);
        let (folds, warnings) = stratified_folds(&data, 42);
        assert!(warnings.is_empty());
        assert_eq!(folds[0].len() + folds[1].len(), 10);
        for fold in &folds {
            let sines = fold.iter().filter(|&&k| data.items()[k].1 == "sine").count();
            assert!(sines == 2 || sines == 3);
        }
        assert_eq!(stratified_folds(&data, 42).0, folds);
    }

    #[test]
    fn singleton_class_is_flagged() {
        let mut r = rng(5);
        let mut items: Vec<_> = (0..4).map(|_| (random_series(&mut r, 8), "a".to_string())).collect();
        items.push((random_series(&mut r, 8), "lonely".to_string()));
        let data = LabeledDataset::new(items).unwrap();
        let (folds, warnings) = stratified_folds(&data, 1);
        assert_eq!(warnings, vec![Warning::SingletonClass("lonely".into())]);
        assert!(folds[0].contains(&4));
    }

    #[test]
    fn one_point_grid_and_determinism() {
        let data = shape_dataset(6, 30, 11);
        let grid = TuningGrid::new(vec![0.1], vec![0.2]).unwrap();
        let out = tune_params(&data, MethodKind::Rdtw, &grid, &MethodParams::default(), 7).unwrap();
        assert_eq!((out.w_q, out.w_h), (3, 6));

        let grid = TuningGrid::default();
        let first = tune_params(&data, MethodKind::Adtw, &grid, &MethodParams::default(), 7).unwrap();
        let second = tune_params(&data, MethodKind::Adtw, &grid, &MethodParams::default(), 7).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.w_h, 0);
    }

    #[test]
    fn lardtw_grid_avoids_zero_region() {
        let data = shape_dataset(3, 10, 12);
        let grid = TuningGrid::new(vec![0.0], vec![0.0, 0.05]).unwrap();
        let out = tune_params(&data, MethodKind::Lardtw, &grid, &MethodParams::default(), 1).unwrap();
        assert_eq!(out.w_h, 1);
    }

    #[test]
    fn constant_series_warns_under_normalization() {
        let s = TimeSeries::new(vec![2.0; 4]).unwrap();
        let t = TimeSeries::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let out = align_with(MethodKind::DtwZnorm, &MethodParams::default(), &s, &t).unwrap();
        assert_eq!(out.warnings, vec![Warning::ZeroVariance]);
    }
}
