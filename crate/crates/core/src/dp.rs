//! Banded dynamic-programming engine shared by every aligner, and plain DTW.
//!
//! The cumulative table only stores cells inside the Sakoe-Chiba band. Row
//! `i` (0-based) keeps `2h + 1` slots addressed by the diagonal offset
//! `k = j - i + h`, plus one sentinel slot on each side, so the diagonal
//! predecessor of slot `k` is slot `k` of the previous row, the upper one is
//! `k + 1` and the left one is `k - 1` of the current row.

use crate::path::AlignmentPath;
use crate::series::TimeSeries;

/// Squared difference, the base point distance.
#[inline]
pub fn pointwise_cost(x: f64, y: f64) -> f64 {
    let d = x - y;
    d * d
}

/// Sakoe-Chiba band half-width `w_q`; `None` means unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BandConfig {
    half_width: Option<usize>,
}

impl BandConfig {
    pub fn new(half_width: usize) -> Self {
        Self {
            half_width: Some(half_width),
        }
    }

    pub fn unbounded() -> Self {
        Self { half_width: None }
    }

    /// Half-width as a fraction of the series length, rounded to the nearest sample.
    pub fn from_ratio(ratio: f64, n: usize) -> Self {
        Self::new(ratio_to_samples(ratio, n))
    }

    pub fn half_width(&self) -> Option<usize> {
        self.half_width
    }

    /// `w_b = 1 + 2 w_q`, or `None` when unconstrained.
    pub fn band_width(&self) -> Option<usize> {
        self.half_width.map(|h| 1 + 2 * h)
    }

    /// Half-width actually used for lengths `n` and `m`.
    ///
    /// Widened to `|n - m|` so that `(n, m)` stays reachable, and capped at
    /// `max(n, m) - 1` since a wider band adds no cells.
    pub fn effective_half_width(&self, n: usize, m: usize) -> usize {
        let cap = n.max(m).saturating_sub(1);
        let gap = n.abs_diff(m);
        match self.half_width {
            Some(h) => h.max(gap).min(cap),
            None => cap,
        }
    }

    pub fn contains(&self, n: usize, m: usize, a: usize, b: usize) -> bool {
        a.abs_diff(b) <= self.effective_half_width(n, m)
    }
}

pub(crate) fn ratio_to_samples(ratio: f64, n: usize) -> usize {
    (ratio * n as f64).round().max(0.0) as usize
}

/// Cost of matching `s_a` with `t_b`, 1-based. Only in-band cells are queried.
pub trait CellCost {
    fn cost(&self, a: usize, b: usize) -> f64;
}

impl<F> CellCost for F
where
    F: Fn(usize, usize) -> f64,
{
    fn cost(&self, a: usize, b: usize) -> f64 {
        self(a, b)
    }
}

/// Result of a single alignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub path: AlignmentPath,
    pub measure: f64,
}

/// Geometry of the banded table for one `(n, m, band)` triple.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BandLayout {
    pub n: usize,
    pub m: usize,
    pub h: usize,
}

impl BandLayout {
    pub fn new(n: usize, m: usize, band: BandConfig) -> Self {
        assert!(n >= 1 && m >= 1, "series lengths must be positive");
        Self {
            n,
            m,
            h: band.effective_half_width(n, m),
        }
    }

    /// Slots per row, excluding sentinels.
    pub fn width(&self) -> usize {
        2 * self.h + 1
    }

    /// Inclusive 0-based column range of row `i`.
    pub fn columns(&self, i: usize) -> (usize, usize) {
        (i.saturating_sub(self.h), (i + self.h).min(self.m - 1))
    }

    /// Slot of column `j` in row `i`.
    #[inline]
    pub fn slot(&self, i: usize, j: usize) -> usize {
        j + self.h - i
    }

    pub fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.m && i.abs_diff(j) <= self.h
    }
}

/// Row-ordered cost source, queried cell by cell so the cost work can
/// overlap the DP recurrence. Rows are started exactly once, in order
/// `0..n`, and within a row cells are requested left to right.
pub(crate) trait RowCost {
    /// Begins row `i`, whose band columns are `jlo..jlo + len`, 0-based.
    fn start_row(&mut self, i: usize, jlo: usize, len: usize);
    /// Cost of column `jlo + idx` of the current row.
    fn cell(&mut self, idx: usize) -> f64;
}

pub(crate) struct Pointwise<'a> {
    s: &'a [f64],
    t: &'a [f64],
    x: f64,
    jlo: usize,
}

impl<'a> Pointwise<'a> {
    pub fn new(s: &'a [f64], t: &'a [f64]) -> Self {
        Self { s, t, x: 0.0, jlo: 0 }
    }
}

impl RowCost for Pointwise<'_> {
    #[inline]
    fn start_row(&mut self, i: usize, jlo: usize, _len: usize) {
        self.x = self.s[i];
        self.jlo = jlo;
    }

    #[inline]
    fn cell(&mut self, idx: usize) -> f64 {
        pointwise_cost(self.x, self.t[self.jlo + idx])
    }
}

struct CellRows<'a, C: ?Sized> {
    cost: &'a C,
    a: usize,
    b0: usize,
}

impl<C: CellCost + ?Sized> RowCost for CellRows<'_, C> {
    fn start_row(&mut self, i: usize, jlo: usize, _len: usize) {
        self.a = i + 1;
        self.b0 = jlo + 1;
    }

    fn cell(&mut self, idx: usize) -> f64 {
        self.cost.cost(self.a, self.b0 + idx)
    }
}

/// Materialized in-band cell costs; out-of-band cells read as `+inf`.
#[derive(Debug, Clone)]
pub struct BandCostTable {
    layout: BandLayout,
    values: Vec<f64>,
}

impl BandCostTable {
    pub(crate) fn collect<R: RowCost>(rows: &mut R, layout: BandLayout) -> Self {
        let width = layout.width();
        let mut values = vec![f64::INFINITY; layout.n * width];
        for i in 0..layout.n {
            let (jlo, jhi) = layout.columns(i);
            let len = jhi - jlo + 1;
            let start = i * width + layout.slot(i, jlo);
            rows.start_row(i, jlo, len);
            for (idx, v) in values[start..start + len].iter_mut().enumerate() {
                *v = rows.cell(idx);
            }
        }
        Self { layout, values }
    }

    pub fn rows(&self) -> usize {
        self.layout.n
    }

    pub fn cols(&self) -> usize {
        self.layout.m
    }

    /// Effective band half-width the table was built with.
    pub fn half_width(&self) -> usize {
        self.layout.h
    }

    /// All in-band cells as `(a, b, cost)`, 1-based, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let layout = self.layout;
        (0..layout.n).flat_map(move |i| {
            let (jlo, jhi) = layout.columns(i);
            (jlo..=jhi).map(move |j| (i + 1, j + 1, self.get(i, j)))
        })
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.layout.width() + self.layout.slot(i, j)]
    }
}

impl CellCost for BandCostTable {
    fn cost(&self, a: usize, b: usize) -> f64 {
        if a == 0 || b == 0 || !self.layout.in_band(a - 1, b - 1) {
            return f64::INFINITY;
        }
        self.get(a - 1, b - 1)
    }
}

/// Minimum-cost path through the band for an arbitrary cell cost.
///
/// Ties during backtracking prefer the diagonal predecessor, then the left
/// one `(a, b - 1)`, then the upper one `(a - 1, b)`.
pub fn dp_align<C: CellCost + ?Sized>(cost: &C, n: usize, m: usize, band: BandConfig) -> Alignment {
    let layout = BandLayout::new(n, m, band);
    align_rows(&mut CellRows { cost, a: 0, b0: 0 }, layout)
}

/// Plain DTW with squared-difference point cost.
pub fn dtw(s: &TimeSeries, t: &TimeSeries, band: BandConfig) -> Alignment {
    let layout = BandLayout::new(s.len(), t.len(), band);
    align_rows(&mut Pointwise::new(s.values(), t.values()), layout)
}

pub(crate) fn align_rows<R: RowCost>(rows: &mut R, layout: BandLayout) -> Alignment {
    // Same arithmetic either way (no fma); wider registers only speed up the row loops.
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx2") {
        #[target_feature(enable = "avx2")]
        fn wide<R: RowCost>(rows: &mut R, layout: BandLayout) -> Alignment {
            align_rows_impl(rows, layout)
        }
        // SAFETY: the feature was detected at runtime.
        return unsafe { wide(rows, layout) };
    }
    align_rows_impl(rows, layout)
}

#[inline(always)]
fn align_rows_impl<R: RowCost>(rows: &mut R, layout: BandLayout) -> Alignment {
    let BandLayout { n, m, h } = layout;
    let stride = layout.width() + 2;
    let mut acc = vec![f64::INFINITY; n * stride];

    // Row 0: only left predecessors.
    let (jlo, jhi) = layout.columns(0);
    let len = jhi - jlo + 1;
    rows.start_row(0, jlo, len);
    let klo = layout.slot(0, jlo);
    let mut running = 0.0;
    for idx in 0..len {
        running += rows.cell(idx);
        acc[klo + idx + 1] = running;
    }

    for i in 1..n {
        let (jlo, jhi) = layout.columns(i);
        let len = jhi - jlo + 1;
        rows.start_row(i, jlo, len);
        let klo = layout.slot(i, jlo);
        let (done, rest) = acc.split_at_mut(i * stride);
        let prev = &done[(i - 1) * stride + klo + 1..i * stride];
        let cur = &mut rest[klo + 1..klo + 1 + len];
        let prev = &prev[..len + 1];
        let mut left = f64::INFINITY;
        for idx in 0..len {
            // diagonal and up first, so only one min sits on the carried dependency
            let up = prev[idx].min(prev[idx + 1]);
            let v = rows.cell(idx) + up.min(left);
            cur[idx] = v;
            left = v;
        }
    }

    let at = |i: usize, j: usize| acc[i * stride + j + h - i + 1];
    let measure = at(n - 1, m - 1);

    let mut pairs = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n - 1, m - 1);
    pairs.push((n, m));
    while i > 0 || j > 0 {
        let candidates = [
            (i > 0 && j > 0, i.wrapping_sub(1), j.wrapping_sub(1)),
            (j > 0, i, j.wrapping_sub(1)),
            (i > 0, i.wrapping_sub(1), j),
        ];
        let mut choice: Option<(usize, usize, f64)> = None;
        for (ok, ci, cj) in candidates {
            if !ok || !layout.in_band(ci, cj) {
                continue;
            }
            let v = at(ci, cj);
            if choice.is_none_or(|(_, _, best)| v < best) {
                choice = Some((ci, cj, v));
            }
        }
        let (ci, cj, _) = choice.expect("a non-origin cell always has an in-band predecessor");
        (i, j) = (ci, cj);
        pairs.push((i + 1, j + 1));
    }
    pairs.reverse();

    Alignment {
        path: AlignmentPath::from_pairs(pairs),
        measure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::validate_path;
    use crate::testutil::{brute_force_min, random_series, rng, ts};
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn pointwise_examples() {
        assert_eq!(pointwise_cost(3.0, 3.0), 0.0);
        assert_eq!(pointwise_cost(1.0, 3.0), 4.0);
        assert_eq!(pointwise_cost(-2.0, 1.0), 9.0);
    }

    #[test]
    fn zero_cost_prefers_diagonal() {
        let out = dp_align(&|_: usize, _: usize| 0.0, 3, 3, BandConfig::new(3));
        assert_eq!(out.measure, 0.0);
        assert_eq!(out.path, AlignmentPath::diagonal(3));
    }

    #[test]
    fn off_diagonal_unit_cost() {
        let cost = |a: usize, b: usize| if a == b { 0.0 } else { 1.0 };
        let out = dp_align(&cost, 3, 3, BandConfig::unbounded());
        assert_eq!(out.measure, 0.0);
        assert_eq!(out.path, AlignmentPath::diagonal(3));
    }

    #[test]
    fn random_table_matches_enumeration() {
        let mut r = rng(7);
        let table: Vec<Vec<f64>> = (0..5).map(|_| (0..5).map(|_| r.random::<f64>()).collect()).collect();
        let cost = |a: usize, b: usize| table[a - 1][b - 1];
        let out = dp_align(&cost, 5, 5, BandConfig::unbounded());
        let oracle = brute_force_min(5, 5, 5, &cost);
        assert!((out.measure - oracle).abs() < 1e-12);
        let along: f64 = out.path.iter().map(|(a, b)| cost(a, b)).sum();
        assert!((along - out.measure).abs() < 1e-12);
    }

    #[test]
    fn dtw_examples() {
        let s = ts(&[0.0, 1.0, 0.0]);
        let out = dtw(&s, &s, BandConfig::unbounded());
        assert_eq!(out.measure, 0.0);
        assert_eq!(out.path.pairs(), &[(1, 1), (2, 2), (3, 3)]);

        let out = dtw(&ts(&[0.0, 0.0, 1.0, 0.0]), &ts(&[0.0, 1.0, 0.0]), BandConfig::new(1));
        assert_eq!(out.measure, 0.0);
        assert_eq!(out.path.pairs(), &[(1, 1), (2, 1), (3, 2), (4, 3)]);

        let out = dtw(&ts(&[1.0, 2.0, 3.0]), &ts(&[2.0, 2.0, 2.0]), BandConfig::unbounded());
        assert_eq!(out.measure, 2.0);
    }

    #[test]
    fn unequal_lengths_widen_band() {
        let s = ts(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        let t = ts(&[0.0, 5.0]);
        let band = BandConfig::new(0);
        assert_eq!(band.effective_half_width(6, 2), 4);
        let out = dtw(&s, &t, band);
        assert!(validate_path(&out.path, 6, 2));
        let oracle = brute_force_min(6, 2, 4, &|a, b| pointwise_cost(s.at(a), t.at(b)));
        assert!((out.measure - oracle).abs() < 1e-12);
    }

    #[test]
    fn single_point_series() {
        let out = dtw(&ts(&[2.0]), &ts(&[5.0]), BandConfig::new(0));
        assert_eq!(out.measure, 9.0);
        assert_eq!(out.path.pairs(), &[(1, 1)]);
        let out = dtw(&ts(&[2.0]), &ts(&[1.0, 3.0]), BandConfig::new(0));
        assert_eq!(out.measure, 2.0);
        assert_eq!(out.path.pairs(), &[(1, 1), (1, 2)]);
    }

    #[test]
    fn table_lookup_outside_band_is_infinite() {
        let s = ts(&[1.0, 2.0, 3.0, 4.0]);
        let layout = BandLayout::new(4, 4, BandConfig::new(1));
        let table = BandCostTable::collect(&mut Pointwise::new(s.values(), s.values()), layout);
        assert!(table.cost(1, 3).is_infinite());
        assert_eq!(table.cost(2, 3), 1.0);
        assert_eq!(table.cells().count(), 4 + 3 + 3);
    }

    proptest! {
        #[test]
        fn matches_enumeration(n in 1usize..7, m in 1usize..7, wq in 0usize..7, seed in any::<u64>()) {
            let mut r = rng(seed);
            let s = random_series(&mut r, n);
            let t = random_series(&mut r, m);
            let band = BandConfig::new(wq);
            let out = dtw(&s, &t, band);
            prop_assert!(validate_path(&out.path, n, m));
            let h = band.effective_half_width(n, m);
            prop_assert!(out.path.iter().all(|(a, b)| a.abs_diff(b) <= h));
            let oracle = brute_force_min(n, m, h, &|a, b| pointwise_cost(s.at(a), t.at(b)));
            prop_assert!((out.measure - oracle).abs() <= 1e-9 * oracle.max(1.0));
        }

        #[test]
        fn self_alignment_is_diagonal(n in 1usize..40, wq in 0usize..10, seed in any::<u64>()) {
            let s = random_series(&mut rng(seed), n);
            let out = dtw(&s, &s, BandConfig::new(wq));
            prop_assert_eq!(out.measure, 0.0);
            prop_assert!(out.path.is_diagonal());
        }

        #[test]
        fn symmetric_and_monotone_in_band(n in 2usize..30, wq in 0usize..10, seed in any::<u64>()) {
            let mut r = rng(seed);
            let s = random_series(&mut r, n);
            let t = random_series(&mut r, n);
            let fwd = dtw(&s, &t, BandConfig::new(wq)).measure;
            let back = dtw(&t, &s, BandConfig::new(wq)).measure;
            prop_assert!((fwd - back).abs() <= 1e-12 * fwd.max(1.0));
            let wider = dtw(&s, &t, BandConfig::new(wq + 1)).measure;
            prop_assert!(wider <= fwd + 1e-12 * fwd.max(1.0));
        }
    }
}
