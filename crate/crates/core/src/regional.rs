//! Regional DTW: the point cost is replaced by the mean squared difference
//! over a diagonal window of half-width `w_h` around each matched pair.

use crate::dp::{align_rows, pointwise_cost, Alignment, BandConfig, BandCostTable, BandLayout, Pointwise, RowCost};
use crate::series::TimeSeries;
use crate::window::{direct, Kernel, RollingWindows, WindowAcc};

/// Region half-width `w_h`, in samples. The region spans `1 + 2 w_h` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RegionConfig {
    pub half_width: usize,
}

impl RegionConfig {
    pub fn new(half_width: usize) -> Self {
        Self { half_width }
    }

    /// Half-width as a fraction of the series length, rounded to the nearest sample.
    pub fn from_ratio(ratio: f64, n: usize) -> Self {
        Self::new(crate::dp::ratio_to_samples(ratio, n))
    }

    /// `w_r = 1 + 2 w_h`.
    pub fn width(&self) -> usize {
        1 + 2 * self.half_width
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct DistanceSum {
    sum: f64,
    count: usize,
}

impl WindowAcc for DistanceSum {
    #[inline]
    fn push(&mut self, x: f64, y: f64) {
        self.sum += pointwise_cost(x, y);
        self.count += 1;
    }
}

impl DistanceSum {
    #[inline]
    fn mean(&self) -> f64 {
        // Rolling subtraction can leave a tiny negative residue.
        (self.sum / self.count as f64).max(0.0)
    }
}

/// `d_r` at 1-based `(a, b)` by direct summation, with the number of
/// in-range window terms `w_{a,b}`.
pub fn regional_cost_direct(s: &TimeSeries, t: &TimeSeries, a: usize, b: usize, w_h: usize) -> (f64, usize) {
    let acc: DistanceSum = direct(s.values(), t.values(), a - 1, b - 1, w_h);
    (acc.mean(), acc.count)
}

/// Fields: summed distance, term count.
struct RegionalKernel;

impl Kernel for RegionalKernel {
    const FIELDS: usize = 2;

    #[inline(always)]
    fn term<const F: usize>(x: f64, y: f64) -> f64 {
        match F {
            0 => pointwise_cost(x, y),
            _ => 1.0,
        }
    }
}

struct RegionalRows<'a> {
    windows: RollingWindows<'a, RegionalKernel>,
    costs: Vec<f64>,
}

impl RowCost for RegionalRows<'_> {
    #[inline(always)]
    fn start_row(&mut self, i: usize, jlo: usize, len: usize) {
        self.windows.start_row(i, jlo, len);
        let (sum, count) = (self.windows.field(0), self.windows.field(1));
        for ((c, &s), &w) in self.costs.iter_mut().zip(sum).zip(count) {
            *c = DistanceSum {
                sum: s,
                count: w as usize,
            }
            .mean();
        }
    }

    #[inline]
    fn cell(&mut self, idx: usize) -> f64 {
        self.costs[idx]
    }
}

fn regional_rows<'a>(s: &'a TimeSeries, t: &'a TimeSeries, w_h: usize, layout: BandLayout) -> RegionalRows<'a> {
    RegionalRows {
        windows: RollingWindows::new(s.values(), t.values(), w_h, layout),
        costs: vec![0.0; layout.width()],
    }
}

/// All in-band `d_r` values, built with rolling window sums.
pub fn regional_cost_table(s: &TimeSeries, t: &TimeSeries, band: BandConfig, w_h: usize) -> BandCostTable {
    let layout = BandLayout::new(s.len(), t.len(), band);
    if w_h == 0 {
        return BandCostTable::collect(&mut Pointwise::new(s.values(), t.values()), layout);
    }
    BandCostTable::collect(&mut regional_rows(s, t, w_h, layout), layout)
}

/// Regional DTW. With `w_h = 0` this is exactly [`crate::dtw`].
pub fn rdtw(s: &TimeSeries, t: &TimeSeries, band: BandConfig, w_h: usize) -> Alignment {
    let layout = BandLayout::new(s.len(), t.len(), band);
    if w_h == 0 {
        return align_rows(&mut Pointwise::new(s.values(), t.values()), layout);
    }
    align_rows(&mut regional_rows(s, t, w_h, layout), layout)
}
