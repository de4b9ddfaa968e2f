//! Diagonal sliding windows over a pair of series.
//!
//! The window of cell `(i, j)` is the run of pairs `(i + w, j + w)` for
//! `-w_h <= w <= w_h` with both indices in range. Moving one step down the
//! diagonal drops `(i - w_h - 1, j - w_h - 1)` and adds `(i + w_h, j + w_h)`
//! whenever those pairs exist, so window statistics roll in O(1).

use crate::dp::BandLayout;

/// Minimum rows between full recomputations, bounding drift from rolling
/// subtraction. Wide windows re-anchor less often (every `4 (2 w_h + 1)`
/// rows at most) so the direct sums stay a small share of the work.
pub(crate) const REANCHOR_INTERVAL: usize = 256;

fn reanchor_interval(half: usize) -> usize {
    REANCHOR_INTERVAL.max(4 * (2 * half + 1))
}

pub(crate) trait WindowAcc: Copy + Default {
    fn push(&mut self, x: f64, y: f64);
}

/// Inclusive offset range `(lo, hi)` of the window at 0-based `(i, j)`.
#[inline]
pub(crate) fn offsets(i: usize, j: usize, n: usize, m: usize, half: usize) -> (isize, isize) {
    let lo = -(half.min(i).min(j) as isize);
    let hi = half.min(n - 1 - i).min(m - 1 - j) as isize;
    (lo, hi)
}

pub(crate) fn direct<A: WindowAcc>(s: &[f64], t: &[f64], i: usize, j: usize, half: usize) -> A {
    let (lo, hi) = offsets(i, j, s.len(), t.len(), half);
    let mut acc = A::default();
    for w in lo..=hi {
        acc.push(s[(i as isize + w) as usize], t[(j as isize + w) as usize]);
    }
    acc
}

/// Per-pair terms summed over a window, one column of sums per field.
pub(crate) trait Kernel {
    /// Number of fields, at most [`MAX_FIELDS`].
    const FIELDS: usize;
    fn term<const F: usize>(x: f64, y: f64) -> f64;
}

pub(crate) const MAX_FIELDS: usize = 6;

/// Window sums for every in-band cell of the current row, stored field-major
/// so a row rolls forward in straight vectorizable loops.
pub(crate) struct RollingWindows<'a, K> {
    s: &'a [f64],
    t: &'a [f64],
    half: usize,
    layout: BandLayout,
    width: usize,
    prev: Vec<f64>,
    cur: Vec<f64>,
    klo: usize,
    len: usize,
    interval: usize,
    _kernel: std::marker::PhantomData<K>,
}

impl<'a, K: Kernel> RollingWindows<'a, K> {
    pub fn new(s: &'a [f64], t: &'a [f64], half: usize, layout: BandLayout) -> Self {
        let width = layout.width();
        Self {
            s,
            t,
            half,
            layout,
            width,
            prev: vec![0.0; K::FIELDS * width],
            cur: vec![0.0; K::FIELDS * width],
            klo: 0,
            len: 0,
            interval: reanchor_interval(half),
            _kernel: std::marker::PhantomData,
        }
    }

    /// Advances to row `i`, columns `jlo..jlo + len`. Rows must be visited in order.
    #[inline(always)]
    pub fn start_row(&mut self, i: usize, jlo: usize, len: usize) {
        std::mem::swap(&mut self.prev, &mut self.cur);
        let (n, m, half) = (self.s.len(), self.t.len(), self.half);
        self.klo = self.layout.slot(i, jlo);
        self.len = len;
        let jend = jlo + len;
        if i.is_multiple_of(self.interval) {
            self.direct_range(i, jlo, jend);
            return;
        }
        // Diagonals entering at column 0 have no predecessor.
        let mut j = jlo;
        if j == 0 {
            self.direct_range(i, 0, 1);
            j = 1;
        }
        // Pops start once j > half; pushes stop once j + half >= m.
        let pop_row = i > half;
        let push_row = i + half < n;
        let pop_from = if pop_row { half + 1 } else { usize::MAX };
        let push_until = if push_row { m.saturating_sub(half) } else { 0 };
        let mut cuts = [j, pop_from.clamp(j, jend), push_until.clamp(j, jend), jend];
        cuts[1..3].sort_unstable();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a >= b {
                continue;
            }
            match (a >= pop_from, a < push_until) {
                (true, true) => self.roll::<true, true>(i, a, b),
                (true, false) => self.roll::<true, false>(i, a, b),
                (false, true) => self.roll::<false, true>(i, a, b),
                (false, false) => self.roll::<false, false>(i, a, b),
            }
        }
    }

    fn direct_range(&mut self, i: usize, ja: usize, jb: usize) {
        let (s, t, half, width) = (self.s, self.t, self.half, self.width);
        for j in ja..jb {
            let k = self.layout.slot(i, j);
            let (lo, hi) = offsets(i, j, s.len(), t.len(), half);
            let mut sums = [0.0; MAX_FIELDS];
            for w in lo..=hi {
                let (x, y) = (s[(i as isize + w) as usize], t[(j as isize + w) as usize]);
                sums[0] += K::term::<0>(x, y);
                sums[1] += K::term::<1>(x, y);
                sums[2] += K::term::<2>(x, y);
                sums[3] += K::term::<3>(x, y);
                sums[4] += K::term::<4>(x, y);
                sums[5] += K::term::<5>(x, y);
            }
            for (f, &v) in sums.iter().enumerate().take(K::FIELDS) {
                self.cur[f * width + k] = v;
            }
        }
    }

    #[inline(always)]
    fn roll<const POP: bool, const PUSH: bool>(&mut self, i: usize, ja: usize, jb: usize) {
        for f in 0..K::FIELDS {
            match f {
                0 => self.roll_field::<0, POP, PUSH>(i, ja, jb),
                1 => self.roll_field::<1, POP, PUSH>(i, ja, jb),
                2 => self.roll_field::<2, POP, PUSH>(i, ja, jb),
                3 => self.roll_field::<3, POP, PUSH>(i, ja, jb),
                4 => self.roll_field::<4, POP, PUSH>(i, ja, jb),
                _ => self.roll_field::<5, POP, PUSH>(i, ja, jb),
            }
        }
    }

    #[inline(always)]
    fn roll_field<const F: usize, const POP: bool, const PUSH: bool>(&mut self, i: usize, ja: usize, jb: usize) {
        let (s, t, half, width) = (self.s, self.t, self.half, self.width);
        let len = jb - ja;
        let start = F * width + self.layout.slot(i, ja);
        let prev = &self.prev[start..start + len];
        let cur = &mut self.cur[start..start + len];
        match (POP, PUSH) {
            (true, true) => {
                let (x_out, x_in) = (s[i - half - 1], s[i + half]);
                let (y_out, y_in) = (&t[ja - half - 1..jb - half - 1], &t[ja + half..jb + half]);
                for (((c, &p), &yo), &yi) in cur.iter_mut().zip(prev).zip(y_out).zip(y_in) {
                    *c = p - K::term::<F>(x_out, yo) + K::term::<F>(x_in, yi);
                }
            }
            (true, false) => {
                let x_out = s[i - half - 1];
                for ((c, &p), &yo) in cur.iter_mut().zip(prev).zip(&t[ja - half - 1..jb - half - 1]) {
                    *c = p - K::term::<F>(x_out, yo);
                }
            }
            (false, true) => {
                let x_in = s[i + half];
                for ((c, &p), &yi) in cur.iter_mut().zip(prev).zip(&t[ja + half..jb + half]) {
                    *c = p + K::term::<F>(x_in, yi);
                }
            }
            (false, false) => cur.copy_from_slice(prev),
        }
    }

    /// Sums of `field` for the current row, in column order.
    #[inline]
    pub fn field(&self, field: usize) -> &[f64] {
        let start = field * self.width + self.klo;
        &self.cur[start..start + self.len]
    }
}
