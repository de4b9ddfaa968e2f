//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tswarp::{AffineParams, AlignmentPath, TimeSeries};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_series(rng: &mut impl Rng, n: usize) -> TimeSeries {
    TimeSeries::new((0..n).map(|_| rng.random_range(-2.0..2.0)).collect()).unwrap()
}

/// `|x - y| <= tol * max(|x|, |y|, 1)`.
pub fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

/// Every valid path from (1,1) to (n,m) inside the half-width `h` band.
pub fn all_paths(n: usize, m: usize, h: usize) -> Vec<Vec<(usize, usize)>> {
    fn walk(
        a: usize,
        b: usize,
        n: usize,
        m: usize,
        h: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        cur.push((a, b));
        if (a, b) == (n, m) {
            out.push(cur.clone());
        } else {
            for (na, nb) in [(a + 1, b + 1), (a, b + 1), (a + 1, b)] {
                if na <= n && nb <= m && na.abs_diff(nb) <= h {
                    walk(na, nb, n, m, h, cur, out);
                }
            }
        }
        cur.pop();
    }
    let mut out = Vec::new();
    walk(1, 1, n, m, h, &mut Vec::new(), &mut out);
    out
}

pub fn enumerate_min(n: usize, m: usize, h: usize, cost: impl Fn(usize, usize) -> f64) -> f64 {
    all_paths(n, m, h)
        .iter()
        .map(|p| p.iter().map(|&(a, b)| cost(a, b)).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// In-range pairs `(a + w, b + w)`, `|w| <= w_h`, 1-based.
pub fn window(n: usize, m: usize, a: usize, b: usize, w_h: usize) -> Vec<(usize, usize)> {
    let w_h = w_h as isize;
    (-w_h..=w_h)
        .map(|w| (a as isize + w, b as isize + w))
        .filter(|&(x, y)| x >= 1 && y >= 1 && x as usize <= n && y as usize <= m)
        .map(|(x, y)| (x as usize, y as usize))
        .collect()
}

pub fn oracle_regional_cost(s: &TimeSeries, t: &TimeSeries, a: usize, b: usize, w_h: usize) -> f64 {
    let pairs = window(s.len(), t.len(), a, b, w_h);
    pairs.iter().map(|&(x, y)| (s.at(x) - t.at(y)).powi(2)).sum::<f64>() / pairs.len() as f64
}

/// Two-pass least squares for `x ≈ c y + e`, clamped scale, unit scale when
/// `y` is (numerically) constant.
pub fn least_squares(xy: &[(f64, f64)], c_min: f64, c_max: f64) -> AffineParams {
    let w = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / w;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / w;
    let sxy: f64 = xy.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = xy.iter().map(|&(_, y)| (y - my).powi(2)).sum();
    let yy: f64 = xy.iter().map(|&(_, y)| y * y).sum();
    let c = if syy <= 1e-12 * yy || syy == 0.0 {
        1.0
    } else {
        sxy / syy
    };
    let c = c.clamp(c_min, c_max);
    AffineParams::new(c, mx - c * my)
}

pub fn oracle_local_cost(
    s: &TimeSeries,
    t: &TimeSeries,
    a: usize,
    b: usize,
    w_h: usize,
    c_min: f64,
    c_max: f64,
) -> f64 {
    let xy: Vec<(f64, f64)> = window(s.len(), t.len(), a, b, w_h)
        .into_iter()
        .map(|(x, y)| (s.at(x), t.at(y)))
        .collect();
    let p = least_squares(&xy, c_min, c_max);
    xy.iter().map(|&(x, y)| (x - p.c * y - p.e).powi(2)).sum::<f64>() / xy.len() as f64
}

/// Minimizes a function convex in each coordinate: golden-section over `c`
/// in `[c_lo, c_hi]`, with an inner golden-section over `e`.
pub fn numeric_min(f: impl Fn(f64, f64) -> f64, c_lo: f64, c_hi: f64, e_lo: f64, e_hi: f64) -> (f64, f64) {
    let inner = |c: f64| golden(|e| f(c, e), e_lo, e_hi);
    // coarse grid first so the bracket is tight before refinement
    let steps = 200;
    let (mut best_c, mut best) = (c_lo, f64::INFINITY);
    for k in 0..=steps {
        let c = c_lo + (c_hi - c_lo) * k as f64 / steps as f64;
        let v = f(c, inner(c));
        if v < best {
            best = v;
            best_c = c;
        }
    }
    let h = (c_hi - c_lo) / steps as f64;
    let c = golden(|c| f(c, inner(c)), (best_c - h).max(c_lo), (best_c + h).min(c_hi));
    (c, inner(c))
}

fn golden(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-13 * hi.abs().max(lo.abs()).max(1.0) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    (lo + hi) / 2.0
}

pub fn as_path(pairs: &[(usize, usize)]) -> AlignmentPath {
    AlignmentPath::from_pairs(pairs.to_vec())
}
