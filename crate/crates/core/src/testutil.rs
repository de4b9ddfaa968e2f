use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::series::TimeSeries;

/// Minimum path cost by exhaustive enumeration of every valid path.
pub fn brute_force_min(n: usize, m: usize, h: usize, cost: &dyn Fn(usize, usize) -> f64) -> f64 {
    fn walk(
        a: usize,
        b: usize,
        n: usize,
        m: usize,
        h: usize,
        acc: f64,
        cost: &dyn Fn(usize, usize) -> f64,
        best: &mut f64,
    ) {
        let acc = acc + cost(a, b);
        if (a, b) == (n, m) {
            *best = best.min(acc);
            return;
        }
        for (da, db) in [(1, 1), (0, 1), (1, 0)] {
            let (na, nb) = (a + da, b + db);
            if na <= n && nb <= m && na.abs_diff(nb) <= h {
                walk(na, nb, n, m, h, acc, cost, best);
            }
        }
    }
    let mut best = f64::INFINITY;
    walk(1, 1, n, m, h, 0.0, cost, &mut best);
    best
}

pub fn random_series(rng: &mut impl Rng, n: usize) -> TimeSeries {
    TimeSeries::new((0..n).map(|_| rng.random_range(-2.0..2.0)).collect()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ts(values: &[f64]) -> TimeSeries {
    TimeSeries::new(values.to_vec()).unwrap()
}
