mod common;

use common::{close, enumerate_min, oracle_local_cost, oracle_regional_cost, random_series, rng};
use proptest::prelude::*;
use rand::Rng;
use tswarp::affine::affine_objective;
use tswarp::*;

fn ts(v: &[f64]) -> TimeSeries {
    TimeSeries::new(v.to_vec()).unwrap()
}

struct Table(Vec<Vec<f64>>);

impl CellCost for Table {
    fn cost(&self, a: usize, b: usize) -> f64 {
        self.0[a - 1][b - 1]
    }
}

#[test]
fn random_table_matches_enumeration() {
    let mut r = rng(1);
    for _ in 0..50 {
        let t = Table(
            (0..5)
                .map(|_| (0..5).map(|_| r.random_range(0.0..10.0)).collect())
                .collect(),
        );
        let out = dp_align(&t, 5, 5, BandConfig::unbounded());
        let oracle = enumerate_min(5, 5, 5, |a, b| t.cost(a, b));
        assert!(close(out.measure, oracle, 1e-12));
        let along: f64 = out.path.iter().map(|(a, b)| t.cost(a, b)).sum();
        assert!(close(along, out.measure, 1e-12));
    }
}

#[test]
fn hand_examples() {
    let out = dtw(&ts(&[0.0, 0.0, 1.0, 0.0]), &ts(&[0.0, 1.0, 0.0]), BandConfig::new(1));
    assert_eq!(out.measure, 0.0);
    assert_eq!(out.path.pairs(), &[(1, 1), (2, 1), (3, 2), (4, 3)]);

    let out = dtw(&ts(&[1.0, 2.0, 3.0]), &ts(&[2.0, 2.0, 2.0]), BandConfig::unbounded());
    assert_eq!(out.measure, 2.0);
}

#[test]
fn adtw_recovers_global_affine_map() {
    let t = random_series(&mut rng(4), 80);
    let s = apply_affine(&t, AffineParams::new(2.5, -0.7));
    let out = adtw(
        &s,
        &t,
        BandConfig::from_ratio(0.5, 80),
        &ScalingBounds::default(),
        &EmConfig::default(),
    );
    assert!((out.params.c - 2.5).abs() < 1e-6 && (out.params.e + 0.7).abs() < 1e-6);
    assert!(out.path.is_diagonal() && out.measure < 1e-12);
}

#[test]
fn gardtw_recovers_global_affine_map() {
    let t = random_series(&mut rng(5), 80);
    let s = apply_affine(&t, AffineParams::new(3.0, -1.0));
    let out = gardtw(
        &s,
        &t,
        BandConfig::from_ratio(0.5, 80),
        2,
        &ScalingBounds::default(),
        &EmConfig::default(),
    );
    assert!((out.params.c - 3.0).abs() < 1e-6 && (out.params.e + 1.0).abs() < 1e-6);
    assert!(out.measure < 1e-10);
}

#[test]
fn lardtw_absorbs_piecewise_scaling() {
    // Each block of t is an affine image of the matching block of s; only
    // windows straddling a block edge can cost anything.
    let n = 90;
    let s = random_series(&mut rng(6), n);
    let scales = [0.5, 2.0, 1.5];
    let t = TimeSeries::new(
        s.values()
            .iter()
            .enumerate()
            .map(|(i, &x)| x / scales[i / 30])
            .collect(),
    )
    .unwrap();
    let out = lardtw(&s, &t, BandConfig::new(10), 2, &ScalingBounds::default()).unwrap();
    let table = tswarp::combined::local_cost_table(&s, &t, BandConfig::new(10), 2, &ScalingBounds::default()).unwrap();
    for a in 1..=n {
        let block = (a - 1) / 30;
        if (block * 30 + 3..=block * 30 + 28).contains(&a) {
            assert!(table.cost(a, a) < 1e-8, "interior cell {a}");
        }
    }
    // The diagonal only pays at the two block edges.
    let diagonal: f64 = (1..=n).map(|a| table.cost(a, a)).sum();
    assert!(out.measure <= diagonal + 1e-12);
}

#[test]
fn adtw_objectives_never_increase() {
    let mut r = rng(7);
    for _ in 0..100 {
        let s = random_series(&mut r, 50);
        let t = random_series(&mut r, 50);
        let out = adtw(
            &s,
            &t,
            BandConfig::from_ratio(0.2, 50),
            &ScalingBounds::default(),
            &EmConfig::default(),
        );
        for w in out.objectives.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "{:?}", out.objectives);
        }
        assert!(close(
            out.measure,
            affine_objective(&s, &t, &out.path, out.params),
            1e-9
        ));
    }
}

proptest! {
    #[test]
    fn dtw_matches_enumeration(n in 1usize..7, m in 1usize..7, h in 0usize..7, seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_series(&mut r, n);
        let t = random_series(&mut r, m);
        let out = dtw(&s, &t, BandConfig::new(h));
        prop_assert!(validate_path(&out.path, n, m));
        let h = h.max(n.abs_diff(m));
        let oracle = enumerate_min(n, m, h, |a, b| (s.at(a) - t.at(b)).powi(2));
        prop_assert!(close(out.measure, oracle, 1e-12));
    }

    #[test]
    fn rdtw_matches_enumeration(n in 1usize..7, m in 1usize..7, wh in 0usize..4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_series(&mut r, n);
        let t = random_series(&mut r, m);
        let out = rdtw(&s, &t, BandConfig::unbounded(), wh);
        let oracle = enumerate_min(n, m, n.max(m), |a, b| oracle_regional_cost(&s, &t, a, b, wh));
        prop_assert!(close(out.measure, oracle, 1e-9));
    }

    #[test]
    fn lardtw_matches_enumeration(n in 1usize..7, m in 1usize..7, wh in 1usize..4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_series(&mut r, n);
        let t = random_series(&mut r, m);
        let out = lardtw(&s, &t, BandConfig::unbounded(), wh, &ScalingBounds::default()).unwrap();
        prop_assert!(validate_path(&out.path, n, m));
        let oracle = enumerate_min(n, m, n.max(m), |a, b| oracle_local_cost(&s, &t, a, b, wh, 0.2, 5.0));
        prop_assert!(close(out.measure, oracle, 1e-9));
    }

    #[test]
    fn dtw_measure_is_symmetric(n in 1usize..40, m in 1usize..40, h in 0usize..10, seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_series(&mut r, n);
        let t = random_series(&mut r, m);
        let band = BandConfig::new(h);
        prop_assert!(close(dtw(&s, &t, band).measure, dtw(&t, &s, band).measure, 1e-12));
    }

    #[test]
    fn wider_band_never_costs_more(n in 2usize..40, h in 0usize..10, seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_series(&mut r, n);
        let t = random_series(&mut r, n);
        let narrow = rdtw(&s, &t, BandConfig::new(h), 2).measure;
        let wide = rdtw(&s, &t, BandConfig::new(h + 1), 2).measure;
        prop_assert!(wide <= narrow + 1e-9 * narrow.max(1.0));
    }

    #[test]
    fn gardtw_with_zero_region_is_adtw(n in 2usize..30, seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_series(&mut r, n);
        let t = random_series(&mut r, n);
        let (band, bounds, em) = (BandConfig::new(n / 4), ScalingBounds::default(), EmConfig::default());
        let g = gardtw(&s, &t, band, 0, &bounds, &em);
        let a = adtw(&s, &t, band, &bounds, &em);
        prop_assert_eq!(g.path, a.path);
        prop_assert!(close(g.measure, a.measure, 1e-9));
    }
}
