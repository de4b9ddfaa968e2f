#![no_main]

// Recorded simulator samples come back from manifests; rebuilding one must
// fail cleanly, never panic.

use libfuzzer_sys::fuzz_target;
use tswarp::simulate::{build_components, build_global_affine, ComponentSample, GlobalAffineSample};
use tswarp::TimeSeries;

fuzz_target!(|data: &[u8]| {
    let Some((&n, json)) = data.split_first() else { return };
    let n = usize::from(n) + 1;
    if let Ok(sample) = serde_json::from_slice::<ComponentSample>(json) {
        if let Ok((s, t, truth)) = build_components(n, &sample) {
            assert_eq!((s.len(), t.len()), (n, n));
            assert!(truth.pairs().windows(2).all(|w| w[0].1 <= w[1].1));
        }
    }
    if let Ok(sample) = serde_json::from_slice::<GlobalAffineSample>(json) {
        let base = TimeSeries::new((0..n).map(|i| i as f64).collect()).unwrap();
        if let Ok((t, _)) = build_global_affine(&base, &sample) {
            assert_eq!(t.len(), n);
        }
    }
});
