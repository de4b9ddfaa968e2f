#![no_main]

use libfuzzer_sys::fuzz_target;
use tswarp::io::{parse_series, write_series};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_series(text) {
        assert!(s.values().iter().all(|v| v.is_finite()));
        assert_eq!(parse_series(&write_series(&s)).unwrap(), s);
    }
});
