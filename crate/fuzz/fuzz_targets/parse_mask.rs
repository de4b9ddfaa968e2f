#![no_main]

use libfuzzer_sys::fuzz_target;
use tswarp::io::{parse_mask, write_mask};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(mask) = parse_mask(text) {
        assert_eq!(parse_mask(&write_mask(&mask)).unwrap(), mask);
    }
});
