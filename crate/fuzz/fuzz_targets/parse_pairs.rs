#![no_main]

use libfuzzer_sys::fuzz_target;
use tswarp::io::{parse_pairs, parse_path, write_pairs};
use tswarp::validate_path;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pairs) = parse_pairs(text) {
        assert_eq!(parse_pairs(&write_pairs(&pairs)).unwrap(), pairs);
    }
    if let Ok(path) = parse_path(text) {
        if let Some(&(n, m)) = path.pairs().last() {
            let _ = validate_path(&path, n, m);
        }
    }
});
