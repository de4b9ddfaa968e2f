#![no_main]

use libfuzzer_sys::fuzz_target;
use tswarp::io::{parse_ucr, write_ucr};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(ds) = parse_ucr(text) {
        // what we write, we read back unchanged
        let again = parse_ucr(&write_ucr(&ds)).expect("written dataset re-parses");
        assert_eq!(again, ds);
    }
});
