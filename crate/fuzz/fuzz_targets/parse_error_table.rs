#![no_main]

use libfuzzer_sys::fuzz_target;
use tswarp::evaluate::{average_ranks, win_loss};
use tswarp::io::{parse_error_table, write_error_table};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(table) = parse_error_table(text) else { return };
    assert_eq!(
        parse_error_table(&write_error_table(&table)).expect("written table re-parses"),
        table
    );
    // downstream consumers must not panic on anything the parser accepts
    let _ = average_ranks(&table.errors);
    if table.errors.len() >= 2 {
        let _ = win_loss(&table.errors[0], &table.errors[1]);
    }
});
