//! Plain-text formats: UCR datasets, series, alignment paths, truth masks
//! and per-dataset error tables.
//!
//! Every parser takes the whole file contents and reports failures as
//! [`Error::Parse`] with a 1-based line number. Writers emit values with
//! Rust's shortest round-trip float formatting, so write → parse → write
//! is byte-identical.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::evaluate::LabeledDataset;
use crate::path::AlignmentPath;
use crate::series::TimeSeries;

/// Field separator of a delimited file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delimiter {
    Comma,
    Tab,
    /// Runs of spaces and tabs.
    Whitespace,
}

impl Delimiter {
    /// Comma if the record contains one, else tab, else whitespace.
    pub fn detect(record: &str) -> Self {
        if record.contains(',') {
            Delimiter::Comma
        } else if record.contains('\t') {
            Delimiter::Tab
        } else {
            Delimiter::Whitespace
        }
    }

    fn split<'a>(self, line: &'a str) -> Box<dyn Iterator<Item = &'a str> + 'a> {
        match self {
            Delimiter::Comma => Box::new(line.split(',').map(str::trim)),
            Delimiter::Tab => Box::new(line.split('\t').map(str::trim)),
            Delimiter::Whitespace => Box::new(line.split_whitespace()),
        }
    }
}

/// Non-blank lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_value(line: usize, field: usize, raw: &str) -> Result<f64> {
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(Error::parse(line, format!("field {field}: non-finite value {raw:?}"))),
        Err(_) => Err(Error::parse(line, format!("field {field}: {raw:?} is not a number"))),
    }
}

fn parse_index(line: usize, raw: &str) -> Result<usize> {
    match raw.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(Error::parse(line, format!("{raw:?} is not a positive index"))),
    }
}

/// Parses a UCR-style dataset: one record per line, class label first,
/// then the values. The delimiter is detected from the first record and all
/// records must have the same length.
pub fn parse_ucr(text: &str) -> Result<LabeledDataset> {
    let mut items = Vec::new();
    let mut delimiter = None;
    let mut expected = None;
    for (line, record) in records(text) {
        let d = *delimiter.get_or_insert_with(|| Delimiter::detect(record));
        let mut fields = d.split(record);
        let label = fields.next().unwrap_or_default();
        if label.is_empty() {
            return Err(Error::parse(line, "missing class label"));
        }
        // such a label could not be written back in any delimiter
        if label.contains([',', '\t']) {
            return Err(Error::parse(
                line,
                format!("class label {label:?} contains a comma or tab"),
            ));
        }
        let values = fields
            .enumerate()
            .map(|(k, raw)| parse_value(line, k + 2, raw))
            .collect::<Result<Vec<f64>>>()?;
        if values.is_empty() {
            return Err(Error::parse(line, "record has a label but no values"));
        }
        match expected {
            None => expected = Some(values.len()),
            Some(n) if n != values.len() => {
                return Err(Error::parse(
                    line,
                    format!(
                        "record has {} values, expected {n} as on the first record",
                        values.len()
                    ),
                ))
            }
            Some(_) => {}
        }
        items.push((TimeSeries::from_vec_unchecked(values), label.to_string()));
    }
    if items.is_empty() {
        return Err(Error::parse(1, "dataset is empty"));
    }
    LabeledDataset::new(items)
}

/// Comma-delimited UCR text, one record per line.
pub fn write_ucr(data: &LabeledDataset) -> String {
    let mut out = String::new();
    for (s, label) in data.items() {
        out.push_str(label);
        for v in s.values() {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

/// Parses a single series: values separated by commas, tabs, spaces or newlines.
pub fn parse_series(text: &str) -> Result<TimeSeries> {
    let mut values = Vec::new();
    for (line, record) in records(text) {
        let d = Delimiter::detect(record);
        for (k, raw) in d.split(record).enumerate() {
            if raw.is_empty() && d != Delimiter::Whitespace {
                return Err(Error::parse(line, format!("field {}: empty value", k + 1)));
            }
            values.push(parse_value(line, k + 1, raw)?);
        }
    }
    if values.is_empty() {
        return Err(Error::parse(1, "series is empty"));
    }
    Ok(TimeSeries::from_vec_unchecked(values))
}

/// One value per line.
pub fn write_series(s: &TimeSeries) -> String {
    let mut out = String::new();
    for v in s.values() {
        let _ = writeln!(out, "{v}");
    }
    out
}

/// Parses `a,b` index pairs, one per line. The pairs are returned in file
/// order and are not validated as a path.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for (line, record) in records(text) {
        let fields: Vec<&str> = Delimiter::detect(record).split(record).collect();
        let [a, b] = fields[..] else {
            return Err(Error::parse(
                line,
                format!("expected two indices, found {} fields", fields.len()),
            ));
        };
        pairs.push((parse_index(line, a)?, parse_index(line, b)?));
    }
    Ok(pairs)
}

pub fn parse_path(text: &str) -> Result<AlignmentPath> {
    Ok(AlignmentPath::from_pairs(parse_pairs(text)?))
}

/// One `a,b` pair per line.
pub fn write_pairs(pairs: &[(usize, usize)]) -> String {
    let mut out = String::with_capacity(pairs.len() * 8);
    for (a, b) in pairs {
        let _ = writeln!(out, "{a},{b}");
    }
    out
}

/// Parses a component mask: one `0` or `1` per line, indexed by `s` position.
pub fn parse_mask(text: &str) -> Result<Vec<bool>> {
    records(text)
        .map(|(line, record)| match record {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::parse(line, format!("mask entry {other:?} is not 0 or 1"))),
        })
        .collect()
}

pub fn write_mask(mask: &[bool]) -> String {
    mask.iter().map(|&m| if m { "1\n" } else { "0\n" }).collect()
}

/// Per-dataset error rates of several methods.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub methods: Vec<String>,
    pub datasets: Vec<String>,
    /// `errors[method][dataset]`.
    pub errors: Vec<Vec<f64>>,
}

/// Parses a table with header `dataset,<method>,...` and one row per dataset.
pub fn parse_error_table(text: &str) -> Result<ErrorTable> {
    let mut rows = records(text);
    let (_, header) = rows.next().ok_or_else(|| Error::parse(1, "error table is empty"))?;
    let d = Delimiter::detect(header);
    let methods: Vec<String> = d.split(header).skip(1).map(str::to_string).collect();
    if methods.is_empty() || methods.iter().any(String::is_empty) {
        return Err(Error::parse(
            1,
            "header needs a dataset column followed by method names",
        ));
    }
    if let Some(m) = methods.iter().find(|m| m.contains([',', '\t'])) {
        return Err(Error::parse(1, format!("method name {m:?} contains a comma or tab")));
    }
    let mut datasets = Vec::new();
    let mut errors = vec![Vec::new(); methods.len()];
    for (line, record) in rows {
        let mut fields = d.split(record);
        let name = fields.next().unwrap_or_default();
        if name.contains([',', '\t']) {
            return Err(Error::parse(
                line,
                format!("dataset name {name:?} contains a comma or tab"),
            ));
        }
        datasets.push(name.to_string());
        let values = fields
            .enumerate()
            .map(|(k, raw)| parse_value(line, k + 2, raw))
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != methods.len() {
            return Err(Error::parse(
                line,
                format!("row has {} error values, expected {}", values.len(), methods.len()),
            ));
        }
        for (col, v) in errors.iter_mut().zip(values) {
            col.push(v);
        }
    }
    if datasets.is_empty() {
        return Err(Error::parse(1, "error table has no datasets"));
    }
    Ok(ErrorTable {
        methods,
        datasets,
        errors,
    })
}

/// Comma-separated, in the layout [`parse_error_table`] reads.
pub fn write_error_table(t: &ErrorTable) -> String {
    let mut out = format!("dataset,{}\n", t.methods.join(","));
    for (d, name) in t.datasets.iter().enumerate() {
        out.push_str(name);
        for col in &t.errors {
            let _ = write!(out, ",{}", col[d]);
        }
        out.push('\n');
    }
    out
}

/// Reads a file to a string, mapping I/O failures to [`Error::Data`].
pub fn read_text(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    fs::read_to_string(path).map_err(|e| Error::data(format!("cannot read {}: {e}", path.display())))
}

pub fn load_ucr(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    parse_ucr(&read_text(path)?)
}

pub fn load_series(path: impl AsRef<Path>) -> Result<TimeSeries> {
    parse_series(&read_text(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::validate_path;
    use proptest::prelude::*;

    #[test]
    fn ucr_record() {
        let d = parse_ucr("1,0.0,1.0,0.0\n").unwrap();
        assert_eq!(d.items()[0].1, "1");
        assert_eq!(d.items()[0].0.values(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn delimiters_parse_identically() {
        let comma = parse_ucr("1,0.5,-2\n2,3,4e-3\n").unwrap();
        let tab = parse_ucr("1\t0.5\t-2\n2\t3\t4e-3\n").unwrap();
        let space = parse_ucr("  1  0.5 -2\n\n2 3   4e-3\n").unwrap();
        assert_eq!(comma, tab);
        assert_eq!(comma, space);
    }

    #[test]
    fn ragged_record_names_its_line() {
        let err = parse_ucr("1,0,1\n2,0,1\n\n1,0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn bad_values_are_reported() {
        assert!(matches!(
            parse_ucr("1,0,x\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_ucr("a,1\nb,NaN\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(parse_ucr("").is_err());
        assert!(parse_ucr("7\n").is_err());
        assert!(parse_ucr(",1,2\n").is_err());
        assert!(matches!(
            parse_ucr("1 2\n11, 3\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn ucr_round_trip_is_byte_identical() {
        let canonical = "1,0.1,0.2,0.30000000000000004\n2,-0.5,5,123456789.125\n3,0,0,-0\n";
        assert_eq!(write_ucr(&parse_ucr(canonical).unwrap()), canonical);
        let written = write_ucr(&parse_ucr("1\t1e-20\t2E3\n2\t+4\t.5\n").unwrap());
        assert_eq!(write_ucr(&parse_ucr(&written).unwrap()), written);
    }

    #[test]
    fn path_round_trip() {
        let p = AlignmentPath::from_pairs(vec![(1, 1), (2, 1), (3, 2), (4, 3)]);
        let back = parse_path(&write_pairs(p.pairs())).unwrap();
        assert_eq!(back, p);
        assert!(validate_path(&back, 4, 3));
        assert!(parse_path("1,2,3\n").is_err());
        assert!(parse_path("0,1\n").is_err());
        assert!(matches!(
            parse_path("1,1\n2;2\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn series_and_mask() {
        assert_eq!(parse_series("1\n2.5\n-3\n").unwrap().values(), &[1.0, 2.5, -3.0]);
        assert_eq!(parse_series("1, 2, 3").unwrap().values(), &[1.0, 2.0, 3.0]);
        assert!(parse_series("1,,2").is_err());
        assert!(parse_series("\n").is_err());
        assert_eq!(
            parse_mask(&write_mask(&[true, false, true])).unwrap(),
            vec![true, false, true]
        );
        assert!(parse_mask("2\n").is_err());
    }

    #[test]
    fn error_table() {
        let text = "dataset,dtw,rdtw\nA,0.1,0.05\nB,0.2,0.2\n";
        let t = parse_error_table(text).unwrap();
        assert_eq!(write_error_table(&t), text);
        assert_eq!(t.methods, vec!["dtw", "rdtw"]);
        assert_eq!(t.datasets, vec!["A", "B"]);
        assert_eq!(t.errors, vec![vec![0.1, 0.2], vec![0.05, 0.2]]);
        assert!(matches!(
            parse_error_table("dataset,dtw\nA,0.1,0.2\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(parse_error_table("dataset\nA\n").is_err());
        assert!(parse_error_table("d x\nA, 1\n").is_err());
    }

    proptest! {
        #[test]
        fn ucr_write_read_write(rows in prop::collection::vec(
            (0u8..4, prop::collection::vec(-1e6f64..1e6, 5)), 1..10)) {
            let items = rows.into_iter()
                .map(|(l, v)| (TimeSeries::new(v).unwrap(), l.to_string()))
                .collect();
            let data = LabeledDataset::new(items).unwrap();
            let once = write_ucr(&data);
            let parsed = parse_ucr(&once).unwrap();
            prop_assert_eq!(&parsed, &data);
            prop_assert_eq!(write_ucr(&parsed), once);
        }

        #[test]
        fn parsers_never_panic(text in "\\PC{0,200}") {
            let _ = parse_ucr(&text);
            let _ = parse_series(&text);
            let _ = parse_path(&text);
            let _ = parse_mask(&text);
            let _ = parse_error_table(&text);
        }
    }
}
