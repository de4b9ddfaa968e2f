use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::error::{AppError, AppResult};

/// Rendering of summary and report records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Pretty-printed JSON.
    Json,
    /// Flattened `key=value` lines.
    Text,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "txt",
        }
    }
}

pub struct OutDir {
    root: PathBuf,
    format: Format,
}

impl OutDir {
    pub fn create(root: &Path, format: Format) -> AppResult<Self> {
        fs::create_dir_all(root).map_err(|source| AppError::Write {
            path: root.to_path_buf(),
            source,
        })?;
        Ok(Self {
            root: root.to_path_buf(),
            format,
        })
    }

    pub fn write(&self, name: &str, contents: &str) -> AppResult<PathBuf> {
        let path = self.root.join(name);
        fs::write(&path, contents).map_err(|source| AppError::Write {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    }

    /// Writes `record` as `<stem>.json` or `<stem>.txt` depending on the format.
    pub fn record(&self, stem: &str, record: &impl Serialize) -> AppResult<PathBuf> {
        let value = serde_json::to_value(record).map_err(|e| tswarp::Error::Invariant(e.to_string()))?;
        let text = match self.format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&value).map_err(|e| tswarp::Error::Invariant(e.to_string()))?;
                s.push('\n');
                s
            }
            Format::Text => flatten(&value),
        };
        self.write(&format!("{stem}.{}", self.format.extension()), &text)
    }

    /// Writes a JSON file regardless of the chosen format (manifests must stay machine-readable).
    pub fn json(&self, name: &str, record: &impl Serialize) -> AppResult<PathBuf> {
        let mut s = serde_json::to_string_pretty(record).map_err(|e| tswarp::Error::Invariant(e.to_string()))?;
        s.push('\n');
        self.write(name, &s)
    }
}

fn flatten(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, v, out);
                }
            }
            Value::Array(items) => {
                for (k, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{k}]"), v, out);
                }
            }
            Value::String(s) => {
                let _ = writeln!(out, "{prefix}={s}");
            }
            other => {
                let _ = writeln!(out, "{prefix}={other}");
            }
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

/// Non-finite floats serialize as JSON null; keep them readable instead.
pub fn finite_or_string(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(x.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_nested() {
        let v = serde_json::json!({"a": 1, "b": {"c": [true, "x"]}, "d": null});
        assert_eq!(flatten(&v), "a=1\nb.c[0]=true\nb.c[1]=x\nd=null\n");
    }
}
