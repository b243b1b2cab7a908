//! Tables, number formatting and file emission.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// Output encoding of the data file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as u64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map(Cell::Num).unwrap_or(Cell::Empty)
    }
}

/// Shortest round-trip representation; exponent form outside `[1e-4, 1e15)`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if !x.is_finite() || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) | Cell::Empty => Value::Null,
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }
}

/// Column-named rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header line followed by one line per row.
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    /// `{"columns": [...], "rows": [[...], ...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Everything a command produces.
pub struct Artifact {
    pub command: &'static str,
    pub table: Table,
    pub config: Value,
    pub metadata: Map<String, Value>,
}

/// Writes `<command>.csv|json` and `<command>.meta.json` under `dir`. Files already
/// written are removed if a later write fails.
pub fn write_artifact(dir: &Path, a: &Artifact, format: Format, seed: u64) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let data_path = dir.join(format!(
        "{}.{}",
        a.command,
        match format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    ));
    let meta_path = dir.join(format!("{}.meta.json", a.command));
    let data = match format {
        Format::Csv => a.table.to_csv(),
        Format::Json => pretty(&a.table.to_json())?,
    };
    let meta = json!({
        "artifact": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": a.command,
        "schema_version": super::config::SCHEMA_VERSION,
        "seed": seed,
        "format": match format { Format::Csv => "csv", Format::Json => "json" },
        "columns": a.table.columns,
        "rows": a.table.rows.len(),
        "config": a.config,
        "metadata": a.metadata,
    });
    let meta = pretty(&meta)?;
    let mut written = Vec::new();
    for (path, body) in [(&data_path, data), (&meta_path, meta)] {
        if let Err(e) = fs::write(path, body) {
            let _ = fs::remove_file(path);
            for p in &written {
                let _ = fs::remove_file(p);
            }
            return Err(e.into());
        }
        written.push(path.clone());
    }
    Ok(written)
}

fn pretty(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5e-5, 123456.789, 1e15] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(1e-20), "1e-20");
        assert_eq!(format_float(0.0), "0");
    }

    #[test]
    fn csv_quoting() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec![Cell::Text("x,y".into()), Cell::Empty]);
        assert_eq!(t.to_csv(), "a,b\n\"x,y\",\n");
    }
}
