//! Tabular results and their CSV / JSON / binary encodings.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    /// Float printed with a fixed number of significant figures.
    Rounded(f64, u32),
    Int(i64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::Float)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// `x` rounded to `sig` significant figures, as a plain decimal.
pub fn format_sig(x: f64, sig: u32) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - e).max(0) as usize;
    format!("{x:.decimals$}")
}

fn round_sig(x: f64, sig: u32) -> f64 {
    format_sig(x, sig).parse().unwrap_or(x)
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64
            Cell::Float(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Float(v) => format!("{v}"),
            Cell::Rounded(v, sig) => format_sig(*v, *sig),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Rounded(v, sig) => serde_json::Number::from_f64(round_sig(*v, *sig)).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Null => Value::Null,
        }
    }
}

/// A command's result: named columns, rows of cells, and the metadata that
/// goes into the JSON envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra whole-run values (JSON only), e.g. a fitted slope.
    pub summary: Map<String, Value>,
}

impl Table {
    pub fn new(command: &str, params: Value, seed: Option<u64>, columns: &[&str]) -> Self {
        Self {
            command: command.to_owned(),
            params,
            seed,
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.into_inner().map_err(|e| CliError::Encode(e.to_string()))
    }

    pub fn to_json(&self) -> CliResult<Vec<u8>> {
        let mut doc = Map::new();
        doc.insert("format_version".into(), Value::from(FORMAT_VERSION));
        doc.insert("command".into(), Value::from(self.command.as_str()));
        doc.insert("params".into(), self.params.clone());
        doc.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        doc.insert("columns".into(), Value::from(self.columns.clone()));
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        doc.insert("rows".into(), Value::Array(rows));
        doc.insert("summary".into(), Value::Object(self.summary.clone()));
        let mut out = serde_json::to_vec_pretty(&Value::Object(doc))?;
        out.push(b'\n');
        Ok(out)
    }
}

/// Little-endian `u64` count followed by the values as little-endian `f64`.
pub fn encode_binary(values: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 8 * values.len());
    out.extend_from_slice(&(values.len() as u64).to_le_bytes());
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_binary(bytes: &[u8]) -> Option<Vec<f64>> {
    let (head, body) = bytes.split_at_checked(8)?;
    let count = u64::from_le_bytes(head.try_into().ok()?) as usize;
    if body.len() != 8 * count {
        return None;
    }
    Some(body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect())
}

/// Writes `bytes` to `path` through a temporary file in the same
/// directory, so readers never observe a partial file; `None` is stdout.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
        }
    }
    Ok(())
}
