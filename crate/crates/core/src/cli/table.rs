//! Tabular output shared by all commands: CSV with `# ` metadata lines, or a
//! schema-versioned JSON object. Floats carry 17 significant digits.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Real,
    /// Split into `re_<name>`, `im_<name>` in CSV.
    Complex,
    Int,
    Text,
    Bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Complex(Complex64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Complex64> for Cell {
    fn from(v: Complex64) -> Self {
        Cell::Complex(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// `{:.16e}` with negative zero folded into zero.
pub fn fmt_real(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}

#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    /// Config echo as ordered key/value pairs.
    pub config: Vec<(&'static str, String)>,
    pub columns: Vec<(&'static str, Kind)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[(&'static str, Kind)]) -> Self {
        Self {
            command,
            config: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, kind) in &self.columns {
            if *kind == Kind::Complex {
                out.push(format!("re_{name}"));
                out.push(format!("im_{name}"));
            } else {
                out.push((*name).to_owned());
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("# {TOOL} {VERSION}\n# command={}", self.command);
        for (k, v) in &self.config {
            s.push_str(&format!(" {k}={v}"));
        }
        s.push('\n');
        s.push_str(&self.csv_header().join(","));
        s.push('\n');
        for row in &self.rows {
            let mut fields = Vec::new();
            for ((_, kind), cell) in self.columns.iter().zip(row) {
                match cell {
                    Cell::Real(v) => fields.push(fmt_real(*v)),
                    Cell::Complex(z) => {
                        fields.push(fmt_real(z.re));
                        fields.push(fmt_real(z.im));
                    }
                    Cell::Int(i) => fields.push(i.to_string()),
                    Cell::Text(t) => fields.push(csv_quote(t)),
                    Cell::Bool(b) => fields.push(b.to_string()),
                    Cell::Empty => {
                        fields.push(String::new());
                        if *kind == Kind::Complex {
                            fields.push(String::new());
                        }
                    }
                }
            }
            s.push_str(&fields.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| ((*k).to_owned(), Value::String(v.clone())))
            .collect();
        let columns: Vec<Value> = self
            .columns
            .iter()
            .map(|(n, k)| json!({ "name": n, "kind": kind_name(*k) }))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|((name, _), cell)| ((*name).to_owned(), cell_json(cell)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "config": config,
            "columns": columns,
            "rows": rows,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("in-memory JSON");
                s.push('\n');
                s
            }
        }
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Real => "real",
        Kind::Complex => "complex",
        Kind::Int => "int",
        Kind::Text => "text",
        Kind::Bool => "bool",
    }
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Real(v) => Value::String(fmt_real(*v)),
        Cell::Complex(z) => json!({ "re": fmt_real(z.re), "im": fmt_real(z.im) }),
        Cell::Int(i) => json!(i),
        Cell::Text(t) => Value::String(t.clone()),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Empty => Value::Null,
    }
}

fn csv_quote(t: &str) -> String {
    if t.contains([',', '"', '\n']) {
        format!("\"{}\"", t.replace('"', "\"\""))
    } else {
        t.to_owned()
    }
}

/// Writes through a sibling temp file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
