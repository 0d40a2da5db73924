//! Flat tables emitted as CSV or JSON.
//!
//! Floats are written with 17 significant digits in exponent form, which
//! round-trips every finite `f64`. Parsing an emitted JSON table and writing
//! it again reproduces the same bytes.

use serde_json::Value;
use thiserror::Error;

use crate::verifier::{CounterexampleResult, SweepRow};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("row has {got} cells, table has {expected} columns")]
    Width { expected: usize, got: usize },
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Null, Cell::Float)
    }

    fn csv_text(&self) -> String {
        match self {
            Cell::Null => String::new(),
            Cell::Bool(b) => b.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json_text(&self) -> String {
        match self {
            Cell::Null => "null".into(),
            Cell::Bool(b) => b.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_finite() => format_float(*x),
            Cell::Float(x) => quote(&format_float(*x)),
            Cell::Text(s) => quote(s),
        }
    }

    fn from_json(v: &Value) -> Result<Cell, ReportError> {
        Ok(match v {
            Value::Null => Cell::Null,
            Value::Bool(b) => Cell::Bool(*b),
            Value::Number(n) => {
                if let Some(i) = n.as_i64().filter(|_| !n.is_f64()) {
                    Cell::Int(i)
                } else {
                    Cell::Float(n.as_f64().ok_or_else(|| {
                        ReportError::Malformed(format!("unrepresentable number {n}"))
                    })?)
                }
            }
            Value::String(s) => Cell::Text(s.clone()),
            other => return Err(ReportError::Malformed(format!("nested value {other}"))),
        })
    }
}

/// 17 significant digits, exponent form; `inf`, `-inf`, `NaN` otherwise.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<(), ReportError> {
        if row.len() != self.columns.len() {
            return Err(ReportError::Width {
                expected: self.columns.len(),
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<impl Iterator<Item = &Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(move |r| &r[i]))
    }

    /// Comma-separated, header row first.
    pub fn to_csv(&self) -> Result<Vec<u8>, ReportError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.into_inner()
            .map_err(|e| ReportError::Malformed(e.to_string()))
    }

    /// Array of flat objects, one per line, keys in column order.
    pub fn to_json(&self) -> String {
        if self.rows.is_empty() {
            return "[]\n".into();
        }
        let objects: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| format!("{}:{}", quote(k), v.json_text()))
                    .collect();
                format!("{{{}}}", fields.join(","))
            })
            .collect();
        format!("[\n{}\n]\n", objects.join(",\n"))
    }

    pub fn from_json(text: &str) -> Result<Table, ReportError> {
        let value: Value = serde_json::from_str(text)?;
        let items = value
            .as_array()
            .ok_or_else(|| ReportError::Malformed("top level is not an array".into()))?;
        let mut table = Table::default();
        for (i, item) in items.iter().enumerate() {
            let obj = item
                .as_object()
                .ok_or_else(|| ReportError::Malformed(format!("row {i} is not an object")))?;
            let keys: Vec<String> = obj.keys().cloned().collect();
            if i == 0 {
                table.columns = keys;
            } else if keys != table.columns {
                return Err(ReportError::Malformed(format!(
                    "row {i} has different keys"
                )));
            }
            let row = obj
                .values()
                .map(Cell::from_json)
                .collect::<Result<_, _>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }
}

/// Columns of a bound-report table.
pub const REPORT_COLUMNS: [&str; 13] = [
    "target", "B", "omega1", "omega2", "omega3", "mu", "gamma", "lhs", "rhs", "constant", "ratio",
    "holds", "error",
];

pub fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new(REPORT_COLUMNS);
    for row in rows {
        let mut cells = vec![
            Cell::Text(row.target.name().into()),
            Cell::opt(row.b),
            Cell::opt(row.omega1),
            Cell::opt(row.omega2),
            Cell::opt(row.omega3),
            Cell::opt(row.mu),
            Cell::opt(row.gamma),
        ];
        match &row.result {
            Ok(r) => cells.extend([
                Cell::Float(r.lhs),
                Cell::Float(r.rhs),
                Cell::Float(r.constant),
                Cell::Float(r.ratio),
                Cell::Bool(r.holds),
                Cell::Null,
            ]),
            Err(e) => {
                cells.extend(std::iter::repeat_n(Cell::Null, 5));
                cells.push(Cell::Text(e.clone()));
            }
        }
        t.push(cells).expect("fixed width");
    }
    t
}

pub fn counterexample_table(results: &[CounterexampleResult]) -> Table {
    let mut t = Table::new(["gamma", "n", "t", "x", "lhs", "rhs", "ratio", "found"]);
    for r in results {
        t.push(vec![
            Cell::Float(r.gamma),
            Cell::Int(r.n as i64),
            Cell::Float(r.t),
            Cell::Float(r.x),
            Cell::Float(r.lhs),
            Cell::Float(r.rhs),
            Cell::Float(r.ratio),
            Cell::Bool(r.found),
        ])
        .expect("fixed width");
    }
    t
}
