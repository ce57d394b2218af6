//! Column tables written by the command-line tool.
//!
//! CSV: header row, `,` delimiter, LF line endings, floats in shortest
//! round-trip form. JSON: `{"column_names": [...], "columns": {name: [...]},
//! "meta": {...}}` with `NaN` written as `null`. Object keys are sorted, so
//! both forms are byte-stable.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Column {
    Int(Vec<i64>),
    Float(#[serde(serialize_with = "ser_floats", deserialize_with = "de_floats")] Vec<f64>),
}

fn ser_floats<S: Serializer>(v: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| if x.is_nan() { None } else { Some(*x) }))
}

fn de_floats<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
    let raw: Vec<Option<f64>> = Vec::deserialize(d)?;
    Ok(raw.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect())
}

impl PartialEq for Column {
    /// Bitwise for floats, so `NaN == NaN`.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Column::Int(a), Column::Int(b)) => a == b,
            (Column::Float(a), Column::Float(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
            }
            _ => false,
        }
    }
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Int(v) => v.len(),
            Column::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell(&self, i: usize) -> String {
        match self {
            Column::Int(v) => v[i].to_string(),
            Column::Float(v) => format_float(v[i]),
        }
    }

    pub fn as_floats(&self) -> Vec<f64> {
        match self {
            Column::Int(v) => v.iter().map(|&x| x as f64).collect(),
            Column::Float(v) => v.clone(),
        }
    }
}

/// Shortest decimal string that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    names: Vec<String>,
    columns: Vec<Column>,
    pub meta: Value,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    column_names: Vec<String>,
    columns: std::collections::BTreeMap<String, Column>,
    meta: Value,
}

impl Table {
    pub fn new() -> Self {
        Table {
            names: Vec::new(),
            columns: Vec::new(),
            meta: Value::Object(Default::default()),
        }
    }

    pub fn with_meta(mut self, meta: Value) -> Self {
        self.meta = meta;
        self
    }

    /// Appends a column; names must be unique and lengths equal.
    pub fn push(&mut self, name: impl Into<String>, column: Column) -> Result<()> {
        let name = name.into();
        if name.is_empty() || name.contains([',', '\n', '\r', '"']) {
            return Err(Error::Table(format!("unusable column name {name:?}")));
        }
        if self.names.contains(&name) {
            return Err(Error::Table(format!("duplicate column {name}")));
        }
        if let Some(first) = self.columns.first() {
            if first.len() != column.len() {
                return Err(Error::Table(format!(
                    "column {name} has {} rows, expected {}",
                    column.len(),
                    first.len()
                )));
            }
        }
        self.names.push(name);
        self.columns.push(column);
        Ok(())
    }

    pub fn with_column(mut self, name: impl Into<String>, column: Column) -> Result<Self> {
        self.push(name, column)?;
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.names.iter().position(|n| n == name).map(|i| &self.columns[i])
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Column::len)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.names.join(",");
        out.push('\n');
        for i in 0..self.rows() {
            let cells: Vec<String> = self.columns.iter().map(|c| c.cell(i)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Parses CSV; a column is integer when every cell parses as `i64`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Table("missing header".into()))?;
        let names: Vec<&str> = header.split(',').collect();
        let mut cells: Vec<Vec<&str>> = vec![Vec::new(); names.len()];
        for (row, line) in lines.enumerate() {
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != names.len() {
                return Err(Error::Table(format!(
                    "row {} has {} cells, expected {}",
                    row + 1,
                    parts.len(),
                    names.len()
                )));
            }
            for (col, part) in cells.iter_mut().zip(parts) {
                col.push(part);
            }
        }
        let mut table = Table::new();
        for (name, col) in names.into_iter().zip(cells) {
            let ints: std::result::Result<Vec<i64>, _> = col.iter().map(|s| s.parse::<i64>()).collect();
            let column = match ints {
                Ok(v) if !v.is_empty() => Column::Int(v),
                _ => Column::Float(
                    col.iter()
                        .map(|s| {
                            s.parse::<f64>()
                                .map_err(|_| Error::Table(format!("bad number {s:?} in {name}")))
                        })
                        .collect::<Result<_>>()?,
                ),
            };
            table.push(name, column)?;
        }
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let doc = JsonTable {
            column_names: self.names.clone(),
            columns: self.names.iter().cloned().zip(self.columns.iter().cloned()).collect(),
            meta: self.meta.clone(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("tables always serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut doc: JsonTable = serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))?;
        let mut table = Table::new().with_meta(doc.meta);
        for name in doc.column_names {
            let column = doc
                .columns
                .remove(&name)
                .ok_or_else(|| Error::Table(format!("column {name} listed but missing")))?;
            table.push(name, column)?;
        }
        if let Some(extra) = doc.columns.keys().next() {
            return Err(Error::Table(format!("column {extra} is not listed in column_names")));
        }
        Ok(table)
    }

    pub fn emit(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => self.to_json(),
        }
    }
}
