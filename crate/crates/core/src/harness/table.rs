use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Float(Vec<f64>),
    Text(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Float(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell(&self, row: usize) -> String {
        match self {
            // Debug formatting is the shortest string that parses back to the same f64
            Column::Float(v) => format!("{:?}", v[row]),
            Column::Text(v) => v[row].clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Column::Float(v) => Value::from(v.clone()),
            Column::Text(v) => Value::from(v.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidSpec(format!("unknown output format {s:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Named, equal-length columns plus a metadata object.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub metadata: Map<String, Value>,
    columns: Vec<(String, Column)>,
}

impl ResultTable {
    pub fn new(metadata: Map<String, Value>) -> Self {
        Self {
            metadata,
            columns: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, column: Column) -> Result<()> {
        if self.columns.iter().any(|(n, _)| n == name) {
            return Err(Error::InvalidSpec(format!("duplicate column {name:?}")));
        }
        if let Some((first, c)) = self.columns.first() {
            if c.len() != column.len() {
                return Err(Error::InvalidSpec(format!(
                    "column {name:?} has {} rows, {first:?} has {}",
                    column.len(),
                    c.len()
                )));
            }
        }
        self.columns.push((name.to_string(), column));
        Ok(())
    }

    /// Inserts a column ahead of all others.
    pub fn push_front(&mut self, name: &str, column: Column) -> Result<()> {
        self.push(name, column)?;
        let last = self.columns.pop().expect("just pushed");
        self.columns.insert(0, last);
        Ok(())
    }

    pub fn push_floats(&mut self, name: &str, values: Vec<f64>) -> Result<()> {
        self.push(name, Column::Float(values))
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|(n, _)| n.as_str())
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn floats(&self, name: &str) -> Option<&[f64]> {
        match self.column(name)? {
            Column::Float(v) => Some(v),
            Column::Text(_) => None,
        }
    }

    pub fn texts(&self, name: &str) -> Option<&[String]> {
        match self.column(name)? {
            Column::Text(v) => Some(v),
            Column::Float(_) => None,
        }
    }

    /// Appends the rows of `other`, which must have the same columns.
    pub fn append(&mut self, other: &ResultTable) -> Result<()> {
        if self.columns.is_empty() {
            self.columns = other.columns.clone();
            return Ok(());
        }
        let same = self.columns.len() == other.columns.len()
            && self
                .columns
                .iter()
                .zip(&other.columns)
                .all(|((a, x), (b, y))| {
                    a == b
                        && matches!(
                            (x, y),
                            (Column::Float(_), Column::Float(_))
                                | (Column::Text(_), Column::Text(_))
                        )
                });
        if !same {
            return Err(Error::InvalidSpec("tables have different columns".into()));
        }
        for ((_, mine), (_, theirs)) in self.columns.iter_mut().zip(&other.columns) {
            match (mine, theirs) {
                (Column::Float(a), Column::Float(b)) => a.extend_from_slice(b),
                (Column::Text(a), Column::Text(b)) => a.extend(b.iter().cloned()),
                _ => unreachable!(),
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.names())?;
        for row in 0..self.rows() {
            w.write_record(self.columns.iter().map(|(_, c)| c.cell(row)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let columns: Map<String, Value> = self
            .columns
            .iter()
            .map(|(n, c)| (n.clone(), c.to_json()))
            .collect();
        let mut root = Map::new();
        root.insert("metadata".into(), Value::Object(self.metadata.clone()));
        root.insert("columns".into(), Value::Object(columns));
        Value::Object(root)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Serialization(format!("table JSON: {what}"));
        let metadata = value
            .get("metadata")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing metadata object"))?
            .clone();
        let columns = value
            .get("columns")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing columns object"))?;
        let mut table = ResultTable::new(metadata);
        for (name, values) in columns {
            let arr = values
                .as_array()
                .ok_or_else(|| bad("column is not an array"))?;
            let column = if arr.iter().all(Value::is_number) {
                Column::Float(arr.iter().map(|v| v.as_f64().unwrap_or(f64::NAN)).collect())
            } else if arr.iter().all(Value::is_string) {
                Column::Text(
                    arr.iter()
                        .map(|v| v.as_str().unwrap_or_default().to_string())
                        .collect(),
                )
            } else {
                return Err(bad("mixed column"));
            };
            table.push(name, column)?;
        }
        Ok(table)
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                out.write_all(b"\n")?;
                Ok(())
            }
        }
    }

    pub fn write_file(&self, format: Format, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut buf = std::io::BufWriter::new(file);
        self.write(format, &mut buf)?;
        buf.flush()?;
        Ok(())
    }
}
