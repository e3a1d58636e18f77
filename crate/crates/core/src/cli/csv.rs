//! Result tables: '#' metadata lines, one header row, RFC-4180 body.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            Cell::Text(_) => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// 15 significant digits in scientific notation, `nan`/`inf`/`-inf` otherwise.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else if v == 0.0 {
        // Drop the sign of −0 so equal tables print equal bytes.
        "0.00000000000000e0".into()
    } else {
        format!("{v:.14e}")
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    /// Emitted as `# key: value` lines, in order.
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        CsvTable {
            metadata: Vec::new(),
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width differs from header");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of a column; text cells come back as NaN.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            // Metadata values stay on one line.
            let v = v.replace(['\n', '\r'], " ");
            let _ = writeln!(out, "# {k}: {v}");
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
        }
        let body = w.into_inner().expect("in-memory flush");
        out.push_str(std::str::from_utf8(&body).expect("cells are UTF-8"));
        out
    }

    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Reads a table written by [`to_csv_string`](Self::to_csv_string).
    /// Cells that parse as numbers come back as [`Cell::Num`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = CsvTable::default();
        let mut body = String::new();
        for line in text.lines() {
            match line.strip_prefix("# ") {
                Some(m) if body.is_empty() => {
                    let (k, v) = m.split_once(": ").unwrap_or((m, ""));
                    table.metadata.push((k.to_string(), v.to_string()));
                }
                _ => {
                    body.push_str(line);
                    body.push('\n');
                }
            }
        }
        let bad = |e: csv::Error| Error::config("csv", e.to_string());
        let mut r = csv::ReaderBuilder::new().from_reader(body.as_bytes());
        table.columns = r.headers().map_err(bad)?.iter().map(str::to_string).collect();
        for rec in r.records() {
            let rec = rec.map_err(bad)?;
            table.rows.push(
                rec.iter()
                    .map(|s| s.parse::<f64>().map(Cell::Num).unwrap_or_else(|_| Cell::Text(s.to_string())))
                    .collect(),
            );
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(format_number(30.7512345678901234), "3.07512345678901e1");
        assert_eq!(format_number(-0.0), format_number(0.0));
        assert_eq!(format_number(f64::NAN), "nan");
        let back: f64 = format_number(std::f64::consts::PI).parse().unwrap();
        assert!((back / std::f64::consts::PI - 1.0).abs() < 1e-14);
    }

    #[test]
    fn layout_and_round_trip() {
        let mut t = CsvTable::new(&["label", "x", "n"]);
        t.meta("version", "0.1.0");
        t.meta("config", "{\"a\":1}");
        t.push(vec!["plain".into(), 1.5.into(), 3i64.into()]);
        t.push(vec!["with, comma".into(), (-2e-9).into(), 4i64.into()]);
        let s = t.to_csv_string();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], "# version: 0.1.0");
        assert_eq!(lines[2], "label,x,n");
        assert_eq!(lines[4], "\"with, comma\",-2.00000000000000e-9,4");
        let back = CsvTable::parse(&s).unwrap();
        assert_eq!(back.metadata, t.metadata);
        assert_eq!(back.column("x").unwrap(), vec![1.5, -2e-9]);
        assert_eq!(back.rows[1][0], Cell::Text("with, comma".into()));
    }
}
