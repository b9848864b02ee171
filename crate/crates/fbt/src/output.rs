//! Tables written as CSV or as a JSON array of records.

use std::io::Write;

use serde_json::{Map, Value};

use crate::config::OutputFormat;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Shortest decimal that reads back to the same `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => format_f64(*x),
                    Cell::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
                    Cell::Text(t) => t.clone(),
                    Cell::Empty => String::new(),
                })
                .collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (k, c) in self.header.iter().zip(row) {
                        let v = match c {
                            // Non-finite numbers have no JSON form and become null.
                            Cell::Num(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
                            Cell::Text(t) => Value::String(t.clone()),
                            Cell::Empty => Value::Null,
                        };
                        m.insert(k.to_string(), v);
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }

    pub fn write(&self, format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            OutputFormat::Csv => out.write_all(self.to_csv().as_bytes()),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).map_err(std::io::Error::other)?;
                s.push('\n');
                out.write_all(s.as_bytes())
            }
        }
    }
}

pub const TRANSFORM_HEADER: &[&str] = &["s", "re_psi", "im_psi", "re_omega", "im_omega", "re_phi", "im_phi", "re_f1hat", "im_f1hat", "err_est"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [2.0, 0.1, -1.5e-300, 1e21, 1.0 / 3.0, 123.456789e-7] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new(&["name", "v"]);
        t.push(vec!["a,b".into(), 0.5.into()]);
        t.push(vec!["c".into(), Cell::Num(f64::NAN)]);
        assert_eq!(t.to_csv(), "name,v\n\"a,b\",0.5\nc,NaN\n");
        let j = t.to_json();
        assert_eq!(j[0]["v"], 0.5);
        assert!(j[1]["v"].is_null());
    }
}
