//! Tabular output shared by every subcommand: CSV or a JSON array of objects
//! with the same keys.

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(Option<f64>),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(Some(x))
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// Round to 15 significant digits.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn csv_number(x: Option<f64>) -> String {
    match x {
        None => String::new(),
        Some(x) if x.is_nan() => String::new(),
        Some(x) if x == f64::INFINITY => "inf".into(),
        Some(x) if x == f64::NEG_INFINITY => "-inf".into(),
        Some(x) => {
            let x = sig15(x);
            if x != 0.0 && !(1e-5..1e16).contains(&x.abs()) {
                format!("{x:e}")
            } else {
                format!("{x}")
            }
        }
    }
}

fn json_number(x: Option<f64>) -> Value {
    match x {
        Some(x) if x == f64::INFINITY => Value::String("inf".into()),
        Some(x) if x == f64::NEG_INFINITY => Value::String("-inf".into()),
        Some(x) => Number::from_f64(sig15(x)).map_or(Value::Null, Value::Number),
        None => Value::Null,
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => csv_number(*x),
                    Cell::Text(s) => csv_escape(s),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, c)| {
                        let v = match c {
                            Cell::Num(x) => json_number(*x),
                            Cell::Text(s) => Value::String(s.clone()),
                            Cell::Bool(b) => Value::Bool(*b),
                            Cell::Empty => Value::Null,
                        };
                        ((*k).to_owned(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(sig15(0.1 + 0.2), 0.3);
        assert_eq!(sig15(-0.6044202464747488), -0.604420246474749);
        assert_eq!(sig15(0.0), 0.0);
    }

    #[test]
    fn special_values() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.push(vec![
            f64::INFINITY.into(),
            None.into(),
            f64::NEG_INFINITY.into(),
        ]);
        assert_eq!(t.to_csv(), "a,b,c\ninf,,-inf\n");
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[0]["a"], "inf");
        assert_eq!(v[0]["b"], Value::Null);
        assert_eq!(v[0]["c"], "-inf");
    }

    #[test]
    fn escaping() {
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
        assert_eq!(csv_escape("x"), "x");
    }

    #[test]
    fn tiny_numbers_use_exponents() {
        assert_eq!(
            csv_number(Some(2.220446049250313e-15)),
            "2.22044604925031e-15"
        );
        assert_eq!(csv_number(Some(-7049.974455972453)), "-7049.97445597245");
    }
}
