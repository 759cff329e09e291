//! Tabular report rendering: CSV or JSON, numbers at 6 significant digits.
//!
//! The printed precision is the interface contract: JSON consumers parse
//! back exactly the rounded values, and repeated runs are byte-identical.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(cell_to_csv).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.into()));
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert((*k).into(), v.clone());
        }
        top.insert("params".into(), Value::Object(params));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).into(), cell_to_json(cell));
                }
                Value::Object(obj)
            })
            .collect();
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        s.push('\n');
        s
    }
}

/// Round to 6 significant digits; formatting then prints the shortest
/// string that parses back to exactly this value.
pub fn round_sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(5 - mag);
    if !factor.is_finite() || factor == 0.0 {
        return x;
    }
    (x * factor).round() / factor
}

/// Parameter helper: a JSON number carrying the rounded value.
pub fn num_param(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig6(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn cell_to_csv(cell: &Cell) -> String {
    match cell {
        Cell::Num(x) => format!("{}", round_sig6(*x)),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => csv_escape(s),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

fn cell_to_json(cell: &Cell) -> Value {
    match cell {
        Cell::Num(x) => num_param(*x),
        Cell::Int(i) => Value::Number((*i).into()),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Empty => Value::Null,
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_to_six_significant_digits() {
        assert_eq!(round_sig6(0.42264973081), 0.42265);
        assert_eq!(round_sig6(1.2516291674), 1.25163);
        assert_eq!(round_sig6(-0.0312500001), -0.03125);
        assert_eq!(round_sig6(0.0), 0.0);
        assert_eq!(round_sig6(123456789.0), 123457000.0);
        assert_eq!(round_sig6(-5.0e-13), -5.0e-13);
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        let report = Report {
            command: "demo",
            params: vec![],
            columns: vec!["cut", "value"],
            rows: vec![vec![Cell::Text("{1,2}".into()), Cell::Num(0.5)]],
        };
        let csv = report.render(Format::Csv);
        assert_eq!(csv, "cut,value\n\"{1,2}\",0.5\n");
    }

    #[test]
    fn json_round_trips_numbers_exactly() {
        let report = Report {
            command: "demo",
            params: vec![("d", num_param(0.3))],
            columns: vec!["x"],
            rows: vec![vec![Cell::Num(0.57735026919)]],
        };
        let text = report.render(Format::Json);
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["rows"][0]["x"].as_f64().unwrap(), 0.57735);
        assert_eq!(parsed["command"].as_str().unwrap(), "demo");
    }
}
