//! One record per invocation, rendered as JSON, CSV or an aligned table.

use std::fmt::Write as _;

use gibbs_core::exactnum::to_f64;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value as Json};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Nat(u64),
    Int(BigInt),
    Ratio(BigRational),
    Real(f64),
    Text(String),
    Bool(bool),
    List(Vec<Value>),
    Null,
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Nat(n) => json!(n),
            Value::Int(n) => Json::String(n.to_string()),
            Value::Ratio(q) => Json::String(ratio_string(q)),
            Value::Real(x) => Json::String(significant(*x)),
            Value::Text(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::List(items) => Json::Array(items.iter().map(Value::to_json).collect()),
            Value::Null => Json::Null,
        }
    }

    fn plain(&self) -> String {
        match self {
            Value::Nat(n) => n.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Ratio(q) => ratio_string(q),
            Value::Real(x) => significant(*x),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::List(items) => items.iter().map(Value::plain).collect::<Vec<_>>().join(";"),
            Value::Null => String::new(),
        }
    }

    fn table(&self) -> String {
        match self {
            Value::Ratio(q) => format!("{} ({})", ratio_string(q), significant(to_f64(q))),
            Value::List(items) => format!("{{{}}}", items.iter().map(Value::table).collect::<Vec<_>>().join(", ")),
            Value::Null => "-".into(),
            Value::Text(s) if s.is_empty() => "-".into(),
            other => other.plain(),
        }
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Nat(n)
    }
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Self {
        Value::Int(n)
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        Value::Ratio(q)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// `p/q` with the denominator always present.
pub fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Twelve significant digits; scientific notation outside `1e-5..1e12`.
pub fn significant(x: f64) -> String {
    const DIGITS: usize = 12;
    if x == 0.0 {
        return format!("{:.*}", DIGITS - 1, 0.0);
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let exponent: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..DIGITS as i32).contains(&exponent) {
        format!("{:.*}", (DIGITS as i32 - 1 - exponent) as usize, x)
    } else {
        sci
    }
}

#[derive(Debug, Clone)]
pub struct Record {
    command: &'static str,
    parameters: Vec<(&'static str, Value)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    provenance: String,
    warnings: Vec<String>,
}

impl Record {
    pub fn new(command: &'static str, provenance: impl Into<String>) -> Self {
        Record {
            command,
            parameters: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            provenance: provenance.into(),
            warnings: Vec::new(),
        }
    }

    pub fn param(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.parameters.push((key, value.into()));
        self
    }

    pub fn columns(mut self, columns: &[&'static str]) -> Self {
        self.columns = columns.to_vec();
        self
    }

    pub fn row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn with_row(mut self, row: Vec<Value>) -> Self {
        self.row(row);
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn to_json(&self) -> Json {
        let parameters: Map<String, Json> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_json()))
            .collect();
        let results: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let object: Map<String, Json> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), v.to_json()))
                    .collect();
                Json::Object(object)
            })
            .collect();
        json!({
            "command": self.command,
            "parameters": parameters,
            "results": results,
            "provenance": self.provenance,
            "warnings": self.warnings,
        })
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.render_csv(),
            Format::Table => Ok(self.render_table()),
        }
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Input(format!("csv output: {e}"));
        writer.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Value::plain)).map_err(io)?;
        }
        let bytes = writer.into_inner().map_err(|e| CliError::Input(format!("csv output: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.command).unwrap();
        for (k, v) in &self.parameters {
            writeln!(out, "  {k}: {}", v.table()).unwrap();
        }
        writeln!(out, "  provenance: {}", self.provenance).unwrap();
        out.push('\n');
        if self.rows.len() == 1 {
            let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
            for (k, v) in self.columns.iter().zip(&self.rows[0]) {
                writeln!(out, "{k:<width$}  {}", v.table()).unwrap();
            }
        } else {
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Value::table).collect()).collect();
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: Vec<&str>| {
                let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(self.columns.clone())).unwrap();
            for row in &cells {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
            }
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(significant(2f64.ln() * 2.0), "1.38629436112");
        assert_eq!(significant(9f64.ln()), "2.19722457734");
        assert_eq!(significant(0.0), "0.00000000000");
        assert_eq!(significant(-363.7393755555635), "-363.739375556");
        assert_eq!(significant(1.5e-7), "1.50000000000e-7");
        assert_eq!(significant(6.0e15), "6.00000000000e15");
    }

    #[test]
    fn ratios_always_carry_a_denominator() {
        assert_eq!(ratio_string(&BigRational::from_integer(3.into())), "3/1");
        assert_eq!(ratio_string(&BigRational::new(18.into(), 4.into())), "9/2");
    }

    #[test]
    fn csv_quotes_fields() {
        let r = Record::new("x", "")
            .columns(&["a", "b"])
            .with_row(vec![Value::text("p, q"), Value::Nat(1)]);
        assert_eq!(r.render(Format::Csv).unwrap(), "a,b\n\"p, q\",1\n");
    }
}
