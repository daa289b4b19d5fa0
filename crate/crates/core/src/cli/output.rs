use std::collections::BTreeMap;
use std::io::{self, Write};
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Number, Value};

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
    pub tool_version: String,
}

impl OutputEnvelope {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            warnings: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Field>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into().0);
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Field>) -> &mut Self {
        self.results.insert(key.to_string(), value.into().0);
        self
    }
}

/// A JSON value with this crate's number formatting.
pub struct Field(pub Value);

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field(number(x))
    }
}

impl From<u64> for Field {
    fn from(x: u64) -> Self {
        Field(Value::from(x))
    }
}

impl From<bool> for Field {
    fn from(x: bool) -> Self {
        Field(Value::Bool(x))
    }
}

impl From<&str> for Field {
    fn from(x: &str) -> Self {
        Field(Value::String(x.to_string()))
    }
}

impl From<Vec<f64>> for Field {
    fn from(xs: Vec<f64>) -> Self {
        Field(Value::Array(xs.into_iter().map(number).collect()))
    }
}

impl From<Option<f64>> for Field {
    fn from(x: Option<f64>) -> Self {
        Field(x.map_or(Value::Null, number))
    }
}

/// 17 significant digits; non-finite values become the strings `inf`,
/// `-inf` and `nan`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn number(x: f64) -> Value {
    let s = format_number(x);
    if x.is_finite() {
        Value::Number(Number::from_str(&s).expect("formatted float is valid JSON"))
    } else {
        Value::String(s)
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(scalar_text).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

/// A column-oriented table, emitted as CSV rows or as envelope arrays.
pub struct Table {
    pub envelope: OutputEnvelope,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

pub enum Output {
    Envelope(OutputEnvelope),
    Table(Table),
}

impl Output {
    pub fn default_format(&self) -> Format {
        match self {
            Output::Envelope(_) => Format::Json,
            Output::Table(_) => Format::Csv,
        }
    }

    pub fn warnings(&self) -> &[String] {
        match self {
            Output::Envelope(e) => &e.warnings,
            Output::Table(t) => &t.envelope.warnings,
        }
    }

    pub fn write(self, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
        if format != Format::Json {
            for w in self.warnings() {
                writeln!(err, "warning: {w}")?;
            }
        }
        match (self, format) {
            (Output::Envelope(e), Format::Json) => write_json(&e, out),
            (Output::Envelope(e), Format::Csv) => {
                writeln!(out, "key,value")?;
                for (k, v) in &e.results {
                    writeln!(out, "{k},{}", scalar_text(v))?;
                }
                Ok(())
            }
            (Output::Envelope(e), Format::Text) => write_text(&e, out),
            (Output::Table(t), Format::Json) => {
                let mut e = t.envelope;
                for (j, name) in t.columns.iter().enumerate() {
                    let col: Vec<f64> = t.rows.iter().map(|r| r[j]).collect();
                    e.result(name, col);
                }
                write_json(&e, out)
            }
            (Output::Table(t), Format::Csv) => {
                writeln!(out, "{}", t.columns.join(","))?;
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                Ok(())
            }
            (Output::Table(t), Format::Text) => {
                write_text(&t.envelope, out)?;
                let line = |cells: Vec<String>| cells.iter().map(|c| format!("{c:>24}")).collect::<String>();
                writeln!(out, "{}", line(t.columns.iter().map(|c| c.to_string()).collect()))?;
                for row in &t.rows {
                    writeln!(out, "{}", line(row.iter().map(|&x| format_number(x)).collect()))?;
                }
                Ok(())
            }
        }
    }
}

fn write_json(e: &OutputEnvelope, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, e)?;
    writeln!(out)
}

fn write_text(e: &OutputEnvelope, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{} (psi-dp {})", e.command, e.tool_version)?;
    for (k, v) in &e.inputs {
        writeln!(out, "  {k:<26} {}", scalar_text(v))?;
    }
    for (k, v) in &e.results {
        writeln!(out, "= {k:<26} {}", scalar_text(v))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_have_17_digits_and_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 12.512_925_464_970_228, -2.5e17] {
            let s = format_number(x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
            assert_eq!(mantissa.len(), 17, "{s}");
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_number(f64::INFINITY), "inf");
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn envelope_json_round_trips() {
        let mut e = OutputEnvelope::new("convert");
        e.input("psi", 1.0).result("epsilon", 0.1 + 0.2).result("alpha", f64::INFINITY);
        let text = serde_json::to_string(&e).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v, serde_json::to_value(&e).unwrap());
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v);
        assert_eq!(v["results"]["epsilon"].as_f64().unwrap(), 0.1 + 0.2);
        assert_eq!(v["results"]["alpha"], "inf");
    }
}
