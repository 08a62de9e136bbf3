//! Uniform result rows and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use antisym_core::rational::to_decimal;
use antisym_core::{Dimension, Rational};
use serde_json::{json, Map, Value as Json};

const DIGITS: usize = 12;

#[derive(Clone, Debug)]
pub enum Value {
    Exact(Rational),
    Real(f64),
    Verdict(bool),
}

impl Value {
    fn decimal(&self) -> String {
        match self {
            Value::Exact(r) => to_decimal(r, DIGITS),
            Value::Real(x) => format!("{x:.DIGITS$}"),
            Value::Verdict(b) => if *b { "pass" } else { "fail" }.into(),
        }
    }

    fn exact(&self) -> Option<(String, String)> {
        match self {
            Value::Exact(r) => Some((r.numer().to_string(), r.denom().to_string())),
            _ => None,
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Exact(r) => json!({
                "num": r.numer().to_string(),
                "den": r.denom().to_string(),
                "decimal": self.decimal(),
            }),
            Value::Real(x) => json!({ "decimal": self.decimal(), "float": x }),
            Value::Verdict(b) => json!({ "pass": b }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub quantity: String,
    pub n: Option<usize>,
    pub d: Option<Dimension>,
    pub value: Value,
    /// Which construction the number comes from.
    pub basis: String,
}

impl Row {
    pub fn new(quantity: impl Into<String>, value: Value) -> Self {
        Self {
            quantity: quantity.into(),
            n: None,
            d: None,
            value,
            basis: String::new(),
        }
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn d(mut self, d: Dimension) -> Self {
        self.d = Some(d);
        self
    }

    pub fn basis(mut self, basis: impl Into<String>) -> Self {
        self.basis = basis.into();
        self
    }
}

fn dim_json(d: Dimension) -> Json {
    match d {
        Dimension::Finite(d) => json!(d),
        Dimension::Infinite => json!("inf"),
    }
}

/// Process outcome beyond the rows themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed(String),
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub rows: Vec<Row>,
    /// Command-specific structured data for JSON output.
    pub details: Map<String, Json>,
    /// Extra lines for text output.
    pub notes: Vec<String>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            rows: Vec::new(),
            details: Map::new(),
            notes: Vec::new(),
            outcome: Outcome::Success,
        }
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn detail(&mut self, key: &str, value: Json) {
        self.details.insert(key.into(), value);
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "quantity": r.quantity,
                    "n": r.n,
                    "d": r.d.map(dim_json),
                    "value": r.value.to_json(),
                    "basis": r.basis,
                })
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "results": rows,
            "details": self.details,
            "ok": self.outcome == Outcome::Success,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["quantity", "n", "d", "exact_num", "exact_den", "decimal", "basis"])?;
        for r in &self.rows {
            let (num, den) = r.value.exact().unwrap_or_default();
            w.write_record([
                r.quantity.clone(),
                r.n.map(|n| n.to_string()).unwrap_or_default(),
                r.d.map(|d| d.to_string()).unwrap_or_default(),
                num,
                den,
                r.value.decimal(),
                r.basis.clone(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    pub fn to_text(&self) -> String {
        let header = ["quantity", "n", "d", "exact", "decimal", "basis"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.quantity.clone(),
                    r.n.map(|n| n.to_string()).unwrap_or_default(),
                    r.d.map(|d| d.to_string()).unwrap_or_default(),
                    match &r.value {
                        Value::Exact(v) => v.to_string(),
                        _ => String::new(),
                    },
                    r.value.decimal(),
                    r.basis.clone(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, fields: &[&str]| {
            let mut s = String::new();
            for (i, (f, w)) in fields.iter().zip(widths).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                let pad = w.saturating_sub(f.chars().count());
                // numbers right-aligned, text left-aligned
                if (1..=4).contains(&i) {
                    s.push_str(&" ".repeat(pad));
                    s.push_str(f);
                } else {
                    s.push_str(f);
                    s.push_str(&" ".repeat(pad));
                }
            }
            let _ = writeln!(out, "{}", s.trim_end());
        };
        line(&mut out, &header);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(&mut out, &rule.iter().map(String::as_str).collect::<Vec<_>>());
        for row in &cells {
            line(&mut out, &row.iter().map(String::as_str).collect::<Vec<_>>());
        }
        for note in &self.notes {
            let _ = writeln!(out, "{note}");
        }
        out
    }
}
