//! Probe reports: structured verdicts rendered as plain text.
//!
//! The text form is stable (key: value lines and indented blocks) so reports
//! can be compared byte for byte across runs.

use crate::geometry::{rational, Rational, SqDistance};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// A certificate value; exact data is kept until rendering.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Rational(Rational),
    /// Rendered as the exact squared value plus a decimal of the distance.
    Distance(SqDistance),
}

impl Value {
    fn render(&self, digits: usize) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Rational(q) => format!("{q} (~{})", rational::to_decimal(q, digits)),
            Value::Distance(d) => format!("sq {d} | dist ~{}", d.distance_decimal(digits)),
        }
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

impl From<Rational> for Value {
    fn from(q: Rational) -> Self {
        Value::Rational(q)
    }
}

impl From<SqDistance> for Value {
    fn from(d: SqDistance) -> Self {
        Value::Distance(d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub label: String,
    pub fields: Vec<(String, Value)>,
}

impl Witness {
    pub fn new(label: impl Into<String>) -> Self {
        Witness {
            label: label.into(),
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }
}

/// Outcome of a probe. The verdict is `FAIL` exactly when at least one
/// counter-witness has been recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub probe: String,
    pub claim: String,
    pub parameters: Vec<(String, String)>,
    pub witnesses: Vec<Witness>,
    pub counter_witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl ProbeReport {
    pub fn new(probe: impl Into<String>, claim: impl Into<String>) -> Self {
        ProbeReport {
            probe: probe.into(),
            claim: claim.into(),
            parameters: Vec::new(),
            witnesses: Vec::new(),
            counter_witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn witness(&mut self, w: Witness) -> &mut Self {
        self.witnesses.push(w);
        self
    }

    pub fn counter(&mut self, w: Witness) -> &mut Self {
        self.counter_witnesses.push(w);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn verdict(&self) -> Verdict {
        if self.counter_witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn render(&self, digits: usize) -> String {
        let mut out = String::new();
        writeln!(out, "== probe: {}", self.probe).unwrap();
        writeln!(out, "claim: {}", self.claim).unwrap();
        if !self.parameters.is_empty() {
            writeln!(out, "parameters:").unwrap();
            for (k, v) in &self.parameters {
                writeln!(out, "  {k}: {v}").unwrap();
            }
        }
        render_block(&mut out, "witnesses", &self.witnesses, digits);
        render_block(&mut out, "counter-witnesses", &self.counter_witnesses, digits);
        if !self.notes.is_empty() {
            writeln!(out, "notes:").unwrap();
            for n in &self.notes {
                writeln!(out, "  - {n}").unwrap();
            }
        }
        writeln!(out, "verdict: {}", self.verdict().as_str()).unwrap();
        out
    }
}

fn render_block(out: &mut String, title: &str, items: &[Witness], digits: usize) {
    if items.is_empty() {
        return;
    }
    writeln!(out, "{title}:").unwrap();
    for (i, w) in items.iter().enumerate() {
        writeln!(out, "  [{}] {}", i + 1, w.label).unwrap();
        for (k, v) in &w.fields {
            writeln!(out, "      {k}: {}", v.render(digits)).unwrap();
        }
    }
}
