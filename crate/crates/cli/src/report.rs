use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{Map, Value};

use locdet::arith::fmt_rational;

/// Reals print with 17 significant digits so values round-trip.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_rationals(xs: &[BigRational]) -> String {
    format!("({})", xs.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    pub values: Map<String, Value>,
    pub status: Status,
}

impl Item {
    pub fn new(name: impl Into<String>) -> Self {
        Item { name: name.into(), values: Map::new(), status: Status::Info }
    }

    pub fn value(mut self, key: &str, value: impl Into<String>) -> Self {
        self.values.insert(key.to_string(), Value::String(value.into()));
        self
    }

    pub fn rational(self, key: &str, x: &BigRational) -> Self {
        self.value(key, fmt_rational(x))
    }

    pub fn real(self, key: &str, x: f64) -> Self {
        self.value(key, fmt_real(x))
    }

    pub fn status(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub items: Vec<Item>,
    pub status: String,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), items: Vec::new(), status: "ok".into() }
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn any_failed(&self) -> bool {
        self.items.iter().any(|i| i.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.command);
        let width = self.items.iter().map(|i| i.name.chars().count()).max().unwrap_or(0);
        for item in &self.items {
            let mark = match item.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "    ",
            };
            let fields: Vec<String> = item
                .values
                .iter()
                .map(|(k, v)| format!("{k}={}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())))
                .collect();
            let pad = width - item.name.chars().count();
            let _ = writeln!(out, "{mark}  {}{}  {}", item.name, " ".repeat(pad), fields.join("  "));
        }
        let _ = writeln!(out, "status: {}", self.status);
        out
    }
}
