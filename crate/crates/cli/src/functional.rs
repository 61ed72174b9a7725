use std::str::FromStr;

use num_rational::BigRational;

use locdet::arith::parse_rational;
use locdet::functionals::LinearFunctional;

/// `euler`, `cd`, or `custom:["b_-1", "b_0", ...]` with `"p/q"` entries.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionalArg {
    Euler,
    CharneyDavis,
    Custom(Vec<BigRational>),
}

impl FromStr for FunctionalArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euler" => Ok(FunctionalArg::Euler),
            "cd" | "charney-davis" => Ok(FunctionalArg::CharneyDavis),
            _ => {
                let body = s
                    .strip_prefix("custom:")
                    .ok_or_else(|| format!("unknown functional {s:?}; expected euler, cd or custom:[...]"))?;
                let entries: Vec<serde_json::Value> =
                    serde_json::from_str(body).map_err(|e| format!("custom coefficients: {e}"))?;
                if entries.is_empty() {
                    return Err("custom functional needs at least one coefficient".into());
                }
                entries
                    .iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
                        serde_json::Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| e.to_string()),
                        other => Err(format!("coefficient {other} is not a rational")),
                    })
                    .collect::<Result<_, _>>()
                    .map(FunctionalArg::Custom)
            }
        }
    }
}

impl FunctionalArg {
    /// Named functionals are sized to `max_dim`; custom coefficients are used as given.
    pub fn resolve(&self, max_dim: u32) -> LinearFunctional {
        match self {
            FunctionalArg::Euler => LinearFunctional::euler(max_dim),
            FunctionalArg::CharneyDavis => LinearFunctional::charney_davis(max_dim),
            FunctionalArg::Custom(c) => LinearFunctional::new(c.clone()).expect("nonempty by construction"),
        }
    }
}
