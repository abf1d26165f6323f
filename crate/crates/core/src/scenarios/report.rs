use std::fmt;
use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

/// One named pass/fail check with the values that decided it.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of an end-to-end scenario.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub artifacts: Map<String, Value>,
    /// Wall-clock time; kept out of the serialized form so output is reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

impl ScenarioReport {
    pub fn new(name: &str) -> Self {
        ScenarioReport {
            name: name.to_string(),
            checks: vec![],
            artifacts: Map::new(),
            seconds: 0.0,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
        pass
    }

    pub fn artifact(&mut self, key: &str, v: impl Serialize) {
        self.artifacts.insert(
            key.to_string(),
            serde_json::to_value(v).unwrap_or(Value::Null),
        );
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.seconds = d.as_secs_f64();
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {}", self.name)?;
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "  [{tag}] {}: {}", c.name, c.detail)?;
        }
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
