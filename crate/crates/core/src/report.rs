//! Machine-readable verification reports.

use std::fmt::{self, Display};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// One assertion inside a campaign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

/// Outcome of a verification campaign. Passes iff every check passes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    pub pass: bool,
    pub wall_time: f64,
    pub artifact_version: String,
}

impl VerificationReport {
    pub fn new(campaign: impl Into<String>, inputs: Value) -> Self {
        VerificationReport {
            campaign: campaign.into(),
            inputs,
            checks: Vec::new(),
            data: Map::new(),
            pass: true,
            wall_time: 0.0,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn check(
        &mut self,
        description: impl Into<String>,
        expected: impl Display,
        observed: impl Display,
        pass: bool,
    ) -> bool {
        self.checks.push(Check {
            description: description.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        });
        self.pass &= pass;
        pass
    }

    /// Passes iff `expected` and `observed` render identically.
    pub fn check_eq(
        &mut self,
        description: impl Into<String>,
        expected: impl Display,
        observed: impl Display,
    ) -> bool {
        let (e, o) = (expected.to_string(), observed.to_string());
        let pass = e == o;
        self.check(description, e, o, pass)
    }

    pub fn extend_checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.pass &= c.pass;
            self.checks.push(c);
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.to_string(), value.into());
    }

    pub fn finish(mut self, started: Instant) -> Self {
        self.wall_time = started.elapsed().as_secs_f64();
        self.pass = self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `wall_time` zeroed, for reproducibility comparisons.
    pub fn to_json_untimed(&self) -> String {
        let mut copy = self.clone();
        copy.wall_time = 0.0;
        copy.to_json()
    }
}

impl Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "campaign: {}", self.campaign)?;
        writeln!(f, "inputs: {}", self.inputs)?;
        for (key, value) in &self.data {
            writeln!(f, "{key}: {value}")?;
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "[{tag}] {} (expected {}, observed {})",
                c.description, c.expected, c.observed
            )?;
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        writeln!(
            f,
            "result: {} ({}/{} checks, {:.3}s)",
            if self.pass { "PASS" } else { "FAIL" },
            passed,
            self.checks.len(),
            self.wall_time
        )
    }
}
