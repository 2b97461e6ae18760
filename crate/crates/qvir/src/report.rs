//! Check records shared by the verification routines and the CLI reports.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified (or falsified) identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub tag: String,
    pub status: Status,
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
}

impl Check {
    pub fn new(name: impl Into<String>, tag: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            tag: tag.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            values: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn pass(name: impl Into<String>, tag: impl Into<String>) -> Self {
        Self::new(name, tag, true)
    }

    pub fn fail(name: impl Into<String>, tag: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::new(name, tag, false).with("reason", reason.into())
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_witness(mut self, w: BTreeMap<String, String>) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A command's output: configuration snapshot, check records and data.
/// Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub summary: Summary,
    pub checks: Vec<Check>,
    pub data: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, config: serde_json::Value, checks: Vec<Check>, data: serde_json::Value) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            summary: Summary { checks: checks.len(), passed, failed: checks.len() - passed },
            checks,
            data,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} ({} checks, {} failed)\n", self.command, self.summary.checks, self.summary.failed);
        for c in &self.checks {
            let mark = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{} {} [{}]", mark, c.name, c.tag));
            for (k, v) in &c.values {
                out.push_str(&format!(" {}={}", k, v));
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                for (k, v) in w {
                    out.push_str(&format!("    {} = {}\n", k, v));
                }
            }
        }
        out
    }
}

/// {"num": "...", "den": "..."} with decimal strings.
pub fn rational_json(r: &num_rational::BigRational) -> serde_json::Value {
    serde_json::json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn top_level_field_order() {
        let r = Report::new("x", serde_json::json!({}), vec![Check::pass("a", "t")], serde_json::Value::Null);
        let j = r.to_json();
        let keys = ["schema_version", "tool_version", "command", "config", "summary", "checks", "data"];
        let pos: Vec<usize> = keys.iter().map(|k| j.find(&format!("\"{}\"", k)).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_report_passes() {
        let r = Report::new("x", serde_json::Value::Null, vec![], serde_json::Value::Null);
        assert!(r.all_pass());
        assert_eq!(r.summary.checks, 0);
    }

    #[test]
    fn failure_is_counted() {
        let r = Report::new("x", serde_json::Value::Null, vec![Check::fail("a", "t", "no")], serde_json::Value::Null);
        assert!(!r.all_pass());
        assert!(r.to_text().contains("FAIL a [t] reason=no"));
    }

    #[test]
    fn rationals_are_reduced_strings() {
        let v = rational_json(&BigRational::new(3.into(), (-6).into()));
        assert_eq!(v, serde_json::json!({"num": "-1", "den": "2"}));
    }
}
