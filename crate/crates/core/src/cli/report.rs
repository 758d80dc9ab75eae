//! Report model shared by every command, with text and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// One-line headline, e.g. the verdict.
    pub summary: String,
    pub checks: Vec<CheckLine>,
    /// Command-specific payload.
    pub data: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, summary: impl Into<String>, data: serde_json::Value) -> Self {
        Report {
            command: command.into(),
            summary: summary.into(),
            checks: Vec::new(),
            data,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// 0 iff nothing failed; under `strict`, unknowns count as failures.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let bad = self.count(Status::Fail) + if strict { self.count(Status::Unknown) } else { 0 };
        i32::from(bad > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self, details: &[String], strict: bool) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.summary).unwrap();
        for d in details {
            writeln!(out, "  {d}").unwrap();
        }
        if !self.checks.is_empty() {
            writeln!(out, "checks:").unwrap();
            for c in &self.checks {
                if c.detail.is_empty() {
                    writeln!(out, "  {:<7} {}", c.status.label(), c.name).unwrap();
                } else {
                    writeln!(out, "  {:<7} {}: {}", c.status.label(), c.name, c.detail).unwrap();
                }
            }
        }
        let (fail, unknown) = (self.count(Status::Fail), self.count(Status::Unknown));
        let overall = if self.exit_code(strict) == 0 { "PASS" } else { "FAIL" };
        write!(out, "result: {overall} ({fail} failed, {unknown} unknown)").unwrap();
        if unknown > 0 && !strict {
            write!(out, "; warning: {unknown} unknown verdicts, rerun with --strict to treat them as failures")
                .unwrap();
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report::new("x", "x", serde_json::Value::Null);
        assert_eq!(r.exit_code(true), 0);
        r.check("a", Status::Unknown, "");
        assert_eq!(r.exit_code(false), 0);
        assert_eq!(r.exit_code(true), 1);
        r.check("b", Status::Fail, "why");
        assert_eq!(r.exit_code(false), 1);
        assert!(r.to_text(&[], false).contains("FAIL    b: why"));
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("lengths", "4", serde_json::json!({"length": ["4"]}));
        r.check("oracle", Status::Pass, "");
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
