use std::fmt;
use std::time::Duration;

use serde_json::{json, Value};

pub const SCHEMA: &str = "hypiso-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not run: gated behind `--deep`, or no data for this row.
    Skip,
    /// Missing or malformed input.
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    /// One-line human summary.
    pub summary: String,
    pub evidence: Value,
}

impl Check {
    pub fn new(name: &'static str, status: Status, summary: impl Into<String>, evidence: Value) -> Self {
        Check { name, status, summary: summary.into(), evidence }
    }

    pub fn pass(name: &'static str, summary: impl Into<String>, evidence: Value) -> Self {
        Self::new(name, Status::Pass, summary, evidence)
    }

    pub fn fail(name: &'static str, summary: impl Into<String>, evidence: Value) -> Self {
        Self::new(name, Status::Fail, summary, evidence)
    }

    pub fn skip(name: &'static str, why: impl Into<String>) -> Self {
        let why = why.into();
        Self::new(name, Status::Skip, why.clone(), json!({ "reason": why }))
    }

    pub fn error(name: &'static str, msg: impl Into<String>) -> Self {
        let msg = msg.into();
        Self::new(name, Status::Error, msg.clone(), json!({ "error": msg }))
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub family: String,
    pub construction: Option<String>,
    pub genus: Option<u32>,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(family: &str, construction: Option<&str>, genus: Option<u32>) -> Self {
        VerificationReport {
            family: family.into(),
            construction: construction.map(Into::into),
            genus,
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn title(&self) -> String {
        let mut s = self.family.clone();
        if let Some(c) = &self.construction {
            s += &format!(" {c}");
        }
        if let Some(g) = self.genus {
            s += &format!(" (g = {g})");
        }
        s
    }

    fn to_json(&self, timing: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.status.as_str(), "summary": c.summary, "evidence": c.evidence }))
            .collect();
        let mut v = json!({
            "family": self.family,
            "construction": self.construction,
            "genus": self.genus,
            "status": overall(std::slice::from_ref(self)).as_str(),
            "checks": checks,
        });
        if timing {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

/// Error beats fail beats pass; skips never decide the outcome.
pub fn overall(reports: &[VerificationReport]) -> Status {
    let statuses = reports.iter().flat_map(|r| r.checks.iter().map(|c| c.status));
    let mut out = Status::Pass;
    for s in statuses {
        match s {
            Status::Error => return Status::Error,
            Status::Fail => out = Status::Fail,
            _ => {}
        }
    }
    out
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass | Status::Skip => 0,
        Status::Fail => 1,
        Status::Error => 2,
    }
}

/// The whole document for `command`. Keys come out sorted, so equal
/// reports serialize to identical bytes.
pub fn to_json(command: &str, reports: &[VerificationReport], timing: bool) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "status": overall(reports).as_str(),
        "reports": reports.iter().map(|r| r.to_json(timing)).collect::<Vec<_>>(),
    })
}

pub fn to_text(reports: &[VerificationReport], timing: bool) -> String {
    let mut out = String::new();
    for r in reports {
        out += &r.title();
        if timing {
            out += &format!("  [{:.1} s]", r.elapsed.as_secs_f64());
        }
        out.push('\n');
        let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &r.checks {
            out += &format!("  {:<width$}  {:<5}  {}\n", c.name, c.status.as_str(), c.summary);
        }
    }
    out += &format!("overall: {}\n", overall(reports));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(statuses: &[Status]) -> VerificationReport {
        let mut r = VerificationReport::new("f7", Some("linear"), Some(3));
        r.checks = statuses.iter().map(|&s| Check::new("rosati", s, "", json!({ "m": 2 }))).collect();
        r
    }

    #[test]
    fn empty_report_is_a_valid_document() {
        let doc = to_json("catalog verify", &[], false);
        assert_eq!(doc["schema"], SCHEMA);
        assert_eq!(doc["status"], "pass");
        assert_eq!(doc["reports"], json!([]));
        assert_eq!(to_text(&[], false), "overall: pass\n");
    }

    #[test]
    fn passing_check_keeps_its_evidence() {
        let doc = to_json("diff rosati", &[report(&[Status::Pass])], false);
        let check = &doc["reports"][0]["checks"][0];
        assert_eq!(check["status"], "pass");
        assert_eq!(check["evidence"]["m"], 2);
        assert!(doc["reports"][0].get("elapsed_ms").is_none());
    }

    #[test]
    fn mixed_results() {
        let reports = [report(&[Status::Pass, Status::Fail, Status::Skip])];
        assert_eq!(exit_code(overall(&reports)), 1);
        let doc = to_json("theorem-table", &reports, false);
        let statuses: Vec<&str> =
            doc["reports"][0]["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
        assert_eq!(statuses, ["pass", "fail", "skip"]);
        assert_eq!(exit_code(overall(&[report(&[Status::Fail, Status::Error])])), 2);
        assert_eq!(exit_code(overall(&[report(&[Status::Skip])])), 0);
    }
}
