//! Verification reports.
//!
//! Every verifier returns a [`Report`]: a flat list of named checks, each with
//! a status and, for failures, a witness locating the offending basis
//! elements. The JSON rendering is stable: checks are sorted by id and
//! witness objects have sorted keys.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Info => "info",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub info: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    checks: Vec<Check>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    checks: Vec<&'a Check>,
    summary: Summary,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: Value) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Fail,
            witness: Some(witness),
        });
    }

    pub fn skip(&mut self, id: impl Into<String>, reason: &str) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Skipped,
            witness: Some(serde_json::json!({ "reason": reason })),
        });
    }

    pub fn info(&mut self, id: impl Into<String>, witness: Value) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Info,
            witness: Some(witness),
        });
    }

    /// Pass when `failure` is `None`, otherwise fail with it as the witness.
    pub fn record(&mut self, id: impl Into<String>, failure: Option<Value>) {
        match failure {
            None => self.pass(id),
            Some(w) => self.fail(id, w),
        }
    }

    pub fn record_bool(&mut self, id: impl Into<String>, ok: bool, witness: Value) {
        if ok {
            self.pass(id)
        } else {
            self.fail(id, witness)
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every id prefixed by `prefix` and a dot.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.id = format!("{prefix}.{}", c.id);
            self.checks.push(c);
        }
    }

    /// Appends `other` with `.suffix` added to every id.
    pub fn extend_suffixed(&mut self, suffix: &str, other: Report) {
        for mut c in other.checks {
            c.id = format!("{}.{suffix}", c.id);
            self.checks.push(c);
        }
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn status(&self, id: &str) -> Option<Status> {
        self.get(id).map(|c| c.status)
    }

    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Info => s.info += 1,
            }
        }
        s
    }

    fn sorted(&self) -> Vec<&Check> {
        let mut v: Vec<&Check> = self.checks.iter().collect();
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            checks: self.sorted(),
            summary: self.summary(),
        };
        serde_json::to_string(&doc).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in self.sorted() {
            let _ = write!(out, "{:<7} {}", c.status.as_str().to_uppercase(), c.id);
            if let Some(w) = &c.witness {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} skipped, {} info",
            s.pass, s.fail, s.skipped, s.info
        );
        out
    }

    pub fn failure_summary(&self) -> String {
        let fails: Vec<String> = self
            .failures()
            .map(|c| match &c.witness {
                Some(w) => format!("{} {}", c.id, w),
                None => c.id.clone(),
            })
            .collect();
        if fails.is_empty() {
            "no failing checks".to_string()
        } else {
            fails.join("; ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_report_json() {
        assert_eq!(
            Report::new().to_json(),
            r#"{"checks":[],"summary":{"pass":0,"fail":0,"skipped":0,"info":0}}"#
        );
    }

    #[test]
    fn failure_carries_witness() {
        let mut r = Report::new();
        r.pass("RB1");
        r.fail("RB2", json!({"a": 1, "b": 2}));
        assert_eq!(
            r.to_json(),
            r#"{"checks":[{"id":"RB1","status":"pass"},{"id":"RB2","status":"fail","witness":{"a":1,"b":2}}],"summary":{"pass":1,"fail":1,"skipped":0,"info":0}}"#
        );
        assert!(!r.passed());
    }

    #[test]
    fn summary_counts() {
        let mut r = Report::new();
        for id in ["d", "c", "b", "a"] {
            r.pass(id);
        }
        assert_eq!(r.summary().pass, 4);
        assert!(r.to_json().starts_with(r#"{"checks":[{"id":"a""#));
        assert!(r.passed());
    }

    #[test]
    fn text_has_one_line_per_check() {
        let mut r = Report::new();
        r.pass("X");
        r.skip("Y", "hypothesis not met");
        let t = r.to_text();
        assert_eq!(t.lines().count(), 3);
        assert!(t.contains("SKIPPED Y"));
    }
}
