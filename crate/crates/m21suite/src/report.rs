use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Report,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Report => "REPORT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub reports: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub version: String,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(scenario: &str, results: Vec<CheckResult>) -> Self {
        let mut summary = Summary::default();
        for r in &results {
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Report => summary.reports += 1,
            }
        }
        Report { scenario: scenario.to_string(), version: crate::VERSION.to_string(), results, summary }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, witnesses indented below; ANSI colors only if `color`.
    pub fn to_text(&self, color: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {} (m21 {})", self.scenario, self.version);
        for r in &self.results {
            let tag = r.status.as_str();
            let tag = if color {
                let code = match r.status {
                    Status::Pass => "32",
                    Status::Fail => "31",
                    Status::Report => "33",
                };
                format!("\x1b[{code}m{tag:<6}\x1b[0m")
            } else {
                format!("{tag:<6}")
            };
            let _ = writeln!(out, "{tag} {} [{}] {} ms", r.name, r.kind, r.ms);
            if let Some(w) = &r.witness {
                for line in w.lines() {
                    let _ = writeln!(out, "       {line}");
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "passed: {}, failed: {}, reports: {}", s.passed, s.failed, s.reports);
        out
    }

    /// Copy with all timings zeroed, for byte comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.results {
            c.ms = 0;
        }
        r
    }
}
