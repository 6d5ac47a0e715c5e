//! Verification report: one record per check, sorted by name.

use std::collections::BTreeMap;

use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub artifact_hashes: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(name: &str, status: Status) -> Self {
        Self {
            name: name.to_string(),
            status,
            detail: None,
            artifact_hashes: BTreeMap::new(),
            certificate: None,
            counterexample: None,
            wall_time_ms: None,
        }
    }

    pub fn pass(name: &str) -> Self {
        Self::new(name, Status::Pass)
    }

    pub fn fail(name: &str, counterexample: serde_json::Value) -> Self {
        let mut r = Self::new(name, Status::Fail);
        r.counterexample = Some(counterexample);
        r
    }

    /// Pass when `ok`, otherwise fail with the counterexample.
    pub fn verdict(name: &str, ok: bool, counterexample: impl FnOnce() -> serde_json::Value) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, counterexample())
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_hash(mut self, artifact: &str, hash: String) -> Self {
        self.artifact_hashes.insert(artifact.to_string(), hash);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub suite: String,
    pub seed: u64,
    pub flags: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(
        suite: &str,
        seed: u64,
        flags: BTreeMap<String, serde_json::Value>,
        mut checks: Vec<CheckRecord>,
    ) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            inconclusive: count(Status::Inconclusive),
        };
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            suite: suite.to_string(),
            seed,
            flags,
            checks,
            summary,
        }
    }

    /// True when nothing failed, and nothing was inconclusive unless allowed.
    pub fn all_passed(&self, allow_inconclusive: bool) -> bool {
        self.summary.fail == 0 && (allow_inconclusive || self.summary.inconclusive == 0)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
