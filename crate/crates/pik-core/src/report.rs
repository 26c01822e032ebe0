//! Machine-readable suite reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ring::Precision;

pub const SCHEMA: &str = "pik-report-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub k: u32,
    pub trials: usize,
    pub seed: u64,
    /// Per named check, how many instances passed and failed.
    pub checks: BTreeMap<String, CheckSummary>,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(suite: &str, k: Precision, trials: usize, seed: u64) -> Report {
        Report {
            schema: SCHEMA.to_string(),
            suite: suite.to_string(),
            k: k.get(),
            trials,
            seed,
            checks: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    fn tally(&mut self, check: &str, ok: bool) {
        let entry = self.checks.entry(check.to_string()).or_insert(CheckSummary { passed: 0, failed: 0 });
        if ok {
            entry.passed += 1;
        } else {
            entry.failed += 1;
        }
    }

    pub fn record(&mut self, check: &str, ok: bool) {
        self.tally(check, ok);
        if !ok {
            self.failures.push(Failure { check: check.to_string(), trial: None, detail: None });
        }
    }

    pub fn record_trial(&mut self, check: &str, trial: usize, ok: bool) {
        self.tally(check, ok);
        if !ok {
            self.failures.push(Failure { check: check.to_string(), trial: Some(trial), detail: None });
        }
    }

    pub fn record_error(&mut self, check: &str, trial: Option<usize>, detail: String) {
        self.tally(check, false);
        self.failures.push(Failure { check: check.to_string(), trial, detail: Some(detail) });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_checks(&self) -> usize {
        self.checks.values().map(|c| c.passed + c.failed).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
