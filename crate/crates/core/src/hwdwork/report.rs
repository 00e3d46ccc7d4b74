use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Where two sides of a congruence first disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub location: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of a congruence verification over a finite window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub claim: String,
    pub p: u64,
    /// Largest exponent `e` such that some check is modulo `p^e`.
    pub precision: u32,
    pub params: BTreeMap<String, String>,
    /// Truncation window the congruences were verified on.
    pub window: String,
    pub holds: bool,
    pub checks: usize,
    pub failure: Option<Failure>,
    pub elapsed_ms: u64,
}

impl CongruenceReport {
    pub(crate) fn start(claim: &str, p: u64, window: String) -> ReportBuilder {
        ReportBuilder {
            report: CongruenceReport {
                claim: claim.into(),
                p,
                precision: 0,
                params: BTreeMap::new(),
                window,
                holds: true,
                checks: 0,
                failure: None,
                elapsed_ms: 0,
            },
            started: Instant::now(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}: {} (p = {}, modulo p^{}, window {}, {} checks)",
            self.claim,
            if self.holds { "holds" } else { "FAILS" },
            self.p,
            self.precision,
            self.window,
            self.checks
        );
        for (k, v) in &self.params {
            out.push_str(&format!("\n  {k} = {v}"));
        }
        if let Some(f) = &self.failure {
            out.push_str(&format!(
                "\n  first failure in {} at {}: expected {}, got {}",
                f.check, f.location, f.expected, f.actual
            ));
        }
        out
    }
}

pub(crate) struct ReportBuilder {
    report: CongruenceReport,
    started: Instant,
}

impl ReportBuilder {
    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.report.params.insert(key.into(), value.to_string());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.report.params.insert(key.into(), value.to_string());
    }

    /// Record one check modulo `p^e`; `failure` is `None` when it holds.
    pub fn check(&mut self, e: u32, failure: Option<Failure>) {
        self.report.checks += 1;
        self.report.precision = self.report.precision.max(e);
        if let Some(f) = failure {
            if self.report.holds {
                self.report.holds = false;
                self.report.failure = Some(f);
            }
        }
    }

    pub fn finish(mut self) -> CongruenceReport {
        self.report.elapsed_ms = self.started.elapsed().as_millis() as u64;
        self.report
    }
}
