use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Whether a check encodes an implication (violations are failures) or a
/// plain predicate whose truth value is simply reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Theorem,
    Predicate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub kind: CheckKind,
    pub inputs: Vec<String>,
    pub hypothesis: bool,
    pub conclusion: bool,
    /// False when the hypothesis failed; the conclusion is then informational.
    pub binding: bool,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, kind: CheckKind, inputs: Vec<String>) -> VerificationReport {
        VerificationReport {
            check: check.into(),
            kind,
            inputs,
            hypothesis: true,
            conclusion: true,
            binding: true,
            witnesses: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn with_outcome(mut self, hypothesis: bool, conclusion: bool) -> VerificationReport {
        self.hypothesis = hypothesis;
        self.conclusion = conclusion;
        self.binding = hypothesis;
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn timed(mut self, start: Instant) -> VerificationReport {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// A theorem-shaped report whose hypothesis held and conclusion failed.
    pub fn is_violation(&self) -> bool {
        self.kind == CheckKind::Theorem && self.hypothesis && !self.conclusion
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub check: String,
    pub inputs: Vec<String>,
    pub reason: String,
}

/// The serialized output of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: String,
    pub reports: Vec<VerificationReport>,
    pub skipped: Vec<Skipped>,
}

impl ReportFile {
    pub fn new(reports: Vec<VerificationReport>, skipped: Vec<Skipped>) -> ReportFile {
        ReportFile { schema_version: "1".into(), reports, skipped }
    }

    pub fn violations(&self) -> usize {
        self.reports.iter().filter(|r| r.is_violation()).count()
    }

    /// Zeroes every `elapsed_ms` so repeated runs serialize identically.
    pub fn stabilize(&mut self) {
        for r in &mut self.reports {
            r.elapsed_ms = 0;
        }
    }
}
