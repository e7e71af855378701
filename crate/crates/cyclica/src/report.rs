//! Structured reports: validation/verification outcomes and cohomology tables.
//!
//! Field order is fixed by declaration so JSON output has a stable key order;
//! identical inputs must produce byte-identical reports.

use serde::Serialize;

/// Outcome of one named check, with every violation witnessed and any
/// witnessing dimensions recorded in `notes`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, violations: Vec<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: violations.is_empty(),
            violations,
            notes: Vec::new(),
        }
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }

    pub fn pass(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: true,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: true,
            violations: Vec::new(),
            notes: vec![format!("skipped: {}", reason.into())],
        }
    }
}

/// Total validation report: all checks run, all failures listed.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckOutcome) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Flattened list of violation strings, prefixed by check name.
    pub fn violations(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .flat_map(|c| {
                c.violations
                    .iter()
                    .map(move |v| format!("{}: {}", c.name, v))
            })
            .collect()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

/// One row of a cyclic-cohomology dimension table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HcRow {
    pub degree: usize,
    pub kernel_dim: usize,
    pub image_rank: usize,
    pub hc_dim: usize,
    pub truncation_stable: bool,
}

/// Per-degree table `n ↦ (dim ker Dⁿ, rank Dⁿ⁻¹, dim HCⁿ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HcReport {
    pub rows: Vec<HcRow>,
}

impl HcReport {
    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.hc_dim).collect()
    }

    pub fn dim_at(&self, degree: usize) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.degree == degree)
            .map(|r| r.hc_dim)
    }
}
