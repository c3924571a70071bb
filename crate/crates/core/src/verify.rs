//! Pass/fail records shared by all verification suites.

use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub passed: bool,
    pub residual_terms: Vec<String>,
    pub timing_ms: f64,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>, residual_terms: Vec<String>, timing_ms: f64) -> Self {
        VerificationReport { check_id: check_id.into(), passed: residual_terms.is_empty(), residual_terms, timing_ms }
    }

    /// Runs `f`, which returns residual descriptions, and times it.
    pub fn timed<F: FnOnce() -> Vec<String>>(check_id: impl Into<String>, f: F) -> Self {
        let start = Instant::now();
        let residuals = f();
        VerificationReport::new(check_id, residuals, start.elapsed().as_secs_f64() * 1e3)
    }

    /// Failed report carrying an error message.
    pub fn failed(check_id: impl Into<String>, reason: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            passed: false,
            residual_terms: vec![reason.into()],
            timing_ms: 0.0,
        }
    }
}
