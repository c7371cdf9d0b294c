//! Seeded batch checks over the rule catalogs, the translations and
//! random diagrams.

use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

/// One failed check inside a suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    /// Rule name, fixture name or diagram index.
    pub key: String,
    /// Instance parameters or the serialised diagram.
    pub params: serde_json::Value,
    pub deviation: f64,
    pub seed: Option<u64>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Sorted by key.
    pub failures: Vec<FailureRecord>,
    /// Checks that exist by name but have no fixture yet.
    pub untranscribed: Vec<String>,
    #[serde(serialize_with = "seconds")]
    pub duration: Duration,
}

fn seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerificationReport {
    pub fn new(
        suite: impl Into<String>,
        total: usize,
        passed: usize,
        mut failures: Vec<FailureRecord>,
        untranscribed: Vec<String>,
        duration: Duration,
    ) -> Self {
        failures.sort_by(|a, b| a.key.cmp(&b.key));
        VerificationReport {
            suite: suite.into(),
            total,
            passed,
            failed: total - passed,
            failures,
            untranscribed,
            duration,
        }
    }

    /// True when nothing failed. Untranscribed checks do not count as passes
    /// or failures.
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

mod axioms;
mod fixtures;
mod random;
mod translation;

pub use axioms::{run_axiom_suite, AxiomSuiteConfig};
pub use fixtures::{a1_fixture_names, run_fixture_suite, FixtureSuite};
pub use random::{random_diagram, RandomDiagramSpec};
pub use translation::{run_translation_suite, TranslationMode, TranslationSuiteConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("infeasible random-diagram spec: {0}")]
    Infeasible(String),
}

/// Mixes a base seed with two counters into an independent stream seed.
pub(crate) fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
