use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{derive_seed, FailureRecord, VerificationReport};
use crate::diagram::Calculus;
use crate::rules::{catalog, instantiate, sample_params, soundness_check, RuleError};

/// Draws per instance before a rule whose side conditions keep failing is
/// reported.
const MAX_REDRAWS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomSuiteConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// Replace the right-hand side of this rule by its mutant.
    pub mutate: Option<String>,
    /// Restrict the run to these rules.
    pub only: Option<Vec<String>>,
}

impl Default for AxiomSuiteConfig {
    fn default() -> Self {
        AxiomSuiteConfig {
            dims: vec![2, 3, 4],
            trials: 100,
            seed: 42,
            tol: crate::DEFAULT_TOL,
            mutate: None,
            only: None,
        }
    }
}

/// Checks `trials` random instances of every rule of `calculus`.
///
/// Each (rule, trial) pair has its own RNG stream, so results do not depend
/// on scheduling. Draws that violate a side condition are redrawn.
pub fn run_axiom_suite(calculus: Calculus, cfg: &AxiomSuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let rules: Vec<(usize, &'static str)> = catalog(calculus)
        .into_iter()
        .enumerate()
        .map(|(i, d)| (i, d.name))
        .filter(|(_, n)| cfg.only.as_ref().is_none_or(|o| o.iter().any(|x| x == n)))
        .collect();
    let jobs: Vec<(usize, &'static str, usize)> =
        rules.iter().flat_map(|&(i, n)| (0..cfg.trials).map(move |t| (i, n, t))).collect();
    let outcomes: Vec<Option<FailureRecord>> = jobs
        .par_iter()
        .map(|&(i, name, trial)| {
            let seed = derive_seed(cfg.seed, i as u64, trial as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let key = format!("{name}#{trial}");
            let mut last = None;
            for _ in 0..MAX_REDRAWS {
                let params = sample_params(name, &mut rng, &cfg.dims).expect("catalog rule");
                match instantiate(name, &params) {
                    Ok(inst) => {
                        let inst = if cfg.mutate.as_deref() == Some(name) { inst.mutated() } else { inst };
                        let report = soundness_check(&inst, cfg.tol);
                        return report.failures.into_iter().next().map(|f| FailureRecord {
                            key,
                            seed: Some(seed),
                            ..f
                        });
                    }
                    Err(e @ RuleError::SideCondition { .. }) => last = Some(e),
                    Err(e) => {
                        return Some(FailureRecord {
                            key,
                            params: serde_json::to_value(&params).expect("params json"),
                            deviation: f64::INFINITY,
                            seed: Some(seed),
                            detail: Some(e.to_string()),
                        })
                    }
                }
            }
            Some(FailureRecord {
                key,
                params: serde_json::Value::Null,
                deviation: f64::INFINITY,
                seed: Some(seed),
                detail: Some(format!("no valid draw in {MAX_REDRAWS} attempts: {}", last.expect("one attempt"))),
            })
        })
        .collect();
    let failures: Vec<FailureRecord> = outcomes.into_iter().flatten().collect();
    let total = jobs.len();
    VerificationReport::new(
        format!("axioms:{calculus}"),
        total,
        total - failures.len(),
        failures,
        vec![],
        start.elapsed(),
    )
}
