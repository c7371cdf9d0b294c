//! Axiom catalogs of both calculi as parameterised rewrite rules.
//!
//! A rule is instantiated from named parameters into a [`RuleInstance`]
//! holding both sides as diagrams. Instances can be checked numerically
//! ([`soundness_check`]) or applied at a caller-named site
//! ([`rewrite::apply`]).

mod algebra;
mod params;
pub mod rewrite;
mod zw;
mod zx;

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::constructors::ConstructError;
use crate::diagram::{compose_par, constructors, Calculus, Diagram, DiagramError, NodeKind};
use crate::phase::PhaseVector;
use crate::semantics::{interpret, tensor_equal, EqualityMode, SemanticsError};
use crate::verify::{FailureRecord, VerificationReport};

pub use algebra::{convolve_phase_vectors, k2_transform, solve_pc, solve_pc_bounded};
pub use params::{ParamKind, ParamSpec, ParamValue, Params};
pub use rewrite::{
    apply, find_matches, replay, Direction, ReplayError, ReplayOutcome, RewriteScript, RewriteSite, ScriptStep, StepLog,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuleError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("parameter `{name}` must be a {expected}")]
    WrongType { name: String, expected: String },
    #[error("{rule}: side condition violated: {condition}")]
    SideCondition { rule: String, condition: String },
    #[error("malformed rule input: {0}")]
    Malformed(String),
    #[error("site mismatch: {0}")]
    SiteMismatch(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Public description of a rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleDescriptor {
    pub name: &'static str,
    pub calculus: Calculus,
    /// Provable from the other rules rather than an axiom.
    pub derived: bool,
    pub summary: &'static str,
    pub params: Vec<ParamSpec>,
    pub side_conditions: Vec<&'static str>,
}

/// Both sides of a rule at concrete parameters.
#[derive(Debug, Clone)]
pub struct RuleInstance {
    pub name: String,
    pub calculus: Calculus,
    pub params: Params,
    /// Quantities computed from the parameters while building the sides.
    pub derived: Params,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

pub(crate) struct Built {
    lhs: Diagram,
    rhs: Diagram,
    derived: Params,
}

impl Built {
    fn new(lhs: Diagram, rhs: Diagram) -> Self {
        Built { lhs, rhs, derived: Params::new() }
    }
}

pub(crate) struct Rule {
    desc: RuleDescriptor,
    build: fn(&Params) -> Result<Built, RuleError>,
    sample: fn(&mut ChaCha8Rng, &[usize]) -> Params,
}

fn rules(calculus: Calculus) -> Vec<Rule> {
    match calculus {
        Calculus::Zx => zx::rules(),
        Calculus::Zw => zw::rules(),
    }
}

fn find_rule(name: &str) -> Result<Rule, RuleError> {
    rules(Calculus::Zx)
        .into_iter()
        .chain(rules(Calculus::Zw))
        .find(|r| r.desc.name == name)
        .ok_or_else(|| RuleError::UnknownRule(name.to_string()))
}

/// Every rule of a calculus, axioms and derived rules alike.
pub fn catalog(calculus: Calculus) -> Vec<RuleDescriptor> {
    rules(calculus).into_iter().map(|r| r.desc).collect()
}

pub fn descriptor(name: &str) -> Result<RuleDescriptor, RuleError> {
    Ok(find_rule(name)?.desc)
}

/// Builds both sides of `name` at `params`, checking side conditions.
pub fn instantiate(name: &str, params: &Params) -> Result<RuleInstance, RuleError> {
    let rule = find_rule(name)?;
    for (k, _) in params.iter() {
        if !rule.desc.params.iter().any(|p| p.name == k) {
            return Err(RuleError::Malformed(format!("{name}: unknown parameter `{k}`")));
        }
    }
    let built = (rule.build)(params).map_err(|e| match e {
        RuleError::SideCondition { rule: r, condition } if r.is_empty() => {
            RuleError::SideCondition { rule: name.to_string(), condition }
        }
        e => e,
    })?;
    debug_assert_eq!(built.lhs.signature(), built.rhs.signature(), "{name}: sides disagree on boundary");
    Ok(RuleInstance {
        name: name.to_string(),
        calculus: rule.desc.calculus,
        params: params.clone(),
        derived: built.derived,
        lhs: built.lhs,
        rhs: built.rhs,
    })
}

/// Draws parameters for `name` with wire dimensions from `dims`.
///
/// The draw respects every side condition, so instantiation succeeds.
pub fn sample_params(name: &str, rng: &mut ChaCha8Rng, dims: &[usize]) -> Result<Params, RuleError> {
    let rule = find_rule(name)?;
    Ok((rule.sample)(rng, dims))
}

pub(crate) fn side(condition: impl Into<String>) -> RuleError {
    RuleError::SideCondition { rule: String::new(), condition: condition.into() }
}

/// Size of the perturbation used by [`RuleInstance::mutated`].
pub const MUTATION: f64 = 1e-3;

impl RuleInstance {
    /// A deliberately unsound copy: the first complex parameter found on the
    /// right-hand side (a phase entry past the pinned leading one, a ZW
    /// spider phase or a scalar) is shifted by [`MUTATION`]. A right-hand
    /// side without complex parameters is scaled by `1 + MUTATION` instead.
    pub fn mutated(&self) -> RuleInstance {
        let mut nodes = self.rhs.nodes().clone();
        let target = nodes.iter_mut().find_map(|(_, k)| match k {
            NodeKind::ZSpider { phase, .. } if phase.len() > 1 => Some(k),
            NodeKind::ZwSpider { .. } | NodeKind::GlobalScalar { .. } | NodeKind::ZwScalar { .. } => Some(k),
            _ => None,
        });
        let delta = Complex64::new(MUTATION, 0.0);
        let rhs = match target {
            Some(kind) => {
                match kind {
                    NodeKind::ZSpider { phase, .. } => {
                        let mut v = phase.as_slice().to_vec();
                        v[1] += delta;
                        *phase = PhaseVector::new(v).expect("leading entry untouched");
                    }
                    NodeKind::ZwSpider { phase, .. } => *phase += delta,
                    NodeKind::GlobalScalar { value } | NodeKind::ZwScalar { value } => *value += delta,
                    _ => unreachable!(),
                }
                Diagram::from_parts(
                    self.rhs.calculus(),
                    nodes,
                    self.rhs.wires().to_vec(),
                    self.rhs.inputs().to_vec(),
                    self.rhs.outputs().to_vec(),
                )
                .expect("parameter change keeps the diagram valid")
            }
            None => {
                let s = constructors::scalar(self.calculus, Complex64::new(1.0 + MUTATION, 0.0));
                compose_par(&s, &self.rhs).expect("same calculus")
            }
        };
        RuleInstance { rhs, ..self.clone() }
    }
}

/// Interprets both sides and compares them exactly within `tol`.
pub fn soundness_check(inst: &RuleInstance, tol: f64) -> VerificationReport {
    let start = Instant::now();
    let key = inst.name.clone();
    let outcome = interpret(&inst.lhs)
        .and_then(|l| interpret(&inst.rhs).map(|r| (l, r)))
        .and_then(|(l, r)| tensor_equal(&l, &r, tol, EqualityMode::Exact));
    let params = serde_json::to_value(&inst.params).expect("params json");
    let (passed, failures) = match outcome {
        Ok(v) if v.equal => (1, vec![]),
        Ok(v) => (0, vec![FailureRecord { key, params, deviation: v.max_abs_deviation, seed: None, detail: None }]),
        Err(e) => {
            (0, vec![FailureRecord { key, params, deviation: f64::INFINITY, seed: None, detail: Some(e.to_string()) }])
        }
    };
    VerificationReport::new(format!("soundness:{}", inst.name), 1, passed, failures, vec![], start.elapsed())
}

/// Random complex number with modulus in `[0.5, 2]` and uniform phase.
pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = rng.gen_range(0.5..=2.0);
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

/// Random phase vector of length `a` with entries drawn by [`random_complex`].
pub fn random_phase(rng: &mut ChaCha8Rng, a: usize) -> PhaseVector {
    let tail: Vec<Complex64> = (1..a).map(|_| random_complex(rng)).collect();
    PhaseVector::from_tail(&tail)
}

pub(crate) fn pick<T: Copy>(rng: &mut ChaCha8Rng, xs: &[T]) -> T {
    xs[rng.gen_range(0..xs.len())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn catalogs_cover_both_calculi() {
        let zx: Vec<_> = catalog(Calculus::Zx).into_iter().map(|d| (d.name, d.derived)).collect();
        for name in ["S1", "S2", "D1", "DA", "K0", "K2", "ZNF", "XM", "PA", "PC", "WW", "HP"] {
            assert!(zx.contains(&(name, false)), "{name}");
        }
        assert!(zx.contains(&("S4", true)));
        assert!(zx.contains(&("HX", true)));
        assert!(catalog(Calculus::Zw).len() >= 10);
    }

    #[test]
    fn every_rule_samples_valid_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for calc in [Calculus::Zx, Calculus::Zw] {
            for d in catalog(calc) {
                for _ in 0..5 {
                    let p = sample_params(d.name, &mut rng, &[2, 3, 4]).unwrap();
                    let inst = instantiate(d.name, &p).unwrap_or_else(|e| panic!("{}: {e}", d.name));
                    assert_eq!(inst.lhs.signature(), inst.rhs.signature(), "{}", d.name);
                    let report = soundness_check(&inst, 1e-9);
                    assert_eq!(report.failed, 0, "{}: {:?}", d.name, report.failures);
                    let bad = soundness_check(&inst.mutated(), 1e-9);
                    assert_eq!(bad.failed, 1, "{}: mutation went unnoticed", d.name);
                }
            }
        }
    }

    #[test]
    fn unknown_rule_and_parameter() {
        assert!(matches!(instantiate("nope", &Params::new()), Err(RuleError::UnknownRule(_))));
        let p = Params::new().with("a", 2usize).with("zzz", 1usize);
        assert!(matches!(instantiate("S2", &p), Err(RuleError::Malformed(_))));
    }
}
