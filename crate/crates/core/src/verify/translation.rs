use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{derive_seed, random_diagram, FailureRecord, RandomDiagramSpec, VerificationReport, VerifyError};
use crate::diagram::{Calculus, Diagram};
use crate::semantics::{apply_basis, interpret, tensor_equal, EqualityMode, Tensor};
use crate::translate::{to_zw, to_zx, wx_objects, xw_objects};

type ObjectMap = fn(&[usize]) -> Vec<usize>;

/// Basis inputs tried per diagram, on top of the full tensor.
const BASIS_SAMPLES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TranslationMode {
    #[default]
    Faithful,
    /// Checks the image against the identity object map instead of the
    /// real one. Every diagram with a boundary should then fail on shape.
    WrongObjectMap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranslationSuiteConfig {
    /// Calculus and grammar of the source diagrams.
    pub spec: RandomDiagramSpec,
    pub count: usize,
    pub tol: f64,
    pub mode: TranslationMode,
}

impl Default for TranslationSuiteConfig {
    fn default() -> Self {
        TranslationSuiteConfig {
            spec: RandomDiagramSpec::default(),
            count: 200,
            tol: crate::DEFAULT_TOL,
            mode: TranslationMode::Faithful,
        }
    }
}

/// Translates `count` random diagrams and checks that every translation
/// keeps the interpretation, both as full tensors and on sampled basis
/// inputs.
pub fn run_translation_suite(cfg: &TranslationSuiteConfig) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let specs: Vec<RandomDiagramSpec> = (0..cfg.count)
        .map(|i| RandomDiagramSpec { seed: derive_seed(cfg.spec.seed, i as u64, 0), ..cfg.spec.clone() })
        .collect();
    let diagrams = specs.iter().map(random_diagram).collect::<Result<Vec<_>, _>>()?;
    let failures: Vec<FailureRecord> = diagrams
        .par_iter()
        .zip(&specs)
        .enumerate()
        .filter_map(|(i, (d, s))| {
            check_one(d, s.seed, cfg).err().map(|(deviation, detail)| FailureRecord {
                key: format!("diagram#{i:04}"),
                params: serde_json::to_value(d).expect("diagram json"),
                deviation,
                seed: Some(s.seed),
                detail: Some(detail),
            })
        })
        .collect();
    let direction = match cfg.spec.calculus {
        Calculus::Zx => "zx-to-zw",
        Calculus::Zw => "zw-to-zx",
    };
    let passed = cfg.count - failures.len();
    Ok(VerificationReport::new(
        format!("translation:{direction}"),
        cfg.count,
        passed,
        failures,
        vec![],
        start.elapsed(),
    ))
}

fn check_one(d: &Diagram, seed: u64, cfg: &TranslationSuiteConfig) -> Result<(), (f64, String)> {
    let fail = |e: &dyn std::fmt::Display| (f64::INFINITY, e.to_string());
    let (trace, objects): (_, ObjectMap) = match d.calculus() {
        Calculus::Zx => (to_zw(d), xw_objects),
        Calculus::Zw => (to_zx(d), wx_objects),
    };
    let image = trace.map_err(|e| fail(&e))?.target;
    let (ins, outs) = match cfg.mode {
        TranslationMode::Faithful => (objects(d.inputs()), objects(d.outputs())),
        TranslationMode::WrongObjectMap => (d.inputs().to_vec(), d.outputs().to_vec()),
    };
    if image.inputs() != ins.as_slice() || image.outputs() != outs.as_slice() {
        return Err(fail(&format!(
            "shape mismatch: image has {:?} -> {:?}, object map gives {:?} -> {:?}",
            image.inputs(),
            image.outputs(),
            ins,
            outs
        )));
    }
    let compare = |x: Result<Tensor, _>, y: Result<Tensor, _>, what: &str| -> Result<(), (f64, String)> {
        let (x, y) = (x.map_err(|e| fail(&e))?, y.map_err(|e| fail(&e))?);
        let v = tensor_equal(&x, &y, cfg.tol, EqualityMode::Exact).map_err(|e| fail(&e))?;
        if v.equal {
            Ok(())
        } else {
            Err((v.max_abs_deviation, format!("{what} differs by {:.3e}", v.max_abs_deviation)))
        }
    };
    compare(interpret(d), interpret(&image), "full tensor")?;
    let dims: Vec<usize> = d.inputs().iter().map(|&l| d.calculus().carried_dim(l)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xba5e);
    for _ in 0..BASIS_SAMPLES {
        let k: Vec<usize> = dims.iter().map(|&n| rng.gen_range(0..n)).collect();
        compare(apply_basis(d, &k), apply_basis(&image, &k), &format!("basis input {k:?}"))?;
    }
    Ok(())
}
