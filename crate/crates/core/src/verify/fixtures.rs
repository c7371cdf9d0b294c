use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FailureRecord, VerificationReport};
use crate::diagram::{compose_par, compose_seq, constructors, Calculus, Diagram, DiagramBuilder, NodeKind};
use crate::phase::PhaseVector;
use crate::rules::{
    catalog, instantiate, random_phase, replay, sample_params, Direction, Params, RewriteScript, RewriteSite,
    ScriptStep,
};
use crate::semantics::{interpret, tensor_equal, EqualityMode};
use crate::translate::{round_trip_zx, to_zx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureSuite {
    /// Derived ZX equalities.
    A1,
    /// Round trips of every ZX generator family.
    A2,
    /// ZX images of the ZW rules.
    A3,
}

impl std::str::FromStr for FixtureSuite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(FixtureSuite::A1),
            "a2" => Ok(FixtureSuite::A2),
            "a3" => Ok(FixtureSuite::A3),
            _ => Err(format!("unknown fixture suite `{s}` (expected a1, a2 or a3)")),
        }
    }
}

/// Seed for the random phases inside fixtures.
const FIXTURE_SEED: u64 = 0x5eed;
/// Instances per ZW rule in the image suite.
const IMAGE_TRIALS: usize = 3;

type Sides = (Diagram, Diagram, Option<RewriteScript>);
type Build = fn(usize, &mut ChaCha8Rng) -> Sides;

struct Fixture {
    name: &'static str,
    build: Option<Build>,
}

fn fixtures() -> Vec<Fixture> {
    let f = |name, build: Build| Fixture { name, build: Some(build) };
    vec![
        f("embedding-retract", embedding_retract),
        f("inverse-phases", inverse_phases),
        f("x-unit", x_unit),
        f("x-commutative", x_commutative),
        f("x-adds-basis", x_adds_basis),
        f("z-counit-basis", z_counit_basis),
        f("x-fusion", x_fusion),
        f("colour-change", colour_change),
        f("hadamard-z-state", hadamard_z_state),
        f("hadamard-squared", hadamard_squared),
        f("antipode-through-z", antipode_through_z),
        f("zx-bialgebra", zx_bialgebra),
        f("x-shift-commute", x_shift_commute),
        f("z-copies-basis", z_copies_basis),
        f("hadamard-unitary", hadamard_unitary),
    ]
}

/// Names of the derived-equality fixtures, in suite order.
pub fn a1_fixture_names() -> Vec<&'static str> {
    fixtures().into_iter().map(|f| f.name).collect()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn gen(kind: NodeKind) -> Diagram {
    Diagram::generator(kind).expect("fixture generator")
}

fn seq(parts: &[Diagram]) -> Diagram {
    parts[1..].iter().fold(parts[0].clone(), |acc, p| compose_seq(&acc, p).expect("fixture composes"))
}

fn par(parts: &[Diagram]) -> Diagram {
    parts[1..].iter().fold(parts[0].clone(), |acc, p| compose_par(&acc, p).expect("fixture composes"))
}

fn zq(d: usize, n: usize, m: usize, r: PhaseVector) -> Diagram {
    constructors::z_spider(d, n, m, r).expect("fixture spider")
}

fn xq(d: usize, n: usize, m: usize) -> Diagram {
    gen(NodeKind::XSpider { dim: d, n_in: n, n_out: m })
}

fn id(d: usize) -> Diagram {
    constructors::wires(Calculus::Zx, &[d])
}

fn ket(j: usize, d: usize) -> Diagram {
    constructors::basis_ket(j, d).expect("fixture ket")
}

fn h(d: usize) -> Diagram {
    constructors::hadamard(d).expect("hadamard")
}

fn hd(d: usize) -> Diagram {
    constructors::hadamard_dagger(d).expect("hadamard dagger")
}

fn embedding_retract(d: usize, _: &mut ChaCha8Rng) -> Sides {
    (seq(&[constructors::embedding(d, d + 2), constructors::embedding(d + 2, d)]), id(d), None)
}

fn inverse_phases(d: usize, rng: &mut ChaCha8Rng) -> Sides {
    let r = random_phase(rng, d);
    let inv = PhaseVector::new(r.as_slice().iter().map(|x| 1.0 / x).collect()).expect("1/1 = 1");
    (seq(&[zq(d, 1, 1, r), zq(d, 1, 1, inv)]), id(d), None)
}

fn x_unit(d: usize, _: &mut ChaCha8Rng) -> Sides {
    (seq(&[par(&[id(d), ket(0, d)]), xq(d, 2, 1)]), id(d), None)
}

fn x_commutative(d: usize, _: &mut ChaCha8Rng) -> Sides {
    (seq(&[gen(NodeKind::Swap { a: d, b: d }), xq(d, 2, 1)]), xq(d, 2, 1), None)
}

fn x_adds_basis(d: usize, _: &mut ChaCha8Rng) -> Sides {
    let (j, k) = (d - 1, d / 2);
    (seq(&[par(&[ket(j, d), ket(k, d)]), xq(d, 2, 1)]), ket((j + k) % d, d), None)
}

fn z_counit_basis(d: usize, rng: &mut ChaCha8Rng) -> Sides {
    let r = random_phase(rng, d);
    let j = d - 1;
    (seq(&[ket(j, d), zq(d, 1, 0, r.clone())]), constructors::scalar(Calculus::Zx, r.get(j)), None)
}

fn x_fusion(d: usize, _: &mut ChaCha8Rng) -> Sides {
    (seq(&[par(&[xq(d, 2, 1), id(d)]), xq(d, 2, 1)]), xq(d, 3, 1), None)
}

fn colour_change(d: usize, _: &mut ChaCha8Rng) -> Sides {
    let conj = seq(&[par(&[hd(d), hd(d)]), zq(d, 2, 1, PhaseVector::phase_free(d)), h(d)]);
    (xq(d, 2, 1), par(&[constructors::scalar(Calculus::Zx, c((d as f64).sqrt())), conj]), None)
}

/// Hadamard on a phase-free Z-state; reduced by one curated HX step.
fn hadamard_z_state(d: usize, _: &mut ChaCha8Rng) -> Sides {
    let params = Params::new().with("d", d).with("n", 0usize).with("m", 1usize);
    let inst = instantiate("HX", &params).expect("HX instance");
    let site = RewriteSite(inst.lhs.nodes().keys().map(|k| (*k, *k)).collect());
    let script = RewriteScript(vec![ScriptStep::new("HX", &params, site, Direction::LeftToRight)]);
    (inst.lhs, inst.rhs, Some(script))
}

fn hadamard_squared(d: usize, _: &mut ChaCha8Rng) -> Sides {
    (seq(&[h(d), h(d)]), constructors::antipode(d).expect("antipode"), None)
}

fn antipode_through_z(d: usize, rng: &mut ChaCha8Rng) -> Sides {
    let r = random_phase(rng, d);
    let n = constructors::antipode(d).expect("antipode");
    (seq(&[zq(d, 1, 1, r.clone()), n.clone()]), seq(&[n, zq(d, 1, 1, r.reversed())]), None)
}

fn zx_bialgebra(d: usize, _: &mut ChaCha8Rng) -> Sides {
    let copy = zq(d, 1, 2, PhaseVector::phase_free(d));
    let lhs = seq(&[xq(d, 2, 1), copy.clone()]);
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&[d, d]);
    let l = b.place(&copy, &[ins[0]]);
    let r = b.place(&copy, &[ins[1]]);
    let o1 = b.place(&xq(d, 2, 1), &[l[0], r[0]]);
    let o2 = b.place(&xq(d, 2, 1), &[l[1], r[1]]);
    b.outputs(&o1);
    b.outputs(&o2);
    (lhs, b.finish().expect("bialgebra"), None)
}

fn x_shift_commute(d: usize, _: &mut ChaCha8Rng) -> Sides {
    let s = |j| constructors::shift(d, j).expect("shift");
    (seq(&[s(1), s(d - 1)]), id(d), None)
}

fn z_copies_basis(d: usize, _: &mut ChaCha8Rng) -> Sides {
    let j = d / 2;
    (seq(&[ket(j, d), zq(d, 1, 2, PhaseVector::phase_free(d))]), par(&[ket(j, d), ket(j, d)]), None)
}

fn hadamard_unitary(d: usize, _: &mut ChaCha8Rng) -> Sides {
    (seq(&[h(d), hd(d)]), id(d), None)
}

fn compare(key: String, lhs: &Diagram, rhs: &Diagram, tol: f64) -> Option<FailureRecord> {
    let fail = |deviation, detail| FailureRecord {
        key: key.clone(),
        params: serde_json::Value::Null,
        deviation,
        seed: None,
        detail,
    };
    match interpret(lhs).and_then(|l| interpret(rhs).and_then(|r| tensor_equal(&l, &r, tol, EqualityMode::Exact))) {
        Ok(v) if v.equal => None,
        Ok(v) => Some(fail(v.max_abs_deviation, None)),
        Err(e) => Some(fail(f64::INFINITY, Some(e.to_string()))),
    }
}

/// Runs one of the fixture suites at every dimension in `dims`.
pub fn run_fixture_suite(which: FixtureSuite, dims: &[usize], tol: f64) -> VerificationReport {
    let start = Instant::now();
    let mut total = 0;
    let mut failures = vec![];
    let mut untranscribed = vec![];
    let name = match which {
        FixtureSuite::A1 => {
            let mut rng = ChaCha8Rng::seed_from_u64(FIXTURE_SEED);
            for fx in fixtures() {
                let Some(build) = fx.build else {
                    untranscribed.push(fx.name.to_string());
                    continue;
                };
                for &d in dims {
                    total += 1;
                    let key = format!("{}@{d}", fx.name);
                    let (lhs, rhs, script) = build(d, &mut rng);
                    if let Some(f) = compare(key.clone(), &lhs, &rhs, tol) {
                        failures.push(f);
                        continue;
                    }
                    if let Some(script) = script {
                        let ok = replay(&lhs, &script).is_ok_and(|out| out.diagram.structurally_eq(&rhs));
                        if !ok {
                            failures.push(FailureRecord {
                                key,
                                params: serde_json::Value::Null,
                                deviation: 0.0,
                                seed: None,
                                detail: Some("curated script did not reach the right-hand side".into()),
                            });
                        }
                    }
                }
            }
            "fixtures:a1"
        }
        FixtureSuite::A2 => {
            for &d in dims {
                for (family, g) in generator_families(d) {
                    total += 1;
                    let key = format!("{family}@{d}");
                    match round_trip_zx(&g, tol) {
                        Ok(r) if r.ok() => {}
                        Ok(r) => failures.push(FailureRecord {
                            key,
                            params: serde_json::Value::Null,
                            deviation: r.semantic.max_abs_deviation,
                            seed: None,
                            detail: (r.structural == Some(false)).then(|| "structural check failed".to_string()),
                        }),
                        Err(e) => failures.push(FailureRecord {
                            key,
                            params: serde_json::Value::Null,
                            deviation: f64::INFINITY,
                            seed: None,
                            detail: Some(e.to_string()),
                        }),
                    }
                }
            }
            "fixtures:a2"
        }
        FixtureSuite::A3 => {
            let mut rng = ChaCha8Rng::seed_from_u64(FIXTURE_SEED);
            for desc in catalog(Calculus::Zw) {
                for trial in 0..IMAGE_TRIALS {
                    total += 1;
                    let key = format!("{}#{trial}", desc.name);
                    let params = sample_params(desc.name, &mut rng, dims).expect("catalog rule");
                    let imaged = instantiate(desc.name, &params).map_err(|e| e.to_string()).and_then(|i| {
                        Ok((to_zx(&i.lhs).map_err(|e| e.to_string())?, to_zx(&i.rhs).map_err(|e| e.to_string())?))
                    });
                    match imaged {
                        Ok((l, r)) => failures.extend(compare(key, &l.target, &r.target, tol)),
                        Err(e) => failures.push(FailureRecord {
                            key,
                            params: serde_json::to_value(&params).expect("params json"),
                            deviation: f64::INFINITY,
                            seed: None,
                            detail: Some(e),
                        }),
                    }
                }
            }
            "fixtures:a3"
        }
    };
    let passed = total - failures.len();
    VerificationReport::new(name, total, passed, failures, untranscribed, start.elapsed())
}

/// One representative of each ZX generator family at dimension `d`.
fn generator_families(d: usize) -> Vec<(&'static str, Diagram)> {
    let mut rng = ChaCha8Rng::seed_from_u64(FIXTURE_SEED ^ d as u64);
    let r = random_phase(&mut rng, d);
    vec![
        ("z-spider", gen(NodeKind::ZSpider { inputs: vec![d, d + 1], outputs: vec![d], phase: r })),
        ("x-spider", xq(d, 2, 2)),
        ("embedding", constructors::embedding(d + 1, d)),
        ("basis-ket", ket(d - 1, d)),
        ("identity", gen(NodeKind::Identity { dim: d })),
        ("swap", gen(NodeKind::Swap { a: d, b: 2 })),
        ("cap-cup", par(&[gen(NodeKind::Cap { dim: d }), gen(NodeKind::Cup { dim: d })])),
        ("scalar", constructors::scalar(Calculus::Zx, Complex64::new(0.5, d as f64))),
    ]
}
