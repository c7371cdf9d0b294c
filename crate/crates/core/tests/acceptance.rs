//! Release checks. Prints one PASS or FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{generators, max_diff, oracle};
use zxw::rules::catalog;
use zxw::semantics::interpret;
use zxw::translate::round_trip_zx;
use zxw::verify::*;
use zxw::{Calculus, Diagram, NodeKind, DEFAULT_TOL};

struct Outcome {
    ok: bool,
    note: String,
}

fn check(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome { ok, note: note.into() }
}

fn summary(r: &VerificationReport) -> String {
    let mut s = format!("{} {}/{} passed", r.suite, r.passed, r.total);
    if let Some(f) = r.failures.first() {
        s += &format!(", first failure {} ({})", f.key, f.detail.as_deref().unwrap_or("deviation"));
    }
    if !r.untranscribed.is_empty() {
        s += &format!(", untranscribed: {}", r.untranscribed.join(", "));
    }
    s
}

fn generator_semantics() -> Outcome {
    let mut n = 0;
    let mut worst = 0.0f64;
    for d in 2..=4 {
        for kind in generators(d).into_iter().filter(|k| k.check().is_ok()) {
            let t = interpret(&Diagram::generator(kind.clone()).expect("generator")).expect("interpret");
            let (shape, data) = oracle(&kind);
            if t.shape() != shape.as_slice() {
                return check(false, format!("{kind:?}: shape {:?} vs {shape:?}", t.shape()));
            }
            worst = worst.max(max_diff(t.data(), &data));
            n += 1;
        }
    }
    check(worst <= 1e-12, format!("{n} generators, worst deviation {worst:.1e}"))
}

fn axioms(calculus: Calculus) -> Outcome {
    let r = run_axiom_suite(calculus, &AxiomSuiteConfig::default());
    check(r.ok() && r.total == 100 * catalog(calculus).len(), summary(&r))
}

fn translation(calculus: Calculus) -> Outcome {
    let spec = RandomDiagramSpec {
        calculus,
        max_generators: 8,
        dims: vec![2, 3, 4],
        max_width: 4,
        seed: 2024,
        allow_closed: false,
    };
    let r = run_translation_suite(&TranslationSuiteConfig {
        spec,
        count: 200,
        tol: DEFAULT_TOL,
        mode: TranslationMode::Faithful,
    })
    .expect("feasible spec");
    check(r.ok() && r.total == 200, summary(&r))
}

fn round_trips() -> Outcome {
    let mut n = 0;
    let mut structural = 0;
    for d in 2..=4 {
        for kind in generators(d).into_iter().filter(|k| k.calculus() == Calculus::Zx && k.check().is_ok()) {
            let g = Diagram::generator(kind.clone()).expect("generator");
            let rt = match round_trip_zx(&g, DEFAULT_TOL) {
                Ok(rt) => rt,
                Err(e) => return check(false, format!("{kind:?}: {e}")),
            };
            let plain = matches!(
                kind,
                NodeKind::Identity { .. } | NodeKind::Swap { .. } | NodeKind::Cap { .. } | NodeKind::Cup { .. }
            );
            if !rt.semantic.equal || (plain && rt.structural != Some(true)) {
                return check(
                    false,
                    format!("{kind:?}: semantic {} structural {:?}", rt.semantic.equal, rt.structural),
                );
            }
            n += 1;
            structural += usize::from(plain);
        }
    }
    let a2 = run_fixture_suite(FixtureSuite::A2, &[2, 3, 4], DEFAULT_TOL);
    check(a2.ok(), format!("{n} generators ({structural} also structurally); {}", summary(&a2)))
}

fn fixtures(which: FixtureSuite) -> Outcome {
    let r = run_fixture_suite(which, &[2, 3, 4], DEFAULT_TOL);
    check(r.ok() && r.untranscribed.is_empty() && r.total > 0, summary(&r))
}

fn negative_controls() -> Outcome {
    let mut missed = vec![];
    let mut n = 0;
    for calculus in [Calculus::Zx, Calculus::Zw] {
        for rule in catalog(calculus) {
            let cfg = AxiomSuiteConfig {
                trials: 5,
                mutate: Some(rule.name.into()),
                only: Some(vec![rule.name.into()]),
                ..Default::default()
            };
            if run_axiom_suite(calculus, &cfg).failed == 0 {
                missed.push(rule.name);
            }
            n += 1;
        }
    }
    let wrong = TranslationSuiteConfig { count: 20, mode: TranslationMode::WrongObjectMap, ..Default::default() };
    let shape_failures = run_translation_suite(&wrong).expect("feasible spec").failed;
    check(
        missed.is_empty() && shape_failures == 20,
        format!(
            "{}/{n} mutated rules caught, wrong object map fails {shape_failures}/20{}",
            n - missed.len(),
            if missed.is_empty() { String::new() } else { format!(", missed {missed:?}") }
        ),
    )
}

type Suite = Box<dyn Fn() -> VerificationReport>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn stable(r: VerificationReport) -> String {
    let mut v = serde_json::to_value(&r).expect("report json");
    v.as_object_mut().expect("object").remove("duration");
    serde_json::to_string(&v).expect("json")
}

fn determinism() -> Outcome {
    let runs: Vec<(&str, Suite)> = vec![
        (
            "axioms:zx",
            Box::new(|| {
                run_axiom_suite(
                    Calculus::Zx,
                    &AxiomSuiteConfig { trials: 10, mutate: Some("PA".into()), ..Default::default() },
                )
            }),
        ),
        (
            "axioms:zw",
            Box::new(|| run_axiom_suite(Calculus::Zw, &AxiomSuiteConfig { trials: 10, ..Default::default() })),
        ),
        ("a1", Box::new(|| run_fixture_suite(FixtureSuite::A1, &[2, 3, 4], DEFAULT_TOL))),
        ("a2", Box::new(|| run_fixture_suite(FixtureSuite::A2, &[2, 3, 4], DEFAULT_TOL))),
        ("a3", Box::new(|| run_fixture_suite(FixtureSuite::A3, &[2, 3, 4], DEFAULT_TOL))),
        (
            "translation",
            Box::new(|| {
                run_translation_suite(&TranslationSuiteConfig { count: 30, ..Default::default() }).expect("feasible")
            }),
        ),
        (
            "wrong-map",
            Box::new(|| {
                run_translation_suite(&TranslationSuiteConfig {
                    count: 10,
                    mode: TranslationMode::WrongObjectMap,
                    ..Default::default()
                })
                .expect("feasible")
            }),
        ),
    ];
    let differing: Vec<&str> = runs.iter().filter(|(_, f)| stable(f()) != stable(f())).map(|(n, _)| *n).collect();
    check(
        differing.is_empty(),
        format!(
            "{} suites repeated byte-for-byte{}",
            runs.len(),
            if differing.is_empty() { String::new() } else { format!(", differ: {differing:?}") }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("generator semantics", Duration::from_secs(5), Box::new(generator_semantics)),
        ("ZX axiom soundness", Duration::from_secs(60), Box::new(|| axioms(Calculus::Zx))),
        ("ZW axiom soundness", Duration::from_secs(60), Box::new(|| axioms(Calculus::Zw))),
        ("ZX to ZW preserves semantics", Duration::from_secs(120), Box::new(|| translation(Calculus::Zx))),
        ("ZW to ZX preserves semantics", Duration::from_secs(120), Box::new(|| translation(Calculus::Zw))),
        ("round trip", Duration::from_secs(30), Box::new(round_trips)),
        ("ZW axioms under translation", Duration::from_secs(60), Box::new(|| fixtures(FixtureSuite::A3))),
        ("ZX fixture pairs", Duration::from_secs(60), Box::new(|| fixtures(FixtureSuite::A1))),
        ("negative controls", Duration::from_secs(60), Box::new(negative_controls)),
        ("determinism", Duration::from_secs(60), Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let ok = out.ok && took <= *budget;
        failed += usize::from(!ok);
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name} [{:.2}s of {}s] {}",
            i + 1,
            took.as_secs_f64(),
            budget.as_secs(),
            out.note
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
