//! Runs every verification suite at a small size and prints the reports.

use zxw::verify::*;
use zxw::{Calculus, DEFAULT_TOL};

fn show(r: &VerificationReport) {
    println!("{:<22} {:>5}/{:<5} passed in {:.2}s", r.suite, r.passed, r.total, r.duration.as_secs_f64());
    for f in r.failures.iter().take(3) {
        println!("    {} deviation {:.2e} {}", f.key, f.deviation, f.detail.as_deref().unwrap_or(""));
    }
}

fn main() {
    let small = AxiomSuiteConfig { trials: 20, ..Default::default() };
    show(&run_axiom_suite(Calculus::Zx, &small));
    show(&run_axiom_suite(Calculus::Zw, &small));
    for which in [FixtureSuite::A1, FixtureSuite::A2, FixtureSuite::A3] {
        show(&run_fixture_suite(which, &[2, 3, 4], DEFAULT_TOL));
    }
    for calculus in [Calculus::Zx, Calculus::Zw] {
        let cfg = TranslationSuiteConfig {
            spec: RandomDiagramSpec { calculus, max_width: 4, ..Default::default() },
            count: 50,
            ..Default::default()
        };
        show(&run_translation_suite(&cfg).expect("feasible spec"));
    }

    println!("negative controls:");
    show(&run_axiom_suite(
        Calculus::Zx,
        &AxiomSuiteConfig { trials: 3, mutate: Some("K0".into()), ..Default::default() },
    ));
    let wrong = TranslationSuiteConfig { count: 5, mode: TranslationMode::WrongObjectMap, ..Default::default() };
    show(&run_translation_suite(&wrong).expect("feasible spec"));
}
