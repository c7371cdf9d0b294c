mod common;

use common::{c, max_diff};
use num_complex::Complex64;
use proptest::prelude::*;
use zxw::diagram::{deserialize, serialize, transpose};
use zxw::rules::*;
use zxw::semantics::interpret;
use zxw::translate::{to_zw, to_zx, zw_state};
use zxw::verify::{random_diagram, RandomDiagramSpec};
use zxw::{tensor_equal, Calculus, EqualityMode, PhaseVector, Tensor};

fn complex() -> impl Strategy<Value = Complex64> {
    (0.5f64..2.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn phase(a: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(complex(), a - 1).prop_map(|tail| std::iter::once(c(1.0, 0.0)).chain(tail).collect())
}

fn dims(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=4, 0..=max_len)
}

fn equal(x: &Tensor, y: &Tensor) -> bool {
    tensor_equal(x, y, 1e-9, EqualityMode::Exact).unwrap().equal
}

fn sound(inst: &RuleInstance) -> bool {
    soundness_check(inst, 1e-9).ok()
}

fn calculus() -> impl Strategy<Value = Calculus> {
    prop_oneof![Just(Calculus::Zx), Just(Calculus::Zw)]
}

prop_compose! {
    fn s1_case()(in1 in dims(2), out1 in dims(1), in2 in dims(1), out2 in dims(2), mid in 2usize..=4)
        (p in phase(in1.iter().chain(&out1).copied().chain([mid]).min().unwrap()),
         q in phase(in2.iter().chain(&out2).copied().chain([mid]).min().unwrap()),
         in1 in Just(in1), out1 in Just(out1), in2 in Just(in2), out2 in Just(out2), mid in Just(mid))
        -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>, usize, Vec<Complex64>, Vec<Complex64>) {
        (in1, out1, in2, out2, mid, p, q)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fusion_multiplies_phases_up_to_the_cutoff((in1, out1, in2, out2, mid, p, q) in s1_case()) {
        let ext: Vec<usize> = in1.iter().chain(&out1).chain(&in2).chain(&out2).copied().collect();
        prop_assume!(!ext.is_empty());
        let params = Params::new()
            .with("in1", in1).with("out1", out1).with("in2", in2).with("out2", out2)
            .with("mid", mid).with("p", p.clone()).with("q", q.clone());
        let inst = instantiate("S1", &params).unwrap();
        let a = *ext.iter().min().unwrap();
        let cut = p.len().min(q.len());
        let expect: Vec<Complex64> = (0..a).map(|k| if k < cut { p[k] * q[k] } else { c(0.0, 0.0) }).collect();
        match inst.derived.get("r") {
            Some(ParamValue::Complexes(r)) => prop_assert!(max_diff(r, &expect) < 1e-12),
            other => prop_assert!(false, "unexpected derived r: {other:?}"),
        }
        prop_assert!(sound(&inst));
    }

    #[test]
    fn phase_addition_is_cyclic_convolution(a in 2usize..=5, seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let (p, q) = (random_phase(&mut rng, a), random_phase(&mut rng, a));
        let r = convolve_phase_vectors(&p, &q, a).unwrap();
        for (k, rk) in r.iter().enumerate() {
            let mut want = c(0.0, 0.0);
            for i in 0..a {
                for j in 0..a {
                    if (i + j) % a == k {
                        want += p.get(i) * q.get(j);
                    }
                }
            }
            prop_assert!((rk - want).norm() < 1e-12);
        }
        let params = Params::new().with("a", a).with("p", p.as_slice().to_vec()).with("q", q.as_slice().to_vec());
        if let Ok(inst) = instantiate("PA", &params) {
            prop_assert!(sound(&inst));
        }
    }

    #[test]
    fn solved_phase_copy_meets_every_constraint(a in 2usize..=5, b in 2usize..=5, cc in 2usize..=5, tail in prop::collection::vec(complex(), 4)) {
        let p = PhaseVector::from_tail(&tail[..a - 1]);
        if let Some(q) = solve_pc_bounded(&p, a, b, cc) {
            for i in 0..a.min(b) {
                for j in 0..a.min(cc) {
                    let (l, r) = (p.get(i) * p.get(j), q.get((i + j) % a));
                    prop_assert!((l - r).norm() <= 1e-9 * l.norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn characters_always_solve_phase_copy(a in 2usize..=6, j in 0usize..6) {
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU * (j % a) as f64 / a as f64);
        let p = PhaseVector::new((0..a).map(|k| w.powu(k as u32)).collect()).unwrap();
        let q = solve_pc(&p, a).expect("a character solves its own constraints");
        prop_assert!(max_diff(q.as_slice(), p.as_slice()) < 1e-9);
    }

    #[test]
    fn random_diagrams_validate_and_round_trip(calc in calculus(), seed in any::<u64>(), width in 1usize..=4, gens in 0usize..=8) {
        let spec = RandomDiagramSpec { calculus: calc, seed, max_width: width, max_generators: gens, ..Default::default() };
        let d = random_diagram(&spec).unwrap();
        prop_assert!(d.validate().is_ok());
        let back = deserialize(&serialize(&d)).unwrap();
        prop_assert!(back.structurally_eq(&d));
        prop_assert_eq!(serialize(&back), serialize(&d));
    }

    #[test]
    fn transpose_is_an_involution(calc in calculus(), seed in any::<u64>()) {
        let d = random_diagram(&RandomDiagramSpec { calculus: calc, seed, max_generators: 5, ..Default::default() }).unwrap();
        let t = interpret(&d).unwrap();
        prop_assert!(equal(&t, &interpret(&transpose(&transpose(&d))).unwrap()));
        let once = interpret(&transpose(&d)).unwrap();
        let (m, n) = (d.outputs().len(), d.inputs().len());
        let perm: Vec<usize> = (m..m + n).chain(0..m).collect();
        prop_assert!(equal(&once, &t.permuted(&perm)));
    }

    #[test]
    fn translations_preserve_semantics(calc in calculus(), seed in any::<u64>()) {
        let d = random_diagram(&RandomDiagramSpec { calculus: calc, seed, max_generators: 5, ..Default::default() }).unwrap();
        let image = match calc {
            Calculus::Zx => to_zw(&d).unwrap().target,
            Calculus::Zw => to_zx(&d).unwrap().target,
        };
        prop_assert_eq!(image.calculus(), calc.other());
        prop_assert!(equal(&interpret(&d).unwrap(), &interpret(&image).unwrap()));
    }

    #[test]
    fn zw_states_have_the_requested_amplitudes(label in 1usize..=4, raw in prop::collection::vec((complex(), any::<bool>()), 5)) {
        let psi: Vec<Complex64> = raw[..=label].iter().map(|&(z, keep)| if keep { z } else { c(0.0, 0.0) }).collect();
        let t = interpret(&zw_state(&psi, label)).unwrap();
        prop_assert_eq!(t.shape(), &[label + 1]);
        prop_assert!(max_diff(t.data(), &psi) <= 1e-9 * 1f64.max(psi.iter().map(|z| z.norm()).fold(0.0, f64::max)) * 10.0);
    }

    #[test]
    fn up_to_scalar_recovers_the_factor(seed in any::<u64>(), k in complex()) {
        let d = random_diagram(&RandomDiagramSpec { seed, max_generators: 4, ..Default::default() }).unwrap();
        let t = interpret(&d).unwrap();
        prop_assume!(t.max_abs() > 1e-6);
        let v = tensor_equal(&t.scaled(k), &t, 1e-9, EqualityMode::UpToScalar).unwrap();
        prop_assert!(v.equal);
        prop_assert!((v.fitted_scalar.unwrap() - k).norm() < 1e-9);
        prop_assert!(!tensor_equal(&t.scaled(k), &t, 1e-9, EqualityMode::Exact).unwrap().equal || (k - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn every_rule_survives_random_instances(seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        for calc in [Calculus::Zx, Calculus::Zw] {
            for rule in catalog(calc) {
                let params = sample_params(rule.name, &mut rng, &[2, 3]).unwrap();
                if let Ok(inst) = instantiate(rule.name, &params) {
                    prop_assert!(sound(&inst), "{} unsound at {:?}", rule.name, params);
                    prop_assert!(!sound(&inst.mutated()), "{} mutant not caught", rule.name);
                }
            }
        }
    }
}
