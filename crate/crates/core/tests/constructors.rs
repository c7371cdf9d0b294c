use std::f64::consts::PI;

use num_complex::Complex64;
use zxw::diagram::{compose_par, compose_seq, constructors, transpose, Calculus, Diagram, DiagramBuilder, NodeKind};
use zxw::semantics::{interpret, Tensor};
use zxw::PhaseVector;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn assert_matrix(t: &Tensor, rows: usize, want: impl Fn(usize, usize) -> Complex64) {
    let m = t.as_matrix(rows);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let w = want(i, j);
            assert!((x - w).norm() < 1e-12, "entry ({i}, {j}): got {x}, want {w}");
        }
    }
}

fn digits(mut flat: usize, dim: usize, n: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    for k in (0..n).rev() {
        v[k] = flat % dim;
        flat /= dim;
    }
    v
}

#[test]
fn hadamard_is_the_normalised_fourier_matrix() {
    for d in 2..=4 {
        let h = interpret(&constructors::hadamard(d).unwrap()).unwrap();
        let s = 1.0 / (d as f64).sqrt();
        assert_matrix(&h, 1, |j, k| Complex64::from_polar(s, 2.0 * PI * (j * k) as f64 / d as f64));
        let hd = interpret(&constructors::hadamard_dagger(d).unwrap()).unwrap();
        assert_matrix(&hd, 1, |j, k| Complex64::from_polar(s, -2.0 * PI * (j * k) as f64 / d as f64));
    }
}

#[test]
fn antipode_and_shift_permute_the_basis() {
    for a in 2..=4 {
        let n = interpret(&constructors::antipode(a).unwrap()).unwrap();
        assert_matrix(&n, 1, |i, k| c(((a - k) % a == i) as u8 as f64));
        for j in 0..a {
            let s = interpret(&constructors::shift(a, j).unwrap()).unwrap();
            assert_matrix(&s, 1, |i, k| c(((k + j) % a == i) as u8 as f64));
        }
    }
}

#[test]
fn inductive_x_spider_is_the_modular_delta() {
    for a in 2..=4 {
        for n in 0..=3 {
            for m in 0..=3 {
                let x = constructors::x_spider(a, n, m).unwrap();
                assert_eq!(x.inputs(), vec![a; n].as_slice());
                assert_eq!(x.outputs(), vec![a; m].as_slice());
                let t = interpret(&x).unwrap();
                assert_matrix(&t, m, |i, k| {
                    let so: usize = digits(i, a, m).iter().sum();
                    let si: usize = digits(k, a, n).iter().sum();
                    c((so % a == si % a) as u8 as f64)
                });
            }
        }
    }
    let t = interpret(&constructors::x_spider(2, 2, 1).unwrap()).unwrap();
    let want = [[1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 1.0, 0.0]];
    assert_matrix(&t, 1, |i, j| c(want[i][j]));
}

#[test]
fn mixed_z_spider_examples() {
    let t = interpret(&constructors::general_z_spider(&[3], &[2], PhaseVector::phase_free(2)).unwrap()).unwrap();
    assert_matrix(&t, 1, |i, j| c((i == j) as u8 as f64));
    let cap = interpret(&constructors::general_z_spider(&[], &[3, 3], PhaseVector::phase_free(3)).unwrap()).unwrap();
    assert_eq!(cap.shape(), &[3, 3]);
    assert_matrix(&cap, 1, |i, j| c((i == j) as u8 as f64));
    let r = PhaseVector::new(vec![c(1.0), Complex64::i(), c(-1.0)]).unwrap();
    let z = interpret(&constructors::z_spider(3, 1, 1, r).unwrap()).unwrap();
    assert_matrix(&z, 1, |i, j| if i != j { c(0.0) } else { [c(1.0), Complex64::i(), c(-1.0)][i] });
    assert!(constructors::general_z_spider(&[3], &[2], PhaseVector::phase_free(3)).is_err());
}

#[test]
fn mixed_z_spider_support_lies_on_the_diagonal() {
    let r = PhaseVector::new(vec![c(1.0), c(0.5), Complex64::new(0.0, 2.0)]).unwrap();
    let d = constructors::general_z_spider(&[4, 3], &[3, 5], r.clone()).unwrap();
    let t = interpret(&d).unwrap();
    let shape = t.shape().to_vec();
    for (flat, x) in t.data().iter().enumerate() {
        let mut idx = vec![0; shape.len()];
        let mut f = flat;
        for k in (0..shape.len()).rev() {
            idx[k] = f % shape[k];
            f /= shape[k];
        }
        let on_diag = idx.iter().all(|&i| i == idx[0]) && idx[0] < 3;
        let want = if on_diag { r.get(idx[0]) } else { c(0.0) };
        assert!((x - want).norm() < 1e-12);
    }
}

#[test]
fn snake_equations() {
    for a in 2..=4 {
        for calc in [Calculus::Zx, Calculus::Zw] {
            let (cap, cup) = match calc {
                Calculus::Zx => (NodeKind::Cap { dim: a }, NodeKind::Cup { dim: a }),
                Calculus::Zw => (NodeKind::ZwCap { label: a }, NodeKind::ZwCup { label: a }),
            };
            let mut b = DiagramBuilder::new(calc);
            let i = b.input(a);
            let legs = b.node(cap, &[]);
            b.node(cup, &[i, legs[0]]);
            b.output(legs[1]);
            let snake = b.finish().unwrap();
            let n = calc.carried_dim(a);
            assert_matrix(&interpret(&snake).unwrap(), 1, |i, j| c((i == j) as u8 as f64));
            assert_eq!(interpret(&snake).unwrap().shape(), &[n, n]);
        }
    }
}

#[test]
fn composition_examples() {
    let id3 = constructors::identity(Calculus::Zx, 3);
    let twice = compose_seq(&id3, &id3).unwrap();
    assert_eq!(interpret(&twice).unwrap(), interpret(&id3).unwrap());

    let par = compose_par(&constructors::identity(Calculus::Zx, 2), &id3).unwrap();
    assert_eq!(par.inputs(), &[2, 3]);
    assert_eq!(par.outputs(), &[2, 3]);

    let e = compose_par(&Diagram::empty(Calculus::Zx), &id3).unwrap();
    assert!(e.structurally_eq(&id3));

    let swap = Diagram::generator(NodeKind::Swap { a: 2, b: 3 }).unwrap();
    let swap_back = Diagram::generator(NodeKind::Swap { a: 3, b: 2 }).unwrap();
    assert!(compose_seq(&swap, &swap).is_err());
    let round = interpret(&compose_seq(&swap, &swap_back).unwrap()).unwrap();
    assert_matrix(&round, 2, |i, j| c((i == j) as u8 as f64));

    let s = constructors::scalar(Calculus::Zx, Complex64::new(0.0, 3.0));
    let scaled = interpret(&compose_par(&s, &id3).unwrap()).unwrap();
    assert_eq!(scaled, interpret(&id3).unwrap().scaled(Complex64::new(0.0, 3.0)));
}

#[test]
fn transpose_examples() {
    let ket = constructors::basis_ket(2, 3).unwrap();
    let bra = transpose(&ket);
    assert_eq!(bra.inputs(), &[3]);
    assert!(bra.outputs().is_empty());
    assert_eq!(interpret(&bra).unwrap().data(), interpret(&ket).unwrap().data());

    let x = constructors::x_spider(3, 2, 1).unwrap();
    let xt = interpret(&transpose(&x)).unwrap();
    assert_eq!(xt.shape(), &[3, 3, 3]);
    assert_matrix(&xt, 2, |kl, j| c(((kl / 3 + kl % 3) % 3 == j) as u8 as f64));

    let w = Diagram::generator(NodeKind::WNode { big: 3, small: vec![1, 2] }).unwrap();
    let wt = interpret(&transpose(&w)).unwrap();
    assert_eq!(wt, interpret(&w).unwrap().permuted(&[2, 0, 1]));
}
