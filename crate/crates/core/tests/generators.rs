mod common;

use common::{c, generators, max_diff, oracle};
use zxw::semantics::{apply_basis, interpret};
use zxw::{Diagram, NodeKind};

#[test]
fn every_generator_matches_its_formula() {
    let mut checked = 0;
    for d in 2..=4 {
        for kind in generators(d) {
            if kind.check().is_err() {
                continue;
            }
            let t = interpret(&Diagram::generator(kind.clone()).unwrap()).unwrap();
            let (shape, data) = oracle(&kind);
            assert_eq!(t.shape(), shape.as_slice(), "{kind:?}");
            let dev = max_diff(t.data(), &data);
            assert!(dev <= 1e-12, "{kind:?}: deviation {dev}");
            checked += 1;
        }
    }
    assert!(checked >= 3 * 40, "only {checked} generators checked");
}

#[test]
fn x_spider_adds_modulo_the_dimension() {
    let x = Diagram::generator(NodeKind::XSpider { dim: 2, n_in: 2, n_out: 1 }).unwrap();
    let t = interpret(&x).unwrap();
    let rows = t.as_matrix(1);
    let expect = [[1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 1.0, 0.0]];
    for (r, e) in rows.iter().zip(expect) {
        assert_eq!(r.iter().map(|z| z.re).collect::<Vec<_>>(), e);
    }
    let x3 = Diagram::generator(NodeKind::XSpider { dim: 3, n_in: 2, n_out: 1 }).unwrap();
    assert_eq!(apply_basis(&x3, &[1, 2]).unwrap().data(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
}

#[test]
fn w_node_has_multinomial_entries() {
    let w = Diagram::generator(NodeKind::WNode { big: 3, small: vec![1, 2, 1] }).unwrap();
    let t = interpret(&w).unwrap();
    // 3!/(1! 1! 1!) = 6
    assert!((t.get(&[1, 1, 1, 3]) - c(6f64.sqrt(), 0.0)).norm() < 1e-12);
    // 2!/(0! 2! 0!) = 1
    assert!((t.get(&[0, 2, 0, 2]) - c(1.0, 0.0)).norm() < 1e-12);
    assert_eq!(t.get(&[1, 1, 0, 3]), c(0.0, 0.0));
}

#[test]
fn zw_spider_entries() {
    let s = Diagram::generator(NodeKind::ZwSpider { phase: c(2.0, 0.0), label: 3, n_in: 2, n_out: 2 }).unwrap();
    let t = interpret(&s).unwrap();
    // r^k sqrt(k!)^(n+m-2) at k = 3: 8 * 6
    assert!((t.get(&[3, 3, 3, 3]) - c(48.0, 0.0)).norm() < 1e-12);
    assert_eq!(t.get(&[3, 3, 3, 2]), c(0.0, 0.0));
}

#[test]
fn mixed_z_spider_pads_with_zeros() {
    let z = Diagram::generator(NodeKind::ZSpider {
        inputs: vec![3],
        outputs: vec![2],
        phase: zxw::PhaseVector::phase_free(2),
    })
    .unwrap();
    let rows = interpret(&z).unwrap().as_matrix(1);
    let re: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|z| z.re).collect()).collect();
    assert_eq!(re, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
}
