//! ZX generators as ZW diagrams.

use num_complex::Complex64;

use crate::diagram::{constructors, transpose, Calculus, Diagram, DiagramBuilder, NodeKind, Source};
use crate::semantics::factorial;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn gen(kind: NodeKind) -> Diagram {
    Diagram::generator(kind).expect("image generator is valid")
}

pub(super) fn image(kind: &NodeKind) -> Diagram {
    use NodeKind::*;
    match kind {
        ZSpider { inputs, outputs, phase } => {
            let dims: Vec<usize> = inputs.iter().chain(outputs).copied().collect();
            if dims.is_empty() {
                return constructors::scalar(Calculus::Zw, phase.as_slice().iter().sum());
            }
            if dims.iter().any(|&d| d != dims[0]) {
                let unfolded = constructors::general_z_spider(inputs, outputs, phase.clone()).expect("valid spider");
                return super::to_zw(&unfolded).expect("valid diagram").target;
            }
            z_spider(dims[0] - 1, inputs.len(), outputs.len(), phase.as_slice())
        }
        XSpider { dim, n_in: 2, n_out: 1 } => x_merge(*dim),
        XSpider { dim, n_in, n_out } => {
            let unfolded = constructors::x_spider(*dim, *n_in, *n_out).expect("valid spider");
            super::to_zw(&unfolded).expect("valid diagram").target
        }
        Embedding { from, to } if from >= to => gen(WNode { big: from - 1, small: vec![to - 1] }),
        Embedding { from, to } => constructors::w_merge(to - 1, &[from - 1]).expect("valid W-node"),
        BasisKet { index: 0, dim } => constructors::zw_zero_ket(dim - 1),
        BasisKet { index, dim } => {
            let mut b = DiagramBuilder::new(Calculus::Zw);
            b.scalar(c(1.0 / factorial(*index).sqrt()));
            let k = b.node1(ZwKet { index: *index, label: dim - 1 }, &[]);
            b.output(k);
            b.finish().expect("ket")
        }
        Identity { dim } => gen(ZwIdentity { label: dim - 1 }),
        Swap { a, b } => gen(ZwSwap { a: a - 1, b: b - 1 }),
        Cap { dim } => gen(ZwCap { label: dim - 1 }),
        Cup { dim } => gen(ZwCup { label: dim - 1 }),
        GlobalScalar { value } => constructors::scalar(Calculus::Zw, *value),
        _ => panic!("{} is not a ZX generator", kind.name()),
    }
}

/// Qudit Z-spider on label `label`: a phase-1 ZW spider with one extra
/// input fed by the state that carries the phase and the factorial
/// correction.
fn z_spider(label: usize, n: usize, m: usize, phase: &[Complex64]) -> Diagram {
    let legs = (n + m) as i32;
    let psi: Vec<Complex64> = phase.iter().enumerate().map(|(k, r)| r * factorial(k).sqrt().powi(1 - legs)).collect();
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let mut ins = b.inputs(&vec![label; n]);
    ins.extend(b.place(&zw_state(&psi, label), &[]));
    let outs = b.node(NodeKind::ZwSpider { phase: c(1.0), label, n_in: n + 1, n_out: m }, &ins);
    b.outputs(&outs);
    b.finish().expect("z spider image")
}

/// Binary X-spider of dimension `d`: add the two inputs with a W-node in a
/// wide enough label, undo the multinomial factors and reduce mod `d`.
fn x_merge(d: usize) -> Diagram {
    let l = d - 1;
    let wide = 2 * d - 1;
    let up: Vec<Complex64> = (0..=l).map(|k| c(factorial(k).sqrt())).collect();
    let down: Vec<Complex64> = (0..=wide).map(|k| c(1.0 / factorial(k).sqrt())).collect();
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let ins = b.inputs(&[l, l]);
    let scaled: Vec<Source> = ins.iter().map(|&i| b.place(&diagonal_gadget(&up), &[i])[0]).collect();
    let sum = b.place(&constructors::w_merge(wide, &[l, l]).expect("W-node"), &scaled);
    let sum = b.place(&diagonal_gadget(&down), &sum);
    let out = b.place(&mod_gadget(d), &sum);
    b.outputs(&out);
    b.finish().expect("x merge image")
}

/// `sum_k d_k |k><k|` on label `d.len() - 1`.
pub fn diagonal_gadget(d: &[Complex64]) -> Diagram {
    let label = d.len() - 1;
    let psi: Vec<Complex64> = d.iter().enumerate().map(|(k, x)| x / factorial(k).sqrt()).collect();
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let i = b.input(label);
    let s = b.place(&zw_state(&psi, label), &[]);
    let o = b.node1(NodeKind::ZwSpider { phase: c(1.0), label, n_in: 2, n_out: 1 }, &[i, s[0]]);
    b.output(o);
    b.finish().expect("diagonal gadget")
}

/// `sum_{k < 2a} |k mod a><k|`, from label `2a - 1` to label `a - 1`.
///
/// A W-node splits `k` into a low part below `a` and a high part of `0`
/// or `a`; an effect keeps only those two high values and a diagonal
/// gadget cancels the multinomial factor.
pub fn mod_gadget(a: usize) -> Diagram {
    assert!(a >= 2, "mod gadget needs a >= 2");
    let wide = 2 * a - 1;
    let d: Vec<Complex64> = (0..=wide)
        .map(|k| if k < a { c(1.0) } else { c((factorial(k - a) * factorial(a) / factorial(k)).sqrt()) })
        .collect();
    let mut keep = vec![c(0.0); a + 1];
    keep[0] = c(1.0);
    keep[a] = c(1.0);
    let effect = transpose(&zw_state(&keep, a));
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let i = b.input(wide);
    let x = b.place(&diagonal_gadget(&d), &[i]);
    let parts = b.node(NodeKind::WNode { big: wide, small: vec![a - 1, a] }, &x);
    b.place(&effect, &[parts[1]]);
    b.output(parts[0]);
    b.finish().expect("mod gadget")
}

/// A ZW state on label `label` with amplitudes `psi`.
///
/// Writing `psi_k = sqrt(k!) c_k`, the state is the W-merge of single-wire
/// states whose generating polynomials multiply to `sum c_k x^k`: one `|1>`
/// for every factor `x` and one `(1, -1/z)` for every root `z` of the rest.
pub fn zw_state(psi: &[Complex64], label: usize) -> Diagram {
    assert_eq!(psi.len(), label + 1, "state length must be label + 1");
    let coeffs: Vec<Complex64> = psi.iter().enumerate().map(|(k, x)| x / factorial(k).sqrt()).collect();
    let scale = coeffs.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut b = DiagramBuilder::new(Calculus::Zw);
    if scale == 0.0 {
        b.scalar(c(0.0));
        let z = b.place(&constructors::zw_zero_ket(label), &[]);
        b.outputs(&z);
        return b.finish().expect("zero state");
    }
    let negligible = |x: &Complex64| x.norm() <= 1e-15 * scale;
    let low = coeffs.iter().position(|x| !negligible(x)).expect("nonzero");
    let high = coeffs.iter().rposition(|x| !negligible(x)).expect("nonzero");
    let q = &coeffs[low..=high];
    b.scalar(q[0]);
    let mut wires = vec![];
    for _ in 0..low {
        wires.push(b.node1(NodeKind::ZwKet { index: 1, label: 1 }, &[]));
    }
    for z in poly_roots(q) {
        wires.push(b.node1(NodeKind::ZwSpider { phase: -1.0 / z, label: 1, n_in: 0, n_out: 1 }, &[]));
    }
    let merge = constructors::w_merge(label, &vec![1; wires.len()]).expect("W-node");
    let o = b.place(&merge, &wires);
    b.outputs(&o);
    b.finish().expect("zw state")
}

fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Roots of `sum coeffs[k] x^k` (nonzero first and last coefficients) by
/// Durand-Kerner iteration followed by Newton polishing.
fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|x| x / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(2.0)).collect();
    for _ in 0..1000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let (p, _) = horner(&monic, z[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = p / denom;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(coeffs, *r);
            if dp.norm() == 0.0 {
                break;
            }
            *r -= p / dp;
        }
    }
    z
}
