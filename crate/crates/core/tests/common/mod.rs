//! Reference tensors computed entry by entry from the closed-form
//! generator formulas, independent of the library's contraction code.

#![allow(dead_code)]

use num_complex::Complex64;
use zxw::{NodeKind, PhaseVector};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fact(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Shape (outputs first) and row-major entries of a generator.
pub fn oracle(kind: &NodeKind) -> (Vec<usize>, Vec<Complex64>) {
    use NodeKind::*;
    let (outs, ins): (Vec<usize>, Vec<usize>) = match kind {
        ZSpider { inputs, outputs, .. } => (outputs.clone(), inputs.clone()),
        XSpider { dim, n_in, n_out } => (vec![*dim; *n_out], vec![*dim; *n_in]),
        Embedding { from, to } => (vec![*to], vec![*from]),
        BasisKet { dim, .. } => (vec![*dim], vec![]),
        Identity { dim } => (vec![*dim], vec![*dim]),
        Swap { a, b } => (vec![*b, *a], vec![*a, *b]),
        Cap { dim } => (vec![*dim, *dim], vec![]),
        Cup { dim } => (vec![], vec![*dim, *dim]),
        GlobalScalar { .. } | ZwScalar { .. } => (vec![], vec![]),
        ZwSpider { label, n_in, n_out, .. } => (vec![label + 1; *n_out], vec![label + 1; *n_in]),
        WNode { big, small } => (small.iter().map(|l| l + 1).collect(), vec![big + 1]),
        ZwKet { label, .. } => (vec![label + 1], vec![]),
        ZwIdentity { label } => (vec![label + 1], vec![label + 1]),
        ZwSwap { a, b } => (vec![b + 1, a + 1], vec![a + 1, b + 1]),
        ZwCap { label } => (vec![label + 1; 2], vec![]),
        ZwCup { label } => (vec![], vec![label + 1; 2]),
    };
    let m = outs.len();
    let shape: Vec<usize> = outs.iter().chain(&ins).copied().collect();
    let total: usize = shape.iter().product();
    let mut data = Vec::with_capacity(total);
    for flat in 0..total {
        // decode the row-major index by hand
        let mut idx = vec![0; shape.len()];
        let mut rest = flat;
        for k in (0..shape.len()).rev() {
            idx[k] = rest % shape[k];
            rest /= shape[k];
        }
        let (o, i) = idx.split_at(m);
        data.push(entry(kind, o, i));
    }
    (shape, data)
}

fn all_equal(idx: &[usize]) -> Option<usize> {
    match idx.first() {
        None => None,
        Some(&k) => idx.iter().all(|&x| x == k).then_some(k),
    }
}

fn entry(kind: &NodeKind, o: &[usize], i: &[usize]) -> Complex64 {
    use NodeKind::*;
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let b = |cond: bool| if cond { one } else { zero };
    let legs: Vec<usize> = o.iter().chain(i).copied().collect();
    match kind {
        ZSpider { phase, .. } => match all_equal(&legs) {
            None if legs.is_empty() => phase.as_slice().iter().sum(),
            Some(k) if k < phase.len() => phase.get(k),
            _ => zero,
        },
        XSpider { dim, .. } => b(o.iter().sum::<usize>() % dim == i.iter().sum::<usize>() % dim),
        Embedding { .. } | Identity { .. } | ZwIdentity { .. } => b(o[0] == i[0]),
        Cap { .. } | ZwCap { .. } => b(o[0] == o[1]),
        Cup { .. } | ZwCup { .. } => b(i[0] == i[1]),
        Swap { .. } | ZwSwap { .. } => b(o[0] == i[1] && o[1] == i[0]),
        BasisKet { index, .. } => b(o[0] == *index),
        GlobalScalar { value } | ZwScalar { value } => *value,
        ZwSpider { phase, n_in, n_out, .. } => match all_equal(&legs) {
            Some(k) => {
                let e = *n_in as i32 + *n_out as i32 - 2;
                phase.powu(k as u32) * fact(k).sqrt().powi(e)
            }
            None if legs.is_empty() => one,
            None => zero,
        },
        WNode { .. } => {
            let big = i[0];
            if o.iter().sum::<usize>() != big {
                return zero;
            }
            let denom: f64 = o.iter().map(|&k| fact(k)).product();
            c((fact(big) / denom).sqrt(), 0.0)
        }
        ZwKet { index, .. } => {
            if *index > 0 && o[0] == *index {
                c(fact(*index).sqrt(), 0.0)
            } else {
                zero
            }
        }
    }
}

/// A phase vector of length `a` with distinct, non-trivial entries.
pub fn phase(a: usize) -> PhaseVector {
    let tail: Vec<Complex64> = (1..a).map(|k| c(0.5 + k as f64, 0.25 * k as f64 - 0.3)).collect();
    PhaseVector::from_tail(&tail)
}

/// Representatives of every generator family at ZX dimension `d` (ZW
/// label `d - 1`).
pub fn generators(d: usize) -> Vec<NodeKind> {
    use NodeKind::*;
    let l = d - 1;
    let mut v = vec![
        ZSpider { inputs: vec![d], outputs: vec![d], phase: phase(d) },
        ZSpider { inputs: vec![d, d], outputs: vec![d], phase: phase(d) },
        ZSpider { inputs: vec![], outputs: vec![d, d], phase: phase(d) },
        ZSpider { inputs: vec![], outputs: vec![], phase: phase(d) },
        ZSpider { inputs: vec![d + 1], outputs: vec![d, d + 2], phase: phase(d) },
        ZSpider { inputs: vec![d], outputs: vec![d + 1], phase: phase(d) },
        XSpider { dim: d, n_in: 2, n_out: 1 },
        XSpider { dim: d, n_in: 1, n_out: 2 },
        XSpider { dim: d, n_in: 2, n_out: 2 },
        XSpider { dim: d, n_in: 0, n_out: 1 },
        XSpider { dim: d, n_in: 1, n_out: 0 },
        Embedding { from: d, to: d + 1 },
        Embedding { from: d + 1, to: d },
        Embedding { from: d, to: d },
        Identity { dim: d },
        Swap { a: d, b: d + 1 },
        Cap { dim: d },
        Cup { dim: d },
        GlobalScalar { value: c(0.3, -1.2) },
        ZwSpider { phase: c(0.7, 0.4), label: l, n_in: 1, n_out: 1 },
        ZwSpider { phase: c(-1.1, 0.2), label: l, n_in: 2, n_out: 1 },
        ZwSpider { phase: c(0.9, 0.0), label: l, n_in: 0, n_out: 3 },
        ZwSpider { phase: c(1.3, -0.5), label: l, n_in: 1, n_out: 0 },
        WNode { big: l, small: vec![l, l] },
        WNode { big: l + 1, small: vec![l, 1] },
        WNode { big: l, small: vec![1, 1, l] },
        WNode { big: l, small: vec![] },
        WNode { big: l, small: vec![l] },
        ZwIdentity { label: l },
        ZwSwap { a: l, b: l + 1 },
        ZwCap { label: l },
        ZwCup { label: l },
        ZwScalar { value: c(-0.4, 2.0) },
    ];
    for index in 0..d {
        v.push(BasisKet { index, dim: d });
    }
    for index in 0..=l + 1 {
        v.push(ZwKet { index, label: l });
    }
    v
}

/// Largest absolute entry difference.
pub fn max_diff(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}
