use num_complex::Complex64;

use super::Tensor;
use crate::diagram::NodeKind;

/// `k!` as a float.
pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Calls `f` on every multi-index of `shape` in row-major order.
pub(crate) fn for_each_index(shape: &[usize], mut f: impl FnMut(&[usize])) {
    if shape.contains(&0) {
        return;
    }
    let mut idx = vec![0usize; shape.len()];
    loop {
        f(&idx);
        let mut ax = shape.len();
        loop {
            if ax == 0 {
                return;
            }
            ax -= 1;
            idx[ax] += 1;
            if idx[ax] < shape[ax] {
                break;
            }
            idx[ax] = 0;
        }
    }
}

/// Tensor with `value(k)` at every all-equal index `(k, ..., k)`, `k < a`.
fn diagonal(shape: Vec<usize>, a: usize, value: impl Fn(usize) -> Complex64) -> Tensor {
    let mut t = Tensor::zeros(shape);
    if t.shape().is_empty() {
        let s = (0..a).map(&value).sum();
        return Tensor::scalar(s);
    }
    for k in 0..a {
        let idx = vec![k; t.shape().len()];
        t.set(&idx, value(k));
    }
    t
}

/// Interpretation of a single generator, outputs first then inputs.
pub fn node_tensor(kind: &NodeKind) -> Tensor {
    use NodeKind::*;
    let calc = kind.calculus();
    let shape: Vec<usize> =
        kind.output_labels().into_iter().chain(kind.input_labels()).map(|l| calc.carried_dim(l)).collect();
    match kind {
        ZSpider { phase, .. } => {
            let a = shape.iter().copied().min().unwrap_or(phase.len());
            diagonal(shape, a, |k| phase.get(k))
        }
        XSpider { dim, n_out, .. } => {
            let mut t = Tensor::zeros(shape.clone());
            let m = *n_out;
            let mut hits = vec![];
            for_each_index(&shape, |idx| {
                let out: usize = idx[..m].iter().sum();
                let inp: usize = idx[m..].iter().sum();
                if out % dim == inp % dim {
                    hits.push(idx.to_vec());
                }
            });
            for h in hits {
                t.set(&h, one());
            }
            t
        }
        Embedding { from, to } => diagonal(shape, *from.min(to), |_| one()),
        BasisKet { index, .. } => {
            let mut t = Tensor::zeros(shape);
            t.set(&[*index], one());
            t
        }
        Identity { dim } | Cap { dim } | Cup { dim } => diagonal(shape, *dim, |_| one()),
        ZwIdentity { .. } | ZwCap { .. } | ZwCup { .. } => {
            let a = shape[0];
            diagonal(shape, a, |_| one())
        }
        Swap { .. } | ZwSwap { .. } => {
            // outputs (b, a), inputs (a, b)
            let mut t = Tensor::zeros(shape.clone());
            for i in 0..shape[1] {
                for j in 0..shape[0] {
                    t.set(&[j, i, i, j], one());
                }
            }
            t
        }
        GlobalScalar { value } | ZwScalar { value } => Tensor::scalar(*value),
        ZwSpider { phase, label, n_in, n_out } => {
            let legs = (n_in + n_out) as i32;
            diagonal(shape, label + 1, |k| phase.powu(k as u32) * factorial(k).sqrt().powi(legs - 2))
        }
        WNode { big, small } => {
            let mut t = Tensor::zeros(shape);
            let small_shape: Vec<usize> = small.iter().map(|b| b + 1).collect();
            let mut hits = vec![];
            for_each_index(&small_shape, |ks| {
                let total: usize = ks.iter().sum();
                if total <= *big {
                    let multinomial = factorial(total) / ks.iter().map(|&k| factorial(k)).product::<f64>();
                    let mut idx = ks.to_vec();
                    idx.push(total);
                    hits.push((idx, multinomial.sqrt()));
                }
            });
            if small.is_empty() {
                hits.push((vec![0], 1.0));
            }
            for (idx, v) in hits {
                t.set(&idx, Complex64::new(v, 0.0));
            }
            t
        }
        ZwKet { index, label } => {
            let mut t = Tensor::zeros(shape);
            if *index > 0 && index <= label {
                t.set(&[*index], Complex64::new(factorial(*index).sqrt(), 0.0));
            }
            t
        }
    }
}
