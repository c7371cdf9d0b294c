//! Standard interpretation of diagrams as dense complex tensors.
//!
//! Tensor layout: output indices first, then input indices, each in
//! boundary order, flattened row-major. A ZX wire of dimension `d`
//! contributes an index of size `d`; a ZW wire of label `a` one of size
//! `a + 1`.

mod contract;
mod generators;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Calculus, Diagram, DiagramBuilder, DiagramError, NodeKind};

pub use contract::DEFAULT_BUDGET;
pub use generators::{factorial, node_tensor};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemanticsError {
    #[error("contraction needs an intermediate tensor of {entries} entries, over the budget of {budget}; try smaller dimensions")]
    Resource { entries: u128, budget: usize },
    #[error("expected {expected} basis labels, got {found}")]
    BasisLength { expected: usize, found: usize },
    #[error("basis label {index} out of range for input {slot} of dimension {dim}")]
    BasisOutOfRange { slot: usize, index: usize, dim: usize },
    #[error("tensor shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("tensor data has {found} entries, shape {shape:?} needs {expected}")]
    DataLength { shape: Vec<usize>, expected: usize, found: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Dense complex multi-array.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<Complex64>,
}

impl<'de> Deserialize<'de> for Tensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            shape: Vec<usize>,
            data: Vec<Complex64>,
        }
        let raw = Raw::deserialize(d)?;
        Tensor::new(raw.shape, raw.data).map_err(serde::de::Error::custom)
    }
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<Complex64>) -> Result<Tensor, SemanticsError> {
        let expected = shape.iter().product();
        if data.len() != expected {
            return Err(SemanticsError::DataLength { shape, expected, found: data.len() });
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Tensor {
        let n = shape.iter().product();
        Tensor { shape, data: vec![Complex64::new(0.0, 0.0); n] }
    }

    pub fn scalar(value: Complex64) -> Tensor {
        Tensor { shape: vec![], data: vec![value] }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major offset of a multi-index.
    pub fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.shape.len());
        index.iter().zip(&self.shape).fold(0, |acc, (i, s)| acc * s + i)
    }

    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Complex64) {
        let o = self.offset(index);
        self.data[o] = value;
    }

    /// Reorders axes: axis `i` of the result is axis `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.shape.len(), "permutation length");
        let shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let mut src_strides = vec![1usize; self.shape.len()];
        for i in (0..self.shape.len().saturating_sub(1)).rev() {
            src_strides[i] = src_strides[i + 1] * self.shape[i + 1];
        }
        let strides: Vec<usize> = perm.iter().map(|&p| src_strides[p]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0usize; shape.len()];
        let mut src = 0usize;
        for _ in 0..self.data.len() {
            data.push(self.data[src]);
            for ax in (0..shape.len()).rev() {
                idx[ax] += 1;
                src += strides[ax];
                if idx[ax] < shape[ax] {
                    break;
                }
                src -= strides[ax] * shape[ax];
                idx[ax] = 0;
            }
        }
        Tensor { shape, data }
    }

    pub fn scaled(&self, c: Complex64) -> Tensor {
        Tensor { shape: self.shape.clone(), data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Tensor as a matrix with `rows` leading axes as the row index.
    pub fn as_matrix(&self, rows: usize) -> Vec<Vec<Complex64>> {
        let r: usize = self.shape[..rows].iter().product();
        let c: usize = self.shape[rows..].iter().product();
        (0..r).map(|i| self.data[i * c..(i + 1) * c].to_vec()).collect()
    }
}

/// How two tensors are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityMode {
    Exact,
    UpToScalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub equal: bool,
    pub max_abs_deviation: f64,
    pub mode: EqualityMode,
    /// Least-squares `c` with `x ~ c y`, in up-to-scalar mode.
    pub fitted_scalar: Option<Complex64>,
}

/// Absolute floor under the relative tolerance.
pub const ABS_FLOOR: f64 = 1e-12;

/// Compares `x` against `y`.
///
/// Exact mode passes when `max |x - y| <= tol * max(1, max|x|, max|y|)`.
/// Up-to-scalar mode first fits `c = <y, x> / <y, y>` and compares `x`
/// against `c y` the same way.
pub fn tensor_equal(
    x: &Tensor,
    y: &Tensor,
    tol: f64,
    mode: EqualityMode,
) -> Result<EquivalenceVerdict, SemanticsError> {
    if x.shape != y.shape {
        return Err(SemanticsError::ShapeMismatch { left: x.shape.clone(), right: y.shape.clone() });
    }
    let c = match mode {
        EqualityMode::Exact => Complex64::new(1.0, 0.0),
        EqualityMode::UpToScalar => {
            let yy: f64 = y.data.iter().map(|v| v.norm_sqr()).sum();
            if yy == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                y.data.iter().zip(&x.data).map(|(b, a)| b.conj() * a).sum::<Complex64>() / yy
            }
        }
    };
    let dev = x.data.iter().zip(&y.data).map(|(a, b)| (a - c * b).norm()).fold(0.0, f64::max);
    let scale = 1f64.max(x.max_abs()).max((y.scaled(c)).max_abs());
    let threshold = (tol * scale).max(ABS_FLOOR);
    Ok(EquivalenceVerdict {
        equal: dev <= threshold,
        max_abs_deviation: dev,
        mode,
        fitted_scalar: (mode == EqualityMode::UpToScalar).then_some(c),
    })
}

/// The standard interpretation of `d` with the default entry budget.
pub fn interpret(d: &Diagram) -> Result<Tensor, SemanticsError> {
    interpret_with_budget(d, DEFAULT_BUDGET)
}

/// Like [`interpret`], refusing any intermediate tensor over `budget` entries.
pub fn interpret_with_budget(d: &Diagram, budget: usize) -> Result<Tensor, SemanticsError> {
    d.validate()?;
    contract::contract_diagram(d, budget)
}

/// `[[d]]` applied to the computational basis state `|in_indices>`.
///
/// Plugs basis-state nodes into every input and evaluates the closed-top
/// diagram, so the result is indexed by the outputs only. ZW inputs take
/// `ZwKet(k) / sqrt(k!)`, or the zero-phase spider for `k = 0`.
pub fn apply_basis(d: &Diagram, in_indices: &[usize]) -> Result<Tensor, SemanticsError> {
    d.validate()?;
    if in_indices.len() != d.inputs().len() {
        return Err(SemanticsError::BasisLength { expected: d.inputs().len(), found: in_indices.len() });
    }
    let calc = d.calculus();
    let mut b = DiagramBuilder::new(calc);
    let mut feeds = vec![];
    for (slot, (&k, &label)) in in_indices.iter().zip(d.inputs()).enumerate() {
        let dim = calc.carried_dim(label);
        if k >= dim {
            return Err(SemanticsError::BasisOutOfRange { slot, index: k, dim });
        }
        let s = match calc {
            Calculus::Zx => b.node1(NodeKind::BasisKet { index: k, dim }, &[]),
            Calculus::Zw if k == 0 => {
                b.node1(NodeKind::ZwSpider { phase: Complex64::new(0.0, 0.0), label, n_in: 0, n_out: 1 }, &[])
            }
            Calculus::Zw => {
                b.scalar(Complex64::new(1.0 / factorial(k).sqrt(), 0.0));
                b.node1(NodeKind::ZwKet { index: k, label }, &[])
            }
        };
        feeds.push(s);
    }
    let outs = b.place(d, &feeds);
    b.outputs(&outs);
    interpret(&b.finish()?)
}

/// Dumps a tensor as `{"shape": [...], "data": [[re, im], ...]}`.
pub fn tensor_to_json(t: &Tensor) -> String {
    serde_json::to_string(t).expect("tensor json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::constructors;
    use crate::phase::PhaseVector;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn diag(v: &[f64]) -> Tensor {
        let n = v.len();
        let mut t = Tensor::zeros(vec![n, n]);
        for (i, x) in v.iter().enumerate() {
            t.set(&[i, i], c(*x));
        }
        t
    }

    #[test]
    fn equal_to_itself() {
        let t = diag(&[1.0, 2.0]);
        let v = tensor_equal(&t, &t, 1e-9, EqualityMode::Exact).unwrap();
        assert!(v.equal);
        assert_eq!(v.max_abs_deviation, 0.0);
    }

    #[test]
    fn proportional_up_to_scalar() {
        let v = tensor_equal(&diag(&[1.0, 2.0]), &diag(&[2.0, 4.0]), 1e-9, EqualityMode::UpToScalar).unwrap();
        assert!(v.equal);
        let s = v.fitted_scalar.unwrap();
        assert!((s - c(0.5)).norm() < 1e-15);
        let v = tensor_equal(&diag(&[1.0, 2.0]), &diag(&[2.0, 4.0]), 1e-9, EqualityMode::Exact).unwrap();
        assert!(!v.equal);
    }

    #[test]
    fn small_difference_is_reported() {
        let v = tensor_equal(&diag(&[1.0, 2.0]), &diag(&[1.0, 2.1]), 1e-9, EqualityMode::Exact).unwrap();
        assert!(!v.equal);
        assert!((v.max_abs_deviation - 0.1).abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch() {
        assert!(tensor_equal(&diag(&[1.0]), &diag(&[1.0, 1.0]), 1e-9, EqualityMode::Exact).is_err());
    }

    #[test]
    fn permutation_moves_axes() {
        let t = Tensor::new(vec![2, 3], (0..6).map(|i| c(i as f64)).collect()).unwrap();
        let p = t.permuted(&[1, 0]);
        assert_eq!(p.shape(), &[3, 2]);
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(p.get(&[j, i]), t.get(&[i, j]));
            }
        }
    }

    #[test]
    fn x_spider_on_basis_states() {
        let x = constructors::x_spider(3, 2, 1).unwrap();
        let out = apply_basis(&x, &[1, 2]).unwrap();
        assert_eq!(out.shape(), &[3]);
        assert_eq!(out.data(), &[c(1.0), c(0.0), c(0.0)]);
        let id = constructors::identity(Calculus::Zx, 4);
        assert_eq!(apply_basis(&id, &[3]).unwrap().data()[3], c(1.0));
        assert!(matches!(apply_basis(&id, &[4]), Err(SemanticsError::BasisOutOfRange { .. })));
    }

    #[test]
    fn w_node_on_basis_state() {
        let w = Diagram::generator(NodeKind::WNode { big: 2, small: vec![1, 1] }).unwrap();
        let out = apply_basis(&w, &[2]).unwrap();
        assert_eq!(out.shape(), &[2, 2]);
        assert!((out.get(&[1, 1]) - c(2f64.sqrt())).norm() < 1e-15);
        assert_eq!(out.get(&[0, 0]), c(0.0));
    }

    #[test]
    fn cap_then_cup_is_the_dimension() {
        let cap = Diagram::generator(NodeKind::Cap { dim: 2 }).unwrap();
        let cup = Diagram::generator(NodeKind::Cup { dim: 2 }).unwrap();
        let d = crate::diagram::compose_seq(&cap, &cup).unwrap();
        assert_eq!(interpret(&d).unwrap().data(), &[c(2.0)]);
    }

    #[test]
    fn budget_is_enforced() {
        let z = Diagram::generator(NodeKind::ZSpider {
            inputs: vec![],
            outputs: vec![4; 13],
            phase: PhaseVector::phase_free(4),
        })
        .unwrap();
        assert!(matches!(interpret(&z), Err(SemanticsError::Resource { .. })));
    }

    #[test]
    fn tensor_json_round_trip() {
        let t = diag(&[1.0, -0.5]);
        let back: Tensor = serde_json::from_str(&tensor_to_json(&t)).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Tensor>(r#"{"shape":[2],"data":[[1,0]]}"#).is_err());
    }
}
