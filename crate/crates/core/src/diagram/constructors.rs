//! Derived diagrams built from the generators.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use super::{ops, Calculus, Diagram, DiagramBuilder, DiagramError, NodeKind, Source};
use crate::phase::PhaseVector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("phase vector has length {found}, the minimal leg dimension is {expected}")]
    PhaseLength { expected: usize, found: usize },
    #[error("dimension {0} is below 2")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(calculus: Calculus, label: usize) -> Diagram {
    let kind = match calculus {
        Calculus::Zx => NodeKind::Identity { dim: label },
        Calculus::Zw => NodeKind::ZwIdentity { label },
    };
    Diagram::generator(kind).expect("identity generator")
}

/// A bundle of bare wires, no nodes.
pub fn wires(calculus: Calculus, labels: &[usize]) -> Diagram {
    let mut b = DiagramBuilder::new(calculus);
    let ins = b.inputs(labels);
    b.outputs(&ins);
    b.finish().expect("bare wires")
}

pub fn scalar(calculus: Calculus, value: Complex64) -> Diagram {
    let mut b = DiagramBuilder::new(calculus);
    b.scalar(value);
    b.finish().expect("scalar diagram")
}

/// Standard qudit Z-spider with all legs of dimension `a`.
pub fn z_spider(a: usize, n: usize, m: usize, phase: PhaseVector) -> Result<Diagram, ConstructError> {
    if phase.len() != a {
        return Err(ConstructError::PhaseLength { expected: a, found: phase.len() });
    }
    Ok(Diagram::generator(NodeKind::ZSpider { inputs: vec![a; n], outputs: vec![a; m], phase })?)
}

/// Mixed-dimensional Z-spider as a composite: a qudit Z-spider at the
/// minimal dimension with embeddings on every leg of a different dimension.
pub fn general_z_spider(in_dims: &[usize], out_dims: &[usize], phase: PhaseVector) -> Result<Diagram, ConstructError> {
    let a = in_dims.iter().chain(out_dims).copied().min().unwrap_or(phase.len());
    if let Some(&small) = in_dims.iter().chain(out_dims).find(|&&d| d < 2) {
        return Err(ConstructError::DimensionTooSmall(small));
    }
    if phase.len() != a {
        return Err(ConstructError::PhaseLength { expected: a, found: phase.len() });
    }
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(in_dims);
    let cut: Vec<Source> = ins
        .iter()
        .zip(in_dims)
        .map(|(&s, &d)| if d == a { s } else { b.node1(NodeKind::Embedding { from: d, to: a }, &[s]) })
        .collect();
    let legs =
        b.node(NodeKind::ZSpider { inputs: vec![a; in_dims.len()], outputs: vec![a; out_dims.len()], phase }, &cut);
    for (s, &d) in legs.into_iter().zip(out_dims) {
        let o = if d == a { s } else { b.node1(NodeKind::Embedding { from: a, to: d }, &[s]) };
        b.output(o);
    }
    Ok(b.finish()?)
}

pub fn embedding(from: usize, to: usize) -> Diagram {
    Diagram::generator(NodeKind::Embedding { from, to }).expect("embedding generator")
}

pub fn basis_ket(index: usize, dim: usize) -> Result<Diagram, DiagramError> {
    Diagram::generator(NodeKind::BasisKet { index, dim })
}

/// `<index|` as the transpose of the basis ket.
pub fn basis_bra(index: usize, dim: usize) -> Result<Diagram, DiagramError> {
    Ok(ops::transpose(&basis_ket(index, dim)?))
}

/// X-spider `n -> m` built inductively from the binary X-spider, its
/// transpose and the basis ket `|0>`.
pub fn x_spider(a: usize, n: usize, m: usize) -> Result<Diagram, ConstructError> {
    if a < 2 {
        return Err(ConstructError::DimensionTooSmall(a));
    }
    let merge = Diagram::generator(NodeKind::XSpider { dim: a, n_in: 2, n_out: 1 })?;
    let split = ops::transpose(&merge);
    let zero = basis_ket(0, a)?;
    let zero_bra = basis_bra(0, a)?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&vec![a; n]);
    if n == 0 && m == 0 {
        return Ok(b.finish()?);
    }
    let mut acc = match ins.first() {
        None => b.place(&zero, &[])[0],
        Some(&s) => s,
    };
    for &s in ins.iter().skip(1) {
        acc = b.place(&merge, &[acc, s])[0];
    }
    let mut outs = vec![];
    match m {
        0 => {
            b.place(&zero_bra, &[acc]);
        }
        _ => {
            for _ in 1..m {
                let pair = b.place(&split, &[acc]);
                outs.push(pair[0]);
                acc = pair[1];
            }
            outs.push(acc);
        }
    }
    b.outputs(&outs);
    Ok(b.finish()?)
}

/// `|k> -> |k + j mod a>`: binary X-spider with `|j>` on its right input.
pub fn shift(a: usize, j: usize) -> Result<Diagram, ConstructError> {
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let i = b.input(a);
    let ket = b.node1(NodeKind::BasisKet { index: j % a, dim: a }, &[]);
    let o = b.node1(NodeKind::XSpider { dim: a, n_in: 2, n_out: 1 }, &[i, ket]);
    b.output(o);
    Ok(b.finish()?)
}

/// `|k> -> |-k mod a>`, bending one leg of the 0->2 X-spider with a cup.
pub fn antipode(a: usize) -> Result<Diagram, ConstructError> {
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let i = b.input(a);
    let pair = b.node(NodeKind::XSpider { dim: a, n_in: 0, n_out: 2 }, &[]);
    b.node(NodeKind::Cup { dim: a }, &[i, pair[0]]);
    b.output(pair[1]);
    Ok(b.finish()?)
}

fn quadratic_phase(dim: usize, d: usize, sign: f64) -> PhaseVector {
    let entries = (0..dim).map(|k| Complex64::from_polar(1.0, sign * PI * (k * k) as f64 / d as f64)).collect();
    PhaseVector::new(entries).expect("exp(0) is exactly one")
}

/// Normalized qudit Fourier transform `(1/sqrt d) sum w^{jk} |j><k|`.
///
/// Uses `jk = ((j+k)^2 - j^2 - k^2) / 2`: the sum `j + k` is taken by an
/// X-spider in dimension `2d - 1`, wide enough that no reduction mod the
/// dimension occurs.
pub fn hadamard(d: usize) -> Result<Diagram, ConstructError> {
    fourier(d, 1.0)
}

/// Inverse of [`hadamard`].
pub fn hadamard_dagger(d: usize) -> Result<Diagram, ConstructError> {
    fourier(d, -1.0)
}

fn fourier(d: usize, sign: f64) -> Result<Diagram, ConstructError> {
    if d < 2 {
        return Err(ConstructError::DimensionTooSmall(d));
    }
    let wide = 2 * d - 1;
    let inv = quadratic_phase(d, d, -sign);
    let fwd = quadratic_phase(wide, d, sign);
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let k = b.input(d);
    let k = b.node1(NodeKind::ZSpider { inputs: vec![d], outputs: vec![d], phase: inv.clone() }, &[k]);
    let k = b.node1(NodeKind::Embedding { from: d, to: wide }, &[k]);
    let jj = b.node(NodeKind::ZSpider { inputs: vec![], outputs: vec![d, d], phase: inv }, &[]);
    let j = b.node1(NodeKind::Embedding { from: d, to: wide }, &[jj[1]]);
    let s = b.node1(NodeKind::XSpider { dim: wide, n_in: 2, n_out: 1 }, &[k, j]);
    b.node(NodeKind::ZSpider { inputs: vec![wide], outputs: vec![], phase: fwd }, &[s]);
    b.scalar(c(1.0 / (d as f64).sqrt()));
    b.output(jj[0]);
    Ok(b.finish()?)
}

/// Tensor power of a one-in one-out diagram.
pub fn tensor_power(d: &Diagram, k: usize) -> Result<Diagram, DiagramError> {
    let mut acc = Diagram::empty(d.calculus());
    for _ in 0..k {
        acc = ops::compose_par(&acc, d)?;
    }
    Ok(acc)
}

/// W-node with its big leg at the bottom (the transpose of [`NodeKind::WNode`]).
pub fn w_merge(big: usize, small: &[usize]) -> Result<Diagram, DiagramError> {
    Ok(ops::transpose(&Diagram::generator(NodeKind::WNode { big, small: small.to_vec() })?))
}

/// ZW state `|0>` on a wire of label `a`, as the zero-phase spider.
pub fn zw_zero_ket(label: usize) -> Diagram {
    Diagram::generator(NodeKind::ZwSpider { phase: c(0.0), label, n_in: 0, n_out: 1 }).expect("zw spider")
}

/// ZW effect `<0|`: the W-node without small legs.
pub fn zw_zero_bra(label: usize) -> Diagram {
    Diagram::generator(NodeKind::WNode { big: label, small: vec![] }).expect("w node")
}
