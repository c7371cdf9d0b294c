//! ZW generators as ZX diagrams.

use num_complex::Complex64;

use crate::diagram::{Calculus, Diagram, DiagramBuilder, NodeKind};
use crate::phase::PhaseVector;
use crate::semantics::factorial;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn gen(kind: NodeKind) -> Diagram {
    Diagram::generator(kind).expect("image generator is valid")
}

fn diag(dim: usize, f: impl Fn(usize) -> Complex64) -> PhaseVector {
    PhaseVector::new((0..dim).map(f).collect()).expect("leading entry is one")
}

fn z(dim: usize, n: usize, m: usize, phase: PhaseVector) -> NodeKind {
    NodeKind::ZSpider { inputs: vec![dim; n], outputs: vec![dim; m], phase }
}

pub(super) fn image(kind: &NodeKind) -> Diagram {
    use NodeKind::*;
    match kind {
        ZwSpider { phase, label, n_in, n_out } => {
            let legs = (n_in + n_out) as i32;
            let v = diag(label + 1, |k| phase.powu(k as u32) * factorial(k).sqrt().powi(legs - 2));
            gen(z(label + 1, *n_in, *n_out, v))
        }
        WNode { big, small } if small.is_empty() => gen(XSpider { dim: big + 1, n_in: 1, n_out: 0 }),
        WNode { big, small } => w_node(*big, small),
        ZwKet { index, label } => {
            let mut b = DiagramBuilder::new(Calculus::Zx);
            let (value, index) =
                if *index > 0 && index <= label { (factorial(*index).sqrt(), *index) } else { (0.0, 0) };
            b.scalar(c(value));
            let k = b.node1(BasisKet { index, dim: label + 1 }, &[]);
            b.output(k);
            b.finish().expect("ket")
        }
        ZwScalar { value } => gen(GlobalScalar { value: *value }),
        ZwIdentity { label } => gen(Identity { dim: label + 1 }),
        ZwSwap { a, b } => gen(Swap { a: a + 1, b: b + 1 }),
        ZwCap { label } => gen(Cap { dim: label + 1 }),
        ZwCup { label } => gen(Cup { dim: label + 1 }),
        _ => panic!("{} is not a ZW generator", kind.name()),
    }
}

/// W-node: weight the total by `sqrt(K!)`, split it with an X-spider in
/// dimension `B + 1` (no wrap-around survives the truncation to each leg),
/// then divide by `sqrt(k_i!)` on every leg.
///
/// Three or more legs are first split off one at a time, so every X-spider
/// stays binary and the dense tensors stay small.
fn w_node(big: usize, small: &[usize]) -> Diagram {
    if small.len() >= 3 {
        let rest = big.min(small[1..].iter().sum());
        let mut b = DiagramBuilder::new(Calculus::Zx);
        let i = b.input(big + 1);
        let head = b.place(&w_node(big, &[small[0], rest]), &[i]);
        let tail = b.place(&w_node(rest, &small[1..]), &[head[1]]);
        b.output(head[0]);
        b.outputs(&tail);
        return b.finish().expect("W-node chain");
    }
    let total: usize = small.iter().sum();
    let wide = total + 1;
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let i = b.input(big + 1);
    let s = b.node1(z(big + 1, 1, 1, diag(big + 1, |k| c(factorial(k).sqrt()))), &[i]);
    let s = b.node1(NodeKind::Embedding { from: big + 1, to: wide }, &[s]);
    let parts = b.node(NodeKind::XSpider { dim: wide, n_in: 1, n_out: small.len() }, &[s]);
    for (p, &l) in parts.into_iter().zip(small) {
        let p = b.node1(NodeKind::Embedding { from: wide, to: l + 1 }, &[p]);
        let p = b.node1(z(l + 1, 1, 1, diag(l + 1, |k| c(1.0 / factorial(k).sqrt()))), &[p]);
        b.output(p);
    }
    b.finish().expect("W-node image")
}
