use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::phase::PhaseVector;

/// Which calculus a diagram (or node) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Zx,
    Zw,
}

impl Calculus {
    pub fn other(self) -> Calculus {
        match self {
            Calculus::Zx => Calculus::Zw,
            Calculus::Zw => Calculus::Zx,
        }
    }

    /// Hilbert-space dimension carried by a wire with this label.
    ///
    /// ZX wires are labelled by their dimension; a ZW label `a` carries
    /// dimension `a + 1`.
    pub fn carried_dim(self, label: usize) -> usize {
        match self {
            Calculus::Zx => label,
            Calculus::Zw => label + 1,
        }
    }

    /// Smallest admissible wire label.
    pub fn min_label(self) -> usize {
        match self {
            Calculus::Zx => 2,
            Calculus::Zw => 1,
        }
    }
}

impl std::fmt::Display for Calculus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Calculus::Zx => f.write_str("zx"),
            Calculus::Zw => f.write_str("zw"),
        }
    }
}

/// A generator node. Port labels are ZX dimensions for ZX kinds and ZW
/// labels for ZW kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum NodeKind {
    /// Mixed-dimensional Z-spider; the phase vector has the length of the
    /// smallest leg dimension.
    ZSpider {
        inputs: Vec<usize>,
        outputs: Vec<usize>,
        phase: PhaseVector,
    },
    /// Qudit X-spider: `delta(sum(in) = sum(out) mod dim)`.
    XSpider {
        dim: usize,
        n_in: usize,
        n_out: usize,
    },
    /// `|k><k|` for `k < min(from, to)`.
    Embedding {
        from: usize,
        to: usize,
    },
    BasisKet {
        index: usize,
        dim: usize,
    },
    Identity {
        dim: usize,
    },
    Swap {
        a: usize,
        b: usize,
    },
    Cap {
        dim: usize,
    },
    Cup {
        dim: usize,
    },
    GlobalScalar {
        value: Complex64,
    },

    ZwSpider {
        phase: Complex64,
        label: usize,
        n_in: usize,
        n_out: usize,
    },
    /// W-node with the big leg on top and small legs below.
    WNode {
        big: usize,
        small: Vec<usize>,
    },
    ZwKet {
        index: usize,
        label: usize,
    },
    ZwScalar {
        value: Complex64,
    },
    ZwIdentity {
        label: usize,
    },
    ZwSwap {
        a: usize,
        b: usize,
    },
    ZwCap {
        label: usize,
    },
    ZwCup {
        label: usize,
    },
}

impl NodeKind {
    pub fn calculus(&self) -> Calculus {
        use NodeKind::*;
        match self {
            ZSpider { .. }
            | XSpider { .. }
            | Embedding { .. }
            | BasisKet { .. }
            | Identity { .. }
            | Swap { .. }
            | Cap { .. }
            | Cup { .. }
            | GlobalScalar { .. } => Calculus::Zx,
            _ => Calculus::Zw,
        }
    }

    pub fn input_labels(&self) -> Vec<usize> {
        use NodeKind::*;
        match self {
            ZSpider { inputs, .. } => inputs.clone(),
            XSpider { dim, n_in, .. } => vec![*dim; *n_in],
            Embedding { from, .. } => vec![*from],
            BasisKet { .. } | Cap { .. } | GlobalScalar { .. } => vec![],
            Identity { dim } => vec![*dim],
            Swap { a, b } => vec![*a, *b],
            Cup { dim } => vec![*dim, *dim],
            ZwSpider { label, n_in, .. } => vec![*label; *n_in],
            WNode { big, .. } => vec![*big],
            ZwKet { .. } | ZwScalar { .. } | ZwCap { .. } => vec![],
            ZwIdentity { label } => vec![*label],
            ZwSwap { a, b } => vec![*a, *b],
            ZwCup { label } => vec![*label, *label],
        }
    }

    pub fn output_labels(&self) -> Vec<usize> {
        use NodeKind::*;
        match self {
            ZSpider { outputs, .. } => outputs.clone(),
            XSpider { dim, n_out, .. } => vec![*dim; *n_out],
            Embedding { to, .. } => vec![*to],
            BasisKet { dim, .. } => vec![*dim],
            Identity { dim } => vec![*dim],
            Swap { a, b } => vec![*b, *a],
            Cap { dim } => vec![*dim, *dim],
            Cup { .. } | GlobalScalar { .. } => vec![],
            ZwSpider { label, n_out, .. } => vec![*label; *n_out],
            WNode { small, .. } => small.clone(),
            ZwKet { label, .. } => vec![*label],
            ZwIdentity { label } => vec![*label],
            ZwSwap { a, b } => vec![*b, *a],
            ZwCap { label } => vec![*label, *label],
            ZwCup { .. } | ZwScalar { .. } => vec![],
        }
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.input_labels().len(), self.output_labels().len())
    }

    /// Checks parameter constraints local to the node.
    pub fn check(&self) -> Result<(), String> {
        use NodeKind::*;
        let calc = self.calculus();
        let min = calc.min_label();
        let labels = self.input_labels().into_iter().chain(self.output_labels());
        for l in labels {
            if l < min {
                return Err(format!("wire label {l} below the minimum {min} for {calc}"));
            }
        }
        match self {
            ZSpider { inputs, outputs, phase } => {
                let a = inputs.iter().chain(outputs).copied().min();
                match a {
                    Some(a) if phase.len() != a => {
                        Err(format!("phase vector has length {}, minimal leg dimension is {a}", phase.len()))
                    }
                    _ => Ok(()),
                }
            }
            XSpider { dim, .. } if *dim < 2 => Err(format!("X-spider dimension {dim} < 2")),
            BasisKet { index, dim } if index >= dim => {
                Err(format!("basis index {index} out of range for dimension {dim}"))
            }
            WNode { big, small } => match small.iter().max() {
                Some(m) if m > big => Err(format!("W-node big leg {big} smaller than small leg {m}")),
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }

    /// Short human-readable name.
    pub fn name(&self) -> &'static str {
        use NodeKind::*;
        match self {
            ZSpider { .. } => "z_spider",
            XSpider { .. } => "x_spider",
            Embedding { .. } => "embedding",
            BasisKet { .. } => "basis_ket",
            Identity { .. } => "identity",
            Swap { .. } => "swap",
            Cap { .. } => "cap",
            Cup { .. } => "cup",
            GlobalScalar { .. } => "global_scalar",
            ZwSpider { .. } => "zw_spider",
            WNode { .. } => "w_node",
            ZwKet { .. } => "zw_ket",
            ZwScalar { .. } => "zw_scalar",
            ZwIdentity { .. } => "zw_identity",
            ZwSwap { .. } => "zw_swap",
            ZwCap { .. } => "zw_cap",
            ZwCup { .. } => "zw_cup",
        }
    }

    /// Approximate equality: identical structure, complex parameters equal
    /// within `tol` (relative, floored at one).
    pub fn approx_eq(&self, other: &NodeKind, tol: f64) -> bool {
        use NodeKind::*;
        let close = |x: Complex64, y: Complex64| (x - y).norm() <= tol * 1f64.max(x.norm()).max(y.norm());
        match (self, other) {
            (ZSpider { inputs: i1, outputs: o1, phase: p1 }, ZSpider { inputs: i2, outputs: o2, phase: p2 }) => {
                i1 == i2
                    && o1 == o2
                    && p1.len() == p2.len()
                    && p1.as_slice().iter().zip(p2.as_slice()).all(|(x, y)| close(*x, *y))
            }
            (GlobalScalar { value: x }, GlobalScalar { value: y }) => close(*x, *y),
            (ZwScalar { value: x }, ZwScalar { value: y }) => close(*x, *y),
            (
                ZwSpider { phase: p1, label: l1, n_in: i1, n_out: o1 },
                ZwSpider { phase: p2, label: l2, n_in: i2, n_out: o2 },
            ) => l1 == l2 && i1 == i2 && o1 == o2 && close(*p1, *p2),
            _ => self == other,
        }
    }
}
