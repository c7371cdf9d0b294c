//! Seeded random diagrams.
//!
//! Grammar: pick a boundary of random width, then place generators one at
//! a time on a contiguous run of the current frontier (`id (x) g (x) id`),
//! so every step is a sequential block after a parallel block. The width
//! never exceeds the limit and every wire label is drawn from the allowed
//! set, which keeps contraction small.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::diagram::{Calculus, Diagram, DiagramBuilder, NodeKind, Source};
use crate::rules::{random_complex, random_phase};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomDiagramSpec {
    pub calculus: Calculus,
    pub max_generators: usize,
    /// ZX dimensions; ZW labels are these minus one.
    pub dims: Vec<usize>,
    pub max_width: usize,
    pub seed: u64,
    /// Whether the diagram may have an empty boundary.
    pub allow_closed: bool,
}

impl Default for RandomDiagramSpec {
    fn default() -> Self {
        RandomDiagramSpec {
            calculus: Calculus::Zx,
            max_generators: 8,
            dims: vec![2, 3, 4],
            max_width: 3,
            seed: 0,
            allow_closed: false,
        }
    }
}

impl RandomDiagramSpec {
    fn check(&self) -> Result<(), VerifyError> {
        let bad = |m: &str| Err(VerifyError::Infeasible(m.to_string()));
        if self.dims.is_empty() {
            return bad("no dimensions to draw from");
        }
        if self.dims.iter().any(|&d| d < 2) {
            return bad("dimensions must be at least 2");
        }
        if self.max_width == 0 && !self.allow_closed {
            return bad("boundary width 0 with closed diagrams disallowed");
        }
        Ok(())
    }
}

struct Gen<'a> {
    spec: &'a RandomDiagramSpec,
    rng: ChaCha8Rng,
    b: DiagramBuilder,
    frontier: Vec<(Source, usize)>,
}

impl Gen<'_> {
    fn label(&mut self) -> usize {
        let d = self.spec.dims[self.rng.gen_range(0..self.spec.dims.len())];
        match self.spec.calculus {
            Calculus::Zx => d,
            Calculus::Zw => d - 1,
        }
    }

    /// Replaces `take` frontier wires at `at` by the outputs of `kind`.
    fn place(&mut self, at: usize, take: usize, kind: NodeKind) {
        let ins: Vec<Source> = self.frontier[at..at + take].iter().map(|x| x.0).collect();
        let labels = kind.output_labels();
        let outs = self.b.node(kind, &ins);
        let new: Vec<(Source, usize)> = outs.into_iter().zip(labels).collect();
        self.frontier.splice(at..at + take, new);
    }

    /// One generator on the frontier; false if the draw did not fit.
    fn step(&mut self) -> bool {
        let width = self.frontier.len();
        let room = self.spec.max_width.saturating_sub(width);
        let take = self.rng.gen_range(0..=width.min(2));
        let at = self.rng.gen_range(0..=width - take);
        let ins: Vec<usize> = self.frontier[at..at + take].iter().map(|x| x.1).collect();
        let max_out = (room + take).min(2);
        let outs = self.rng.gen_range(0..=max_out);
        let same = ins.windows(2).all(|w| w[0] == w[1]);
        let choice = self.rng.gen_range(0..4);
        let kind = match self.spec.calculus {
            Calculus::Zx => self.zx_kind(&ins, outs, same, choice),
            Calculus::Zw => self.zw_kind(&ins, outs, same, choice),
        };
        match kind {
            Some(k) if self.fits(&k, width - take) => {
                self.place(at, take, k);
                true
            }
            _ => false,
        }
    }

    fn fits(&self, k: &NodeKind, kept: usize) -> bool {
        let width = kept + k.output_labels().len();
        k.check().is_ok() && width <= self.spec.max_width && (width > 0 || self.spec.allow_closed)
    }

    fn zx_kind(&mut self, ins: &[usize], outs: usize, same: bool, choice: u32) -> Option<NodeKind> {
        use NodeKind::*;
        let d = ins.first().copied().unwrap_or_else(|| self.label());
        Some(match (ins.len(), outs, choice) {
            (0, 0, _) => GlobalScalar { value: random_complex(&mut self.rng) },
            (0, 1, 0) => BasisKet { index: self.rng.gen_range(0..d), dim: d },
            (0, 2, 1) => Cap { dim: d },
            (1, 1, 1) => Embedding { from: d, to: self.label() },
            (1, 1, 2) => Identity { dim: d },
            (2, 2, 0) => Swap { a: ins[0], b: ins[1] },
            (2, 0, 1) if same => Cup { dim: d },
            (_, _, 3) if same => XSpider { dim: d, n_in: ins.len(), n_out: outs },
            _ => {
                let out_dims: Vec<usize> =
                    (0..outs).map(|_| if self.rng.gen_bool(0.7) { d } else { self.label() }).collect();
                let a = ins.iter().chain(&out_dims).copied().min().unwrap_or(d);
                ZSpider { inputs: ins.to_vec(), outputs: out_dims, phase: random_phase(&mut self.rng, a) }
            }
        })
    }

    fn zw_kind(&mut self, ins: &[usize], outs: usize, same: bool, choice: u32) -> Option<NodeKind> {
        use NodeKind::*;
        let l = ins.first().copied().unwrap_or_else(|| self.label());
        Some(match (ins.len(), outs, choice) {
            (0, 0, _) => ZwScalar { value: random_complex(&mut self.rng) },
            (0, 1, 0) => ZwKet { index: self.rng.gen_range(1..=l), label: l },
            (0, 2, 1) => ZwCap { label: l },
            (1, 1, 2) => ZwIdentity { label: l },
            (2, 2, 0) => ZwSwap { a: ins[0], b: ins[1] },
            (2, 0, 1) if same => ZwCup { label: l },
            (1, _, 3) => {
                let small = (0..outs).map(|_| self.rng.gen_range(1..=l)).collect();
                WNode { big: l, small }
            }
            _ if same => ZwSpider { phase: random_complex(&mut self.rng), label: l, n_in: ins.len(), n_out: outs },
            _ => return None,
        })
    }
}

/// A random diagram following the grammar above; the same spec always
/// gives the same diagram.
pub fn random_diagram(spec: &RandomDiagramSpec) -> Result<Diagram, VerifyError> {
    spec.check()?;
    let mut g = Gen {
        spec,
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        b: DiagramBuilder::new(spec.calculus),
        frontier: vec![],
    };
    let min_width = if spec.allow_closed { 0 } else { 1 };
    let width = g.rng.gen_range(min_width..=spec.max_width);
    for _ in 0..width {
        let l = g.label();
        let s = g.b.input(l);
        g.frontier.push((s, l));
    }
    let target = if spec.max_generators == 0 { 0 } else { g.rng.gen_range(1..=spec.max_generators) };
    let mut placed = 0;
    let mut attempts = 0;
    while placed < target && attempts < 50 * (target + 1) {
        attempts += 1;
        if g.step() {
            placed += 1;
        }
    }
    let outs: Vec<Source> = g.frontier.iter().map(|x| x.0).collect();
    g.b.outputs(&outs);
    Ok(g.b.finish().expect("grammar keeps diagrams valid"))
}
