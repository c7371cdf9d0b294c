//! Open-graph diagrams shared by both calculi.
//!
//! A diagram is a set of generator nodes, a set of directed wires and an
//! ordered boundary. Wires run top-to-bottom: from a node output port (or an
//! input slot) to a node input port (or an output slot). Ports are indexed
//! per side, left to right.

mod builder;
pub mod constructors;
mod json;
mod node;
mod ops;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use builder::DiagramBuilder;
pub use json::{deserialize, serialize, JsonError};
pub use node::{Calculus, NodeKind};
pub use ops::{compose_par, compose_seq, transpose};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// Where a wire starts: an input slot or a node output port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Input(usize),
    Port(NodeId, usize),
}

/// Where a wire ends: an output slot or a node input port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Output(usize),
    Port(NodeId, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wire {
    pub from: Source,
    pub to: Target,
    /// ZX dimension or ZW label.
    pub dim: usize,
}

/// Input and output label lists of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundarySignature {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl std::fmt::Display for BoundarySignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} -> {:?}", self.inputs, self.outputs)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagramError {
    #[error("node {node}: {kind} belongs to the {found} calculus, diagram is {expected}")]
    MixedCalculus { node: NodeId, kind: &'static str, expected: Calculus, found: Calculus },
    #[error("node {node}: {reason}")]
    InvalidNode { node: NodeId, reason: String },
    #[error("wire references unknown node {0}")]
    UnknownNode(NodeId),
    #[error("node {node}: {side} port {port} does not exist")]
    NoSuchPort { node: NodeId, side: &'static str, port: usize },
    #[error("boundary {side} slot {slot} does not exist")]
    NoSuchSlot { side: &'static str, slot: usize },
    #[error("node {node}: {side} port {port} is not attached to any wire")]
    DanglingPort { node: NodeId, side: &'static str, port: usize },
    #[error("boundary {side} slot {slot} is not attached to any wire")]
    DanglingSlot { side: &'static str, slot: usize },
    #[error("{endpoint} is attached to more than one wire")]
    PortReused { endpoint: String },
    #[error("wire {from} -> {to}: dimension {found} does not match {expected} at {at}")]
    DimensionMismatch { from: String, to: String, at: String, expected: usize, found: usize },
    #[error("{at}: label {dim} below the minimum {min} for the {calculus} calculus")]
    DimensionTooSmall { at: String, dim: usize, min: usize, calculus: Calculus },
    #[error("cannot combine a {0} diagram with a {1} diagram")]
    CalculusMismatch(Calculus, Calculus),
    #[error("composition: slot {slot} has label {top} above but {bottom} below")]
    SlotMismatch { slot: usize, top: usize, bottom: usize },
    #[error("composition: {top} output wires above but {bottom} input wires below")]
    WidthMismatch { top: usize, bottom: usize },
}

/// An immutable, validated diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram {
    calculus: Calculus,
    nodes: BTreeMap<NodeId, NodeKind>,
    wires: Vec<Wire>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

fn describe_source(s: &Source) -> String {
    match s {
        Source::Input(i) => format!("in[{i}]"),
        Source::Port(n, p) => format!("{n}.out[{p}]"),
    }
}

fn describe_target(t: &Target) -> String {
    match t {
        Target::Output(i) => format!("out[{i}]"),
        Target::Port(n, p) => format!("{n}.in[{p}]"),
    }
}

impl Diagram {
    /// The empty diagram (the monoidal unit).
    pub fn empty(calculus: Calculus) -> Diagram {
        Diagram { calculus, nodes: BTreeMap::new(), wires: vec![], inputs: vec![], outputs: vec![] }
    }

    /// Assembles and validates a diagram from raw parts.
    pub fn from_parts(
        calculus: Calculus,
        nodes: BTreeMap<NodeId, NodeKind>,
        mut wires: Vec<Wire>,
        inputs: Vec<usize>,
        outputs: Vec<usize>,
    ) -> Result<Diagram, DiagramError> {
        wires.sort();
        let d = Diagram { calculus, nodes, wires, inputs, outputs };
        d.validate()?;
        Ok(d)
    }

    /// A single generator with its ports exposed in order.
    pub fn generator(kind: NodeKind) -> Result<Diagram, DiagramError> {
        let mut b = DiagramBuilder::new(kind.calculus());
        let ins: Vec<Source> = kind.input_labels().into_iter().map(|l| b.input(l)).collect();
        let outs = b.node(kind, &ins);
        for o in outs {
            b.output(o);
        }
        b.finish()
    }

    pub fn calculus(&self) -> Calculus {
        self.calculus
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, NodeKind> {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&NodeKind> {
        self.nodes.get(&id)
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn signature(&self) -> BoundarySignature {
        BoundarySignature { inputs: self.inputs.clone(), outputs: self.outputs.clone() }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Label carried by a wire source.
    pub fn source_label(&self, s: Source) -> Option<usize> {
        match s {
            Source::Input(i) => self.inputs.get(i).copied(),
            Source::Port(n, p) => self.nodes.get(&n)?.output_labels().get(p).copied(),
        }
    }

    /// Label expected at a wire target.
    pub fn target_label(&self, t: Target) -> Option<usize> {
        match t {
            Target::Output(i) => self.outputs.get(i).copied(),
            Target::Port(n, p) => self.nodes.get(&n)?.input_labels().get(p).copied(),
        }
    }

    /// The wire entering a target, if any.
    pub fn wire_into(&self, t: Target) -> Option<&Wire> {
        self.wires.iter().find(|w| w.to == t)
    }

    /// The wire leaving a source, if any.
    pub fn wire_from(&self, s: Source) -> Option<&Wire> {
        self.wires.iter().find(|w| w.from == s)
    }

    /// Smallest id above every node id in use.
    pub fn next_node_id(&self) -> u32 {
        self.nodes.keys().next_back().map(|n| n.0 + 1).unwrap_or(0)
    }

    /// Checks every structural invariant and returns the boundary signature.
    pub fn validate(&self) -> Result<BoundarySignature, DiagramError> {
        let calc = self.calculus;
        let min = calc.min_label();
        for (id, kind) in &self.nodes {
            if kind.calculus() != calc {
                return Err(DiagramError::MixedCalculus {
                    node: *id,
                    kind: kind.name(),
                    expected: calc,
                    found: kind.calculus(),
                });
            }
            kind.check().map_err(|reason| DiagramError::InvalidNode { node: *id, reason })?;
        }
        for (side, slots) in [("input", &self.inputs), ("output", &self.outputs)] {
            for (i, &l) in slots.iter().enumerate() {
                if l < min {
                    return Err(DiagramError::DimensionTooSmall {
                        at: format!("boundary {side} slot {i}"),
                        dim: l,
                        min,
                        calculus: calc,
                    });
                }
            }
        }

        let mut used_sources = BTreeSet::new();
        let mut used_targets = BTreeSet::new();
        for w in &self.wires {
            let src_label = match w.from {
                Source::Input(i) => *self.inputs.get(i).ok_or(DiagramError::NoSuchSlot { side: "input", slot: i })?,
                Source::Port(n, p) => {
                    let kind = self.nodes.get(&n).ok_or(DiagramError::UnknownNode(n))?;
                    *kind.output_labels().get(p).ok_or(DiagramError::NoSuchPort { node: n, side: "output", port: p })?
                }
            };
            let tgt_label = match w.to {
                Target::Output(i) => {
                    *self.outputs.get(i).ok_or(DiagramError::NoSuchSlot { side: "output", slot: i })?
                }
                Target::Port(n, p) => {
                    let kind = self.nodes.get(&n).ok_or(DiagramError::UnknownNode(n))?;
                    *kind.input_labels().get(p).ok_or(DiagramError::NoSuchPort { node: n, side: "input", port: p })?
                }
            };
            if w.dim < min {
                return Err(DiagramError::DimensionTooSmall {
                    at: format!("wire {} -> {}", describe_source(&w.from), describe_target(&w.to)),
                    dim: w.dim,
                    min,
                    calculus: calc,
                });
            }
            for (label, at) in [(src_label, describe_source(&w.from)), (tgt_label, describe_target(&w.to))] {
                if label != w.dim {
                    return Err(DiagramError::DimensionMismatch {
                        from: describe_source(&w.from),
                        to: describe_target(&w.to),
                        at,
                        expected: label,
                        found: w.dim,
                    });
                }
            }
            if !used_sources.insert(w.from) {
                return Err(DiagramError::PortReused { endpoint: describe_source(&w.from) });
            }
            if !used_targets.insert(w.to) {
                return Err(DiagramError::PortReused { endpoint: describe_target(&w.to) });
            }
        }

        for (id, kind) in &self.nodes {
            let (n, m) = kind.arity();
            for p in 0..n {
                if !used_targets.contains(&Target::Port(*id, p)) {
                    return Err(DiagramError::DanglingPort { node: *id, side: "input", port: p });
                }
            }
            for p in 0..m {
                if !used_sources.contains(&Source::Port(*id, p)) {
                    return Err(DiagramError::DanglingPort { node: *id, side: "output", port: p });
                }
            }
        }
        for i in 0..self.inputs.len() {
            if !used_sources.contains(&Source::Input(i)) {
                return Err(DiagramError::DanglingSlot { side: "input", slot: i });
            }
        }
        for i in 0..self.outputs.len() {
            if !used_targets.contains(&Target::Output(i)) {
                return Err(DiagramError::DanglingSlot { side: "output", slot: i });
            }
        }
        Ok(self.signature())
    }

    /// Renumbers nodes `0..n` in their current id order.
    pub fn compacted(&self) -> Diagram {
        let map: BTreeMap<NodeId, NodeId> =
            self.nodes.keys().enumerate().map(|(i, id)| (*id, NodeId(i as u32))).collect();
        self.relabeled(|id| map[&id])
    }

    pub(crate) fn relabeled(&self, f: impl Fn(NodeId) -> NodeId) -> Diagram {
        let nodes = self.nodes.iter().map(|(id, k)| (f(*id), k.clone())).collect();
        let mut wires: Vec<Wire> = self
            .wires
            .iter()
            .map(|w| Wire {
                from: match w.from {
                    Source::Port(n, p) => Source::Port(f(n), p),
                    s => s,
                },
                to: match w.to {
                    Target::Port(n, p) => Target::Port(f(n), p),
                    t => t,
                },
                dim: w.dim,
            })
            .collect();
        wires.sort();
        Diagram { calculus: self.calculus, nodes, wires, inputs: self.inputs.clone(), outputs: self.outputs.clone() }
    }

    /// Structural equality up to renumbering of node ids in id order.
    pub fn structurally_eq(&self, other: &Diagram) -> bool {
        self.compacted() == other.compacted()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zs(dims_in: &[usize], dims_out: &[usize]) -> NodeKind {
        let a = dims_in.iter().chain(dims_out).copied().min().unwrap();
        NodeKind::ZSpider {
            inputs: dims_in.to_vec(),
            outputs: dims_out.to_vec(),
            phase: crate::phase::PhaseVector::phase_free(a),
        }
    }

    #[test]
    fn cap_signature() {
        let d = Diagram::generator(NodeKind::Cap { dim: 3 }).unwrap();
        assert_eq!(d.validate().unwrap(), BoundarySignature { inputs: vec![], outputs: vec![3, 3] });
    }

    #[test]
    fn mismatched_wire_between_spiders() {
        let mut nodes = BTreeMap::new();
        nodes.insert(NodeId(0), zs(&[2], &[2]));
        nodes.insert(NodeId(1), zs(&[3], &[3]));
        let wires = vec![
            Wire { from: Source::Input(0), to: Target::Port(NodeId(0), 0), dim: 2 },
            Wire { from: Source::Port(NodeId(0), 0), to: Target::Port(NodeId(1), 0), dim: 2 },
            Wire { from: Source::Port(NodeId(1), 0), to: Target::Output(0), dim: 3 },
        ];
        let err = Diagram::from_parts(Calculus::Zx, nodes, wires, vec![2], vec![3]).unwrap_err();
        assert!(matches!(err, DiagramError::DimensionMismatch { expected: 3, found: 2, .. }), "{err}");
    }

    #[test]
    fn w_node_in_zx_diagram_is_rejected() {
        let mut nodes = BTreeMap::new();
        nodes.insert(NodeId(7), NodeKind::WNode { big: 2, small: vec![] });
        let wires = vec![Wire { from: Source::Input(0), to: Target::Port(NodeId(7), 0), dim: 2 }];
        let err = Diagram::from_parts(Calculus::Zx, nodes, wires, vec![2], vec![]).unwrap_err();
        assert!(matches!(err, DiagramError::MixedCalculus { node: NodeId(7), .. }));
    }

    #[test]
    fn dangling_port_names_the_node() {
        let mut nodes = BTreeMap::new();
        nodes.insert(NodeId(4), NodeKind::Identity { dim: 2 });
        let wires = vec![Wire { from: Source::Input(0), to: Target::Port(NodeId(4), 0), dim: 2 }];
        let err = Diagram::from_parts(Calculus::Zx, nodes, wires, vec![2], vec![]).unwrap_err();
        assert_eq!(err, DiagramError::DanglingPort { node: NodeId(4), side: "output", port: 0 });
    }

    #[test]
    fn dimension_one_zx_wire_is_rejected() {
        let wires = vec![Wire { from: Source::Input(0), to: Target::Output(0), dim: 1 }];
        let err = Diagram::from_parts(Calculus::Zx, BTreeMap::new(), wires, vec![1], vec![1]).unwrap_err();
        assert!(matches!(err, DiagramError::DimensionTooSmall { dim: 1, .. }));
    }

    #[test]
    fn reused_port_is_rejected() {
        let wires = vec![
            Wire { from: Source::Input(0), to: Target::Output(0), dim: 2 },
            Wire { from: Source::Input(0), to: Target::Output(1), dim: 2 },
        ];
        let err = Diagram::from_parts(Calculus::Zx, BTreeMap::new(), wires, vec![2], vec![2, 2]).unwrap_err();
        assert!(matches!(err, DiagramError::PortReused { .. }));
    }

    #[test]
    fn bad_basis_index() {
        let err = Diagram::generator(NodeKind::BasisKet { index: 3, dim: 3 }).unwrap_err();
        assert!(matches!(err, DiagramError::InvalidNode { .. }));
    }
}
