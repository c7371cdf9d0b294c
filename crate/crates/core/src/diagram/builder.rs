use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use super::{Calculus, Diagram, DiagramError, NodeId, NodeKind, Source, Target, Wire};

/// Incremental construction of a [`Diagram`].
///
/// Nodes get consecutive ids in insertion order. Sub-diagrams can be
/// inserted wholesale; bare wires inside them are routed through temporary
/// identity nodes that [`DiagramBuilder::finish`] splices away.
#[derive(Debug, Clone)]
pub struct DiagramBuilder {
    calculus: Calculus,
    nodes: BTreeMap<NodeId, NodeKind>,
    wires: Vec<Wire>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    next_id: u32,
    transient: BTreeSet<NodeId>,
}

/// Ports of a sub-diagram after [`DiagramBuilder::insert`].
#[derive(Debug, Clone)]
pub struct Inserted {
    pub inputs: Vec<Target>,
    pub outputs: Vec<Source>,
    /// Ids (in the builder) of the inserted nodes, in the sub-diagram's id order.
    pub nodes: Vec<NodeId>,
}

impl DiagramBuilder {
    pub fn new(calculus: Calculus) -> Self {
        DiagramBuilder {
            calculus,
            nodes: BTreeMap::new(),
            wires: vec![],
            inputs: vec![],
            outputs: vec![],
            next_id: 0,
            transient: BTreeSet::new(),
        }
    }

    /// Starts a builder whose node ids begin at `first_id`.
    pub fn starting_at(calculus: Calculus, first_id: u32) -> Self {
        let mut b = Self::new(calculus);
        b.next_id = first_id;
        b
    }

    pub fn calculus(&self) -> Calculus {
        self.calculus
    }

    /// Adds an input slot and returns it as a wire source.
    pub fn input(&mut self, label: usize) -> Source {
        self.inputs.push(label);
        Source::Input(self.inputs.len() - 1)
    }

    pub fn inputs(&mut self, labels: &[usize]) -> Vec<Source> {
        labels.iter().map(|&l| self.input(l)).collect()
    }

    /// Adds an output slot fed by `src`.
    pub fn output(&mut self, src: Source) -> usize {
        let label = self.label_of(src).unwrap_or(0);
        self.outputs.push(label);
        let slot = self.outputs.len() - 1;
        self.wires.push(Wire { from: src, to: Target::Output(slot), dim: label });
        slot
    }

    pub fn outputs(&mut self, srcs: &[Source]) {
        for s in srcs {
            self.output(*s);
        }
    }

    pub fn add_node(&mut self, kind: NodeKind) -> NodeId {
        let id = NodeId(self.next_id);
        self.next_id += 1;
        self.nodes.insert(id, kind);
        id
    }

    /// Adds a node, wires `ins` into its input ports in order and returns its
    /// output ports as sources.
    pub fn node(&mut self, kind: NodeKind, ins: &[Source]) -> Vec<Source> {
        let m = kind.output_labels().len();
        let id = self.add_node(kind);
        for (p, s) in ins.iter().enumerate() {
            self.wire(*s, Target::Port(id, p));
        }
        (0..m).map(|p| Source::Port(id, p)).collect()
    }

    /// Convenience for single-output nodes.
    pub fn node1(&mut self, kind: NodeKind, ins: &[Source]) -> Source {
        let outs = self.node(kind, ins);
        assert_eq!(outs.len(), 1, "node1 on a node with {} outputs", outs.len());
        outs[0]
    }

    pub fn scalar(&mut self, value: Complex64) {
        let kind = match self.calculus {
            Calculus::Zx => NodeKind::GlobalScalar { value },
            Calculus::Zw => NodeKind::ZwScalar { value },
        };
        self.add_node(kind);
    }

    pub fn wire(&mut self, from: Source, to: Target) {
        let dim = self.label_of(from).unwrap_or(0);
        self.wires.push(Wire { from, to, dim });
    }

    fn label_of(&self, s: Source) -> Option<usize> {
        match s {
            Source::Input(i) => self.inputs.get(i).copied(),
            Source::Port(n, p) => self.nodes.get(&n)?.output_labels().get(p).copied(),
        }
    }

    fn passthrough(&self, label: usize) -> NodeKind {
        match self.calculus {
            Calculus::Zx => NodeKind::Identity { dim: label },
            Calculus::Zw => NodeKind::ZwIdentity { label },
        }
    }

    /// Copies `d` into the builder without connecting its boundary.
    pub fn insert(&mut self, d: &Diagram) -> Inserted {
        let mut map = BTreeMap::new();
        let mut new_nodes = vec![];
        for (id, kind) in d.nodes() {
            let nid = self.add_node(kind.clone());
            map.insert(*id, nid);
            new_nodes.push(nid);
        }
        let mut inputs: Vec<Option<Target>> = vec![None; d.inputs().len()];
        let mut outputs: Vec<Option<Source>> = vec![None; d.outputs().len()];
        for w in d.wires() {
            match (w.from, w.to) {
                (Source::Input(i), Target::Output(j)) => {
                    let t = self.add_node(self.passthrough(w.dim));
                    self.transient.insert(t);
                    inputs[i] = Some(Target::Port(t, 0));
                    outputs[j] = Some(Source::Port(t, 0));
                }
                (Source::Input(i), Target::Port(n, p)) => inputs[i] = Some(Target::Port(map[&n], p)),
                (Source::Port(n, p), Target::Output(j)) => outputs[j] = Some(Source::Port(map[&n], p)),
                (Source::Port(n, p), Target::Port(m, q)) => {
                    self.wires.push(Wire { from: Source::Port(map[&n], p), to: Target::Port(map[&m], q), dim: w.dim });
                }
            }
        }
        Inserted {
            inputs: inputs.into_iter().map(|t| t.expect("validated diagram has every input wired")).collect(),
            outputs: outputs.into_iter().map(|s| s.expect("validated diagram has every output wired")).collect(),
            nodes: new_nodes,
        }
    }

    /// Inserts `d`, feeds its inputs from `ins` and returns its outputs.
    pub fn place(&mut self, d: &Diagram, ins: &[Source]) -> Vec<Source> {
        let inserted = self.insert(d);
        for (s, t) in ins.iter().zip(&inserted.inputs) {
            self.wire(*s, *t);
        }
        inserted.outputs
    }

    /// Splices transient identities and validates the result.
    pub fn finish(mut self) -> Result<Diagram, DiagramError> {
        let transient = std::mem::take(&mut self.transient);
        for t in transient {
            let w_in = self.wires.iter().position(|w| w.to == Target::Port(t, 0));
            let w_out = self.wires.iter().position(|w| w.from == Source::Port(t, 0));
            let (Some(i), Some(o)) = (w_in, w_out) else {
                // left in place; validation reports the dangling port
                continue;
            };
            let kind = self.nodes.remove(&t).expect("transient node present");
            if i == o {
                // closed loop: trace of the identity
                self.wires.remove(i);
                let dim = self.calculus.carried_dim(kind.input_labels()[0]);
                self.scalar(Complex64::new(dim as f64, 0.0));
                continue;
            }
            let from = self.wires[i].from;
            let to = self.wires[o].to;
            let dim = self.wires[i].dim;
            let (hi, lo) = if i > o { (i, o) } else { (o, i) };
            self.wires.remove(hi);
            self.wires.remove(lo);
            self.wires.push(Wire { from, to, dim });
        }
        Diagram::from_parts(self.calculus, self.nodes, self.wires, self.inputs, self.outputs)
    }
}
