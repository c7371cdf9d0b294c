//! Translations between the calculi.
//!
//! [`to_zw`] sends a ZX diagram to a ZW diagram and [`to_zx`] goes back.
//! Both act node by node: every generator is replaced by a fixed image
//! diagram and the images are wired together exactly as the source nodes
//! were. A ZX wire of dimension `a` becomes a ZW wire of label `a - 1`.

mod wx;
mod xw;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Calculus, Diagram, DiagramBuilder, DiagramError, NodeId, NodeKind, Source};
use crate::rules::{replay, RewriteScript};
use crate::semantics::{interpret, tensor_equal, EqualityMode, EquivalenceVerdict, SemanticsError};

pub use xw::{diagonal_gadget, mod_gadget, zw_state};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TranslateError {
    #[error("expected a {expected} diagram, found {found}")]
    WrongCalculus { expected: Calculus, found: Calculus },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A translated diagram together with where each source node went.
#[derive(Debug, Clone)]
pub struct TranslationTrace {
    pub source: Diagram,
    pub target: Diagram,
    /// Source node id to the ids of the target nodes in its image.
    pub provenance: BTreeMap<NodeId, Vec<NodeId>>,
}

#[derive(Serialize)]
struct ProvenanceJson<'a> {
    source_calculus: Calculus,
    target_calculus: Calculus,
    provenance: &'a BTreeMap<NodeId, Vec<NodeId>>,
}

impl TranslationTrace {
    /// The provenance map as JSON, keyed by source node id.
    pub fn provenance_json(&self) -> String {
        let p = ProvenanceJson {
            source_calculus: self.source.calculus(),
            target_calculus: self.target.calculus(),
            provenance: &self.provenance,
        };
        serde_json::to_string_pretty(&p).expect("provenance json")
    }
}

/// ZX dimensions to ZW labels.
pub fn xw_objects(dims: &[usize]) -> Vec<usize> {
    dims.iter().map(|d| d - 1).collect()
}

/// ZW labels to ZX dimensions.
pub fn wx_objects(labels: &[usize]) -> Vec<usize> {
    labels.iter().map(|l| l + 1).collect()
}

/// Image of a single ZX generator.
pub fn zw_image(kind: &NodeKind) -> Diagram {
    xw::image(kind)
}

/// Image of a single ZW generator.
pub fn zx_image(kind: &NodeKind) -> Diagram {
    wx::image(kind)
}

pub fn to_zw(d: &Diagram) -> Result<TranslationTrace, TranslateError> {
    functor(d, Calculus::Zx, xw_objects, xw::image)
}

pub fn to_zx(d: &Diagram) -> Result<TranslationTrace, TranslateError> {
    functor(d, Calculus::Zw, wx_objects, wx::image)
}

fn functor(
    d: &Diagram,
    from: Calculus,
    objects: fn(&[usize]) -> Vec<usize>,
    image: fn(&NodeKind) -> Diagram,
) -> Result<TranslationTrace, TranslateError> {
    if d.calculus() != from {
        return Err(TranslateError::WrongCalculus { expected: from, found: d.calculus() });
    }
    d.validate()?;
    let mut b = DiagramBuilder::new(from.other());
    let ins = b.inputs(&objects(d.inputs()));
    let placed: BTreeMap<NodeId, _> = d.nodes().iter().map(|(id, k)| (*id, b.insert(&image(k)))).collect();
    let map = |s: Source| match s {
        Source::Input(i) => ins[i],
        Source::Port(n, p) => placed[&n].outputs[p],
    };
    for w in d.wires() {
        if let crate::diagram::Target::Port(n, q) = w.to {
            b.wire(map(w.from), placed[&n].inputs[q]);
        }
    }
    for j in 0..d.outputs().len() {
        let w = d.wire_into(crate::diagram::Target::Output(j)).expect("validated");
        b.output(map(w.from));
    }
    let target = b.finish()?;
    let provenance = placed
        .iter()
        .map(|(id, ins)| (*id, ins.nodes.iter().copied().filter(|n| target.node(*n).is_some()).collect()))
        .collect();
    Ok(TranslationTrace { source: d.clone(), target, provenance })
}

/// Outcome of translating a ZX diagram to ZW and back.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub image: Diagram,
    pub semantic: EquivalenceVerdict,
    /// Result of replaying the curated reduction script, when there is one.
    pub structural: Option<bool>,
}

impl RoundTrip {
    pub fn ok(&self) -> bool {
        self.semantic.equal && self.structural != Some(false)
    }
}

/// Reduction script taking the round-trip image of `g` back to `g`, for
/// the diagrams that have one.
///
/// Identities, swaps, caps and cups come back as the same generators, so
/// their script is empty.
pub fn curated_script(g: &Diagram) -> Option<RewriteScript> {
    let plain = g.nodes().values().all(|k| {
        matches!(k, NodeKind::Identity { .. } | NodeKind::Swap { .. } | NodeKind::Cap { .. } | NodeKind::Cup { .. })
    });
    (plain && g.node_count() > 0).then(RewriteScript::default)
}

/// Translates `g` to ZW and back, then compares with `g`.
pub fn round_trip_zx(g: &Diagram, tol: f64) -> Result<RoundTrip, RoundTripError> {
    let there = to_zw(g)?;
    let back = to_zx(&there.target)?;
    let semantic = tensor_equal(&interpret(g)?, &interpret(&back.target)?, tol, EqualityMode::Exact)?;
    let structural = match curated_script(g) {
        None => None,
        Some(script) => Some(match replay(&back.target, &script) {
            Ok(out) => out.diagram.structurally_eq(g),
            Err(_) => false,
        }),
    };
    Ok(RoundTrip { image: back.target, semantic, structural })
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RoundTripError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}
