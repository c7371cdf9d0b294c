//! JSON diagram format.
//!
//! ```json
//! {
//!   "calculus": "zx",
//!   "nodes": [{"id": 0, "kind": "identity", "params": {"dim": 4}}],
//!   "wires": [
//!     {"from": ["in", 0], "to": [0, 0], "dim": 4},
//!     {"from": [0, 0], "to": ["out", 0], "dim": 4}
//!   ],
//!   "inputs": [4],
//!   "outputs": [4]
//! }
//! ```
//!
//! Node ports are indexed per side: `from: [id, k]` is the k-th output of
//! node `id`, `to: [id, k]` its k-th input. Complex numbers are `[re, im]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Calculus, Diagram, DiagramError, NodeId, NodeKind, Source, Target, Wire};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("schema violation at line {line}, column {column}: {msg}")]
    Schema { line: usize, column: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Invalid(#[from] DiagramError),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        let msg = e.to_string();
        match e.classify() {
            serde_json::error::Category::Data => JsonError::Schema { line, column, msg },
            _ => JsonError::Parse { line, column, msg },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    calculus: Calculus,
    nodes: Vec<NodeJson>,
    wires: Vec<WireJson>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: u32,
    #[serde(flatten)]
    kind: NodeKind,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EndJson {
    Node(u32, usize),
    Boundary(String, usize),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireJson {
    from: EndJson,
    to: EndJson,
    dim: usize,
}

fn schema(msg: String) -> JsonError {
    JsonError::Schema { line: 0, column: 0, msg }
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            calculus: d.calculus(),
            nodes: d.nodes().iter().map(|(id, k)| NodeJson { id: id.0, kind: k.clone() }).collect(),
            wires: d
                .wires()
                .iter()
                .map(|w| WireJson {
                    from: match w.from {
                        Source::Input(i) => EndJson::Boundary("in".into(), i),
                        Source::Port(n, p) => EndJson::Node(n.0, p),
                    },
                    to: match w.to {
                        Target::Output(i) => EndJson::Boundary("out".into(), i),
                        Target::Port(n, p) => EndJson::Node(n.0, p),
                    },
                    dim: w.dim,
                })
                .collect(),
            inputs: d.inputs().to_vec(),
            outputs: d.outputs().to_vec(),
        }
    }
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = JsonError;

    fn try_from(j: DiagramJson) -> Result<Self, JsonError> {
        let mut nodes = BTreeMap::new();
        for n in j.nodes {
            if nodes.insert(NodeId(n.id), n.kind).is_some() {
                return Err(schema(format!("nodes: duplicate id {}", n.id)));
            }
        }
        let mut wires = vec![];
        for (i, w) in j.wires.into_iter().enumerate() {
            let from = match w.from {
                EndJson::Node(n, p) => Source::Port(NodeId(n), p),
                EndJson::Boundary(tag, s) if tag == "in" => Source::Input(s),
                EndJson::Boundary(tag, _) => {
                    return Err(schema(format!("wires[{i}].from: expected \"in\", found {tag:?}")))
                }
            };
            let to = match w.to {
                EndJson::Node(n, p) => Target::Port(NodeId(n), p),
                EndJson::Boundary(tag, s) if tag == "out" => Target::Output(s),
                EndJson::Boundary(tag, _) => {
                    return Err(schema(format!("wires[{i}].to: expected \"out\", found {tag:?}")))
                }
            };
            wires.push(Wire { from, to, dim: w.dim });
        }
        Ok(Diagram::from_parts(j.calculus, nodes, wires, j.inputs, j.outputs)?)
    }
}

/// Canonical pretty-printed JSON: nodes by id, wires by source.
pub fn serialize(d: &Diagram) -> String {
    serde_json::to_string_pretty(&DiagramJson::from(d)).expect("diagram json")
}

pub fn deserialize(text: &str) -> Result<Diagram, JsonError> {
    let j: DiagramJson = serde_json::from_str(text)?;
    Diagram::try_from(j)
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        Diagram::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::constructors;

    #[test]
    fn identity_round_trip() {
        let d = constructors::identity(Calculus::Zx, 4);
        let text = serialize(&d);
        let back = deserialize(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.signature().inputs, vec![4]);
        assert_eq!(back.signature().outputs, vec![4]);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn missing_calculus_is_a_schema_error() {
        let text = r#"{"nodes": [], "wires": [], "inputs": [], "outputs": []}"#;
        match deserialize(text) {
            Err(JsonError::Schema { msg, .. }) => assert!(msg.contains("calculus"), "{msg}"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let text = "{\n  \"calculus\": \"zx\",\n  \"nodes\": [,]\n}";
        match deserialize(text) {
            Err(JsonError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn complex_parameters_survive_exactly() {
        let text = r#"{
            "calculus": "zx",
            "nodes": [{"id": 3, "kind": "z_spider",
                       "params": {"inputs": [3], "outputs": [3],
                                  "phase": [[1.0, 0.0], [0.1, -2.5e-7], [-0.3333333333333333, 1e300]]}}],
            "wires": [{"from": ["in", 0], "to": [3, 0], "dim": 3},
                      {"from": [3, 0], "to": ["out", 0], "dim": 3}],
            "inputs": [3], "outputs": [3]
        }"#;
        let d = deserialize(text).unwrap();
        let back = deserialize(&serialize(&d)).unwrap();
        assert_eq!(back, d);
        match back.node(NodeId(3)).unwrap() {
            NodeKind::ZSpider { phase, .. } => {
                assert_eq!(phase.get(1).im, -2.5e-7);
                assert_eq!(phase.get(2).re, -0.3333333333333333);
            }
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn bad_boundary_tag() {
        let text = r#"{"calculus": "zx", "nodes": [],
            "wires": [{"from": ["out", 0], "to": ["out", 0], "dim": 2}],
            "inputs": [2], "outputs": [2]}"#;
        assert!(matches!(deserialize(text), Err(JsonError::Schema { .. })));
    }
}
