//! Site-directed rewriting and script replay.
//!
//! A site names, for every node of the rule's source side, the host node it
//! stands for. [`apply`] checks that the named nodes really form a copy of
//! the source side and splices in the other side in their place.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{descriptor, instantiate, Params, RuleError, RuleInstance};
use crate::diagram::{Diagram, NodeId, Source, Target, Wire};
use crate::semantics::{interpret, tensor_equal, EqualityMode};
use crate::DEFAULT_TOL;

/// Tolerance for matching complex node parameters.
const MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Direction {
    /// Match the left-hand side, replace it by the right-hand side.
    #[default]
    #[serde(rename = "lr")]
    LeftToRight,
    #[serde(rename = "rl")]
    RightToLeft,
}

/// Pattern node id to host node id.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RewriteSite(pub BTreeMap<NodeId, NodeId>);

impl RewriteSite {
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        RewriteSite(pairs.iter().map(|&(p, h)| (NodeId(p), NodeId(h))).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScriptStep {
    pub rule: String,
    /// Parameters as JSON, decoded against the rule's schema on replay.
    #[serde(default = "empty_object")]
    pub params: serde_json::Value,
    pub site: RewriteSite,
    #[serde(default)]
    pub direction: Direction,
}

fn empty_object() -> serde_json::Value {
    serde_json::Value::Object(Default::default())
}

impl ScriptStep {
    pub fn new(rule: &str, params: &Params, site: RewriteSite, direction: Direction) -> Self {
        let params = serde_json::to_value(params).expect("params serialise");
        ScriptStep { rule: rule.to_string(), params, site, direction }
    }

    /// Instantiates the step's rule.
    pub fn instance(&self) -> Result<RuleInstance, RuleError> {
        let schema = descriptor(&self.rule)?.params;
        instantiate(&self.rule, &Params::from_json(&schema, &self.params)?)
    }
}

/// Ordered list of rewrite steps; serialises as a JSON array.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RewriteScript(pub Vec<ScriptStep>);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepLog {
    /// One-based step number.
    pub step: usize,
    pub rule: String,
    pub nodes_before: usize,
    pub nodes_after: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone)]
pub struct ReplayOutcome {
    pub diagram: Diagram,
    pub log: Vec<StepLog>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReplayError {
    #[error("step {step}: {source}")]
    Apply { step: usize, source: RuleError },
    #[error("step {step}: interpretation changed (deviation {deviation:.3e})")]
    Semantic { step: usize, deviation: f64 },
}

impl ReplayError {
    pub fn step(&self) -> usize {
        match self {
            ReplayError::Apply { step, .. } | ReplayError::Semantic { step, .. } => *step,
        }
    }
}

fn mismatch(msg: impl Into<String>) -> RuleError {
    RuleError::SiteMismatch(msg.into())
}

fn sides(inst: &RuleInstance, dir: Direction) -> (&Diagram, &Diagram) {
    match dir {
        Direction::LeftToRight => (&inst.lhs, &inst.rhs),
        Direction::RightToLeft => (&inst.rhs, &inst.lhs),
    }
}

/// Checks that `site` embeds `pattern` into `host`.
fn check_site(host: &Diagram, pattern: &Diagram, site: &RewriteSite) -> Result<(), RuleError> {
    if pattern.node_count() == 0 {
        return Err(mismatch("the source side has no nodes to match"));
    }
    if pattern.wires().iter().any(|w| matches!((w.from, w.to), (Source::Input(_), Target::Output(_)))) {
        return Err(mismatch("the source side has a bare wire and cannot be matched"));
    }
    let mut seen = BTreeSet::new();
    for (pid, kind) in pattern.nodes() {
        let hid = *site.0.get(pid).ok_or_else(|| mismatch(format!("pattern node {pid} is not assigned")))?;
        if !seen.insert(hid) {
            return Err(mismatch(format!("host node {hid} is assigned twice")));
        }
        let hk = host.node(hid).ok_or_else(|| mismatch(format!("host has no node {hid}")))?;
        if !kind.approx_eq(hk, MATCH_TOL) {
            return Err(mismatch(format!("pattern node {pid} is {kind:?} but host node {hid} is {hk:?}")));
        }
    }
    if let Some(extra) = site.0.keys().find(|k| pattern.node(**k).is_none()) {
        return Err(mismatch(format!("pattern has no node {extra}")));
    }
    for w in pattern.wires() {
        if let (Source::Port(n, p), Target::Port(m, q)) = (w.from, w.to) {
            let want = Target::Port(site.0[&m], q);
            let got = host.wire_from(Source::Port(site.0[&n], p)).map(|w| w.to);
            if got != Some(want) {
                return Err(mismatch(format!("wire {n}.out[{p}] -> {m}.in[{q}] is missing in the host")));
            }
        }
    }
    Ok(())
}

/// Replaces the copy of the source side at `site` by the other side.
///
/// Nodes outside the site keep their ids; nodes of the replacement get fresh
/// ids above every host id.
pub fn apply(host: &Diagram, site: &RewriteSite, inst: &RuleInstance, dir: Direction) -> Result<Diagram, RuleError> {
    if host.calculus() != inst.calculus {
        return Err(mismatch(format!(
            "rule {} is a {} rule but the diagram is {}",
            inst.name,
            inst.calculus,
            host.calculus()
        )));
    }
    let (pattern, repl) = sides(inst, dir);
    check_site(host, pattern, site)?;
    let matched: BTreeSet<NodeId> = site.0.values().copied().collect();
    let back: BTreeMap<NodeId, NodeId> = site.0.iter().map(|(p, h)| (*h, *p)).collect();

    // Host ends of the pattern boundary.
    let mut feeds = vec![];
    for i in 0..pattern.inputs().len() {
        let Target::Port(n, p) = pattern.wire_from(Source::Input(i)).expect("validated").to else {
            unreachable!("bare wires rejected above");
        };
        feeds.push(host.wire_into(Target::Port(site.0[&n], p)).expect("validated host").from);
    }
    let mut sinks = vec![];
    for j in 0..pattern.outputs().len() {
        let Source::Port(n, p) = pattern.wire_into(Target::Output(j)).expect("validated").from else {
            unreachable!("bare wires rejected above");
        };
        sinks.push(host.wire_from(Source::Port(site.0[&n], p)).expect("validated host").to);
    }
    let input_slot_of = |t: Target| -> Option<usize> {
        let Target::Port(h, q) = t else { return None };
        let pid = back.get(&h)?;
        (0..pattern.inputs().len())
            .find(|&i| pattern.wire_from(Source::Input(i)).map(|w| w.to) == Some(Target::Port(*pid, q)))
    };
    let output_slot_of = |s: Source| -> Option<usize> {
        let Source::Port(h, p) = s else { return None };
        let pid = back.get(&h)?;
        (0..pattern.outputs().len())
            .find(|&j| pattern.wire_into(Target::Output(j)).map(|w| w.from) == Some(Source::Port(*pid, p)))
    };

    let first = host.next_node_id();
    let fresh = |n: NodeId| NodeId(first + n.0);

    // Source in the result that produces replacement output `j`.
    let out_src = |j: usize, depth: usize| -> Result<Source, RuleError> {
        let mut j = j;
        for _ in 0..=depth {
            match repl.wire_into(Target::Output(j)).expect("validated").from {
                Source::Port(n, p) => return Ok(Source::Port(fresh(n), p)),
                Source::Input(i) => match feeds[i] {
                    s if output_slot_of(s).is_none() => return Ok(s),
                    s => j = output_slot_of(s).expect("checked"),
                },
            }
        }
        Err(mismatch("the rewrite would close a loop of bare wires"))
    };
    let limit = pattern.inputs().len() + pattern.outputs().len();
    let in_src = |i: usize| -> Result<Source, RuleError> {
        match output_slot_of(feeds[i]) {
            None => Ok(feeds[i]),
            Some(j) => out_src(j, limit),
        }
    };

    let mut nodes: BTreeMap<NodeId, _> =
        host.nodes().iter().filter(|(id, _)| !matched.contains(id)).map(|(id, k)| (*id, k.clone())).collect();
    for (id, k) in repl.nodes() {
        nodes.insert(fresh(*id), k.clone());
    }
    let touches = |w: &Wire| {
        matches!(w.from, Source::Port(n, _) if matched.contains(&n))
            || matches!(w.to, Target::Port(n, _) if matched.contains(&n))
    };
    let mut wires: Vec<Wire> = host.wires().iter().filter(|w| !touches(w)).cloned().collect();
    for w in repl.wires() {
        let to = match w.to {
            Target::Port(n, q) => Target::Port(fresh(n), q),
            Target::Output(j) => {
                if input_slot_of(sinks[j]).is_some() {
                    // feeds back into the pattern; the consumer pulls it via in_src
                    continue;
                }
                sinks[j]
            }
        };
        let from = match w.from {
            Source::Port(n, p) => Source::Port(fresh(n), p),
            Source::Input(i) => in_src(i)?,
        };
        wires.push(Wire { from, to, dim: w.dim });
    }
    Ok(Diagram::from_parts(host.calculus(), nodes, wires, host.inputs().to_vec(), host.outputs().to_vec())?)
}

/// Every site at which `pattern` occurs in `host`, found by backtracking.
///
/// Exponential in the worst case; meant for small hosts in tests.
pub fn find_matches(host: &Diagram, pattern: &Diagram) -> Vec<RewriteSite> {
    let pids: Vec<NodeId> = pattern.nodes().keys().copied().collect();
    let mut out = vec![];
    let mut current = BTreeMap::new();
    search(host, pattern, &pids, &mut current, &mut out);
    out
}

fn search(
    host: &Diagram,
    pattern: &Diagram,
    pids: &[NodeId],
    current: &mut BTreeMap<NodeId, NodeId>,
    out: &mut Vec<RewriteSite>,
) {
    let Some(&pid) = pids.get(current.len()) else {
        let site = RewriteSite(current.clone());
        if check_site(host, pattern, &site).is_ok() {
            out.push(site);
        }
        return;
    };
    let kind = &pattern.nodes()[&pid];
    for (hid, hk) in host.nodes() {
        if current.values().any(|v| v == hid) || !kind.approx_eq(hk, MATCH_TOL) {
            continue;
        }
        current.insert(pid, *hid);
        let consistent = pattern.wires().iter().all(|w| match (w.from, w.to) {
            (Source::Port(n, p), Target::Port(m, q)) => match (current.get(&n), current.get(&m)) {
                (Some(hn), Some(hm)) => {
                    host.wire_from(Source::Port(*hn, p)).map(|w| w.to) == Some(Target::Port(*hm, q))
                }
                _ => true,
            },
            _ => true,
        });
        if consistent {
            search(host, pattern, pids, current, out);
        }
        current.remove(&pid);
    }
}

/// Runs `script` from `start`, checking after every step that the
/// interpretation is unchanged.
pub fn replay(start: &Diagram, script: &RewriteScript) -> Result<ReplayOutcome, ReplayError> {
    let mut d = start.clone();
    let mut before = interpret(&d).map_err(|e| ReplayError::Apply { step: 0, source: e.into() })?;
    let mut log = vec![];
    for (k, st) in script.0.iter().enumerate() {
        let step = k + 1;
        let fail = |source: RuleError| ReplayError::Apply { step, source };
        let inst = st.instance().map_err(fail)?;
        let next = apply(&d, &st.site, &inst, st.direction).map_err(fail)?;
        let after = interpret(&next).map_err(|e| fail(e.into()))?;
        let v = tensor_equal(&before, &after, DEFAULT_TOL, EqualityMode::Exact).map_err(|e| fail(e.into()))?;
        if !v.equal {
            return Err(ReplayError::Semantic { step, deviation: v.max_abs_deviation });
        }
        log.push(StepLog {
            step,
            rule: st.rule.clone(),
            nodes_before: d.node_count(),
            nodes_after: next.node_count(),
            deviation: v.max_abs_deviation,
        });
        d = next;
        before = after;
    }
    Ok(ReplayOutcome { diagram: d, log })
}
