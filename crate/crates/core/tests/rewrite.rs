mod common;

use common::c;
use zxw::diagram::constructors;
use zxw::rules::*;
use zxw::semantics::interpret;
use zxw::{Calculus, Diagram, DiagramBuilder, EqualityMode, NodeKind, PhaseVector};

fn z(ins: &[usize], outs: &[usize], phase: PhaseVector) -> NodeKind {
    NodeKind::ZSpider { inputs: ins.to_vec(), outputs: outs.to_vec(), phase }
}

fn s1_params(mid: usize) -> Params {
    Params::new()
        .with("in1", vec![2usize])
        .with("out1", Vec::<usize>::new())
        .with("in2", Vec::<usize>::new())
        .with("out2", vec![2usize])
        .with("mid", mid)
        .with("p", vec![c(1.0, 0.0), c(2.0, 0.0)])
        .with("q", vec![c(1.0, 0.0), c(0.0, 3.0)])
}

/// X(2->1), then two 1->1 Z-spiders in a row, then X(1->2).
fn host() -> Diagram {
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&[2, 2]);
    let x = b.node1(NodeKind::XSpider { dim: 2, n_in: 2, n_out: 1 }, &ins);
    let s = b.node1(z(&[2], &[2], PhaseVector::new(vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap()), &[x]);
    let t = b.node1(z(&[2], &[2], PhaseVector::new(vec![c(1.0, 0.0), c(0.0, 3.0)]).unwrap()), &[s]);
    let outs = b.node(NodeKind::XSpider { dim: 2, n_in: 1, n_out: 2 }, &[t]);
    b.outputs(&outs);
    b.finish().unwrap()
}

fn same_semantics(a: &Diagram, b: &Diagram) -> bool {
    zxw::tensor_equal(&interpret(a).unwrap(), &interpret(b).unwrap(), 1e-9, EqualityMode::Exact).unwrap().equal
}

fn z_ids(d: &Diagram) -> Vec<u32> {
    d.nodes().iter().filter(|(_, k)| matches!(k, NodeKind::ZSpider { .. })).map(|(id, _)| id.0).collect()
}

#[test]
fn fusion_on_two_spiders() {
    let h = host();
    let inst = instantiate("S1", &s1_params(2)).unwrap();
    let sites = find_matches(&h, &inst.lhs);
    assert_eq!(sites.len(), 1);
    let out = apply(&h, &sites[0], &inst, Direction::LeftToRight).unwrap();
    assert_eq!(out.node_count(), 3);
    assert!(same_semantics(&h, &out));
    let fused: Vec<&NodeKind> = out.nodes().values().filter(|k| matches!(k, NodeKind::ZSpider { .. })).collect();
    assert_eq!(fused.len(), 1);
    if let NodeKind::ZSpider { phase, .. } = fused[0] {
        assert!((phase.get(1) - c(0.0, 6.0)).norm() < 1e-12);
    }
}

#[test]
fn fusion_can_be_undone() {
    let h = host();
    let inst = instantiate("S1", &s1_params(2)).unwrap();
    let fused = apply(&h, &find_matches(&h, &inst.lhs)[0], &inst, Direction::LeftToRight).unwrap();
    let back = find_matches(&fused, &inst.rhs);
    assert!(!back.is_empty());
    let unfused = apply(&fused, &back[0], &inst, Direction::RightToLeft).unwrap();
    assert_eq!(unfused.node_count(), 4);
    assert!(same_semantics(&h, &unfused));
}

#[test]
fn identity_elimination() {
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&[3, 3]);
    let x = b.node1(NodeKind::XSpider { dim: 3, n_in: 2, n_out: 1 }, &ins);
    let s = b.node1(z(&[3], &[3], PhaseVector::phase_free(3)), &[x]);
    let outs = b.node(NodeKind::XSpider { dim: 3, n_in: 1, n_out: 2 }, &[s]);
    b.outputs(&outs);
    let h = b.finish().unwrap();
    let inst = instantiate("S2", &Params::new().with("a", 3usize)).unwrap();
    let site = RewriteSite::from_pairs(&[(inst.lhs.nodes().keys().next().unwrap().0, z_ids(&h)[0])]);
    let out = apply(&h, &site, &inst, Direction::LeftToRight).unwrap();
    assert_eq!(out.node_count(), 2);
    assert!(z_ids(&out).is_empty());
    assert!(same_semantics(&h, &out));
    // a bare wire is not a pattern
    assert!(apply(&out, &RewriteSite::default(), &inst, Direction::RightToLeft).is_err());
}

#[test]
fn dimension_mismatch_is_rejected() {
    let h = host();
    let inst = instantiate("S1", &s1_params(3)).unwrap();
    assert!(find_matches(&h, &inst.lhs).is_empty());
    let ids = z_ids(&h);
    let pattern: Vec<u32> = inst.lhs.nodes().keys().map(|n| n.0).collect();
    let site = RewriteSite::from_pairs(&[(pattern[0], ids[0]), (pattern[1], ids[1])]);
    assert!(apply(&h, &site, &inst, Direction::LeftToRight).is_err());
}

#[test]
fn wrong_calculus_is_rejected() {
    let inst = instantiate("zw-identity", &Params::new().with("a", 1usize)).unwrap();
    let h = constructors::identity(Calculus::Zx, 2);
    assert!(apply(&h, &RewriteSite::default(), &inst, Direction::LeftToRight).is_err());
}

#[test]
fn replay_logs_every_step() {
    let h = host();
    let s1 = instantiate("S1", &s1_params(2)).unwrap();
    let site = find_matches(&h, &s1.lhs).remove(0);
    let script = RewriteScript(vec![ScriptStep::new("S1", &s1_params(2), site, Direction::LeftToRight)]);
    let out = replay(&h, &script).unwrap();
    assert_eq!(out.log.len(), 1);
    assert_eq!((out.log[0].step, out.log[0].nodes_before, out.log[0].nodes_after), (1, 4, 3));
    assert!(out.log[0].deviation <= 1e-12);
}

#[test]
fn replay_halts_at_the_failing_step() {
    let h = host();
    let s1 = instantiate("S1", &s1_params(2)).unwrap();
    let site = find_matches(&h, &s1.lhs).remove(0);
    let step = ScriptStep::new("S1", &s1_params(2), site, Direction::LeftToRight);
    // the second step points at nodes the first one removed
    let script = RewriteScript(vec![step.clone(), step]);
    let err = replay(&h, &script).unwrap_err();
    assert_eq!(err.step(), 2);
    assert!(matches!(err, ReplayError::Apply { .. }));
}

#[test]
fn empty_script_changes_nothing() {
    let h = host();
    let out = replay(&h, &RewriteScript::default()).unwrap();
    assert!(out.log.is_empty());
    assert!(out.diagram.structurally_eq(&h));
}

#[test]
fn scripts_round_trip_through_json() {
    let h = host();
    let s1 = instantiate("S1", &s1_params(2)).unwrap();
    let site = find_matches(&h, &s1.lhs).remove(0);
    let script = RewriteScript(vec![ScriptStep::new("S1", &s1_params(2), site, Direction::RightToLeft)]);
    let text = serde_json::to_string(&script).unwrap();
    assert!(text.contains("\"direction\":\"rl\""));
    let back: RewriteScript = serde_json::from_str(&text).unwrap();
    assert_eq!(back, script);
    assert_eq!(back.0[0].instance().unwrap().params, s1_params(2));
}
