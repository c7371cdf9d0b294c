//! Finds a spider-fusion site in a diagram, applies the rule and replays
//! the same step as a script.

use num_complex::Complex64;
use zxw::rules::{apply, find_matches, instantiate, replay, Direction, Params, RewriteScript, ScriptStep};
use zxw::{Calculus, DiagramBuilder, NodeKind, PhaseVector};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let p = vec![c(1.0, 0.0), c(0.5, 0.5), c(2.0, 0.0)];
    let q = vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)];
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let i = b.input(3);
    let s = b.node1(
        NodeKind::ZSpider { inputs: vec![3], outputs: vec![3], phase: PhaseVector::new(p.clone()).expect("p_0 = 1") },
        &[i],
    );
    let t = b.node1(
        NodeKind::ZSpider { inputs: vec![3], outputs: vec![3], phase: PhaseVector::new(q.clone()).expect("q_0 = 1") },
        &[s],
    );
    b.output(t);
    let host = b.finish().expect("valid diagram");

    let params = Params::new()
        .with("in1", vec![3usize])
        .with("out1", Vec::<usize>::new())
        .with("in2", Vec::<usize>::new())
        .with("out2", vec![3usize])
        .with("mid", 3usize)
        .with("p", p)
        .with("q", q);
    let rule = instantiate("S1", &params).expect("valid parameters");
    let sites = find_matches(&host, &rule.lhs);
    println!("{} fusion site(s): {:?}", sites.len(), sites);

    let fused = apply(&host, &sites[0], &rule, Direction::LeftToRight).expect("site matches");
    println!("{} nodes before, {} after: {:?}", host.node_count(), fused.node_count(), fused.nodes().values().next());

    let script = RewriteScript(vec![ScriptStep::new("S1", &params, sites[0].clone(), Direction::LeftToRight)]);
    println!("script: {}", serde_json::to_string(&script).expect("json"));
    let outcome = replay(&host, &script).expect("every step is sound");
    for step in &outcome.log {
        println!(
            "step {} {}: {} -> {} nodes, deviation {:.1e}",
            step.step, step.rule, step.nodes_before, step.nodes_after, step.deviation
        );
    }
}
