//! Draws seeded random diagrams and prints their size and boundary.

use zxw::diagram::Calculus;
use zxw::verify::{random_diagram, RandomDiagramSpec};

fn main() {
    for calculus in [Calculus::Zx, Calculus::Zw] {
        let mut sizes = vec![0usize; 10];
        for seed in 0..1000 {
            let d = random_diagram(&RandomDiagramSpec { calculus, seed, ..Default::default() }).expect("feasible spec");
            sizes[d.node_count().min(9)] += 1;
        }
        println!("{calculus}: diagrams by node count {sizes:?}");
        let d = random_diagram(&RandomDiagramSpec { calculus, seed: 1, ..Default::default() }).expect("feasible spec");
        println!("{calculus} seed 1: {:?} -> {:?}, {} nodes", d.inputs(), d.outputs(), d.node_count());
    }
}
