//! Builds a small qutrit ZX diagram by hand and prints its matrix.

use num_complex::Complex64;
use zxw::{interpret, Calculus, DiagramBuilder, NodeKind, PhaseVector};

fn main() {
    let phase = PhaseVector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)])
        .expect("leading entry is one");
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&[3, 3]);
    let sum = b.node1(NodeKind::XSpider { dim: 3, n_in: 2, n_out: 1 }, &ins);
    let out = b.node1(NodeKind::ZSpider { inputs: vec![3], outputs: vec![3], phase }, &[sum]);
    b.output(out);
    let d = b.finish().expect("valid diagram");

    println!("signature {}", d.signature());
    let t = interpret(&d).expect("within budget");
    for row in t.as_matrix(1) {
        let cells: Vec<String> = row.iter().map(|z| format!("{:>5.1}{:+.1}i", z.re, z.im)).collect();
        println!("{}", cells.join(" "));
    }
}
