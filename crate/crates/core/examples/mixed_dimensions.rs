//! Mixed-dimensional Z-spiders, embeddings and the derived generators.

use zxw::diagram::constructors;
use zxw::semantics::apply_basis;
use zxw::{interpret, Diagram, NodeKind, PhaseVector};

fn print(name: &str, d: &Diagram) {
    let t = interpret(d).expect("within budget");
    println!("{name}: shape {:?}", t.shape());
    for row in t.as_matrix(d.outputs().len()) {
        let cells: Vec<String> = row.iter().map(|z| format!("{:6.3}", z.re)).collect();
        println!("  {}", cells.join(" "));
    }
}

fn main() {
    let squeeze =
        Diagram::generator(NodeKind::ZSpider { inputs: vec![3], outputs: vec![2], phase: PhaseVector::phase_free(2) })
            .expect("generator");
    print("Z-spider 3 -> 2", &squeeze);
    print("embedding 2 -> 4", &constructors::embedding(2, 4));
    print("qutrit Hadamard", &constructors::hadamard(3).expect("d >= 2"));
    print("shift by 1 in dimension 4", &constructors::shift(4, 1).expect("d >= 2"));

    let x = constructors::x_spider(3, 2, 1).expect("d >= 2");
    let t = apply_basis(&x, &[1, 2]).expect("basis input");
    println!("X-spider on |1,2> in dimension 3: {:?}", t.data().iter().map(|z| z.re).collect::<Vec<_>>());
}
