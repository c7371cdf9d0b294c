//! Translates ZX generators into the ZW calculus and back, and ZW
//! generators into ZX, reporting sizes and semantic agreement.

use zxw::diagram::constructors;
use zxw::translate::{round_trip_zx, to_zw, to_zx};
use zxw::{interpret, tensor_equal, Calculus, Diagram, EqualityMode, NodeKind, DEFAULT_TOL};

fn main() {
    let zx = [
        ("X-spider 2->1, d=3", constructors::x_spider(3, 2, 1).expect("d >= 2")),
        ("Hadamard, d=2", constructors::hadamard(2).expect("d >= 2")),
        (
            "cap, d=4",
            constructors::general_z_spider(&[], &[4, 4], zxw::PhaseVector::phase_free(4)).expect("phase length"),
        ),
        ("identity, d=3", constructors::identity(Calculus::Zx, 3)),
    ];
    for (name, d) in &zx {
        let there = to_zw(d).expect("ZX diagram");
        let rt = round_trip_zx(d, DEFAULT_TOL).expect("translatable");
        println!(
            "{name}: {} ZX nodes -> {} ZW nodes -> {} ZX nodes; semantics kept {}, structural {:?}",
            d.node_count(),
            there.target.node_count(),
            rt.image.node_count(),
            rt.semantic.equal,
            rt.structural
        );
    }

    let w = Diagram::generator(NodeKind::WNode { big: 2, small: vec![1, 2] }).expect("generator");
    let trace = to_zx(&w).expect("ZW diagram");
    let v = tensor_equal(
        &interpret(&w).expect("w"),
        &interpret(&trace.target).expect("image"),
        DEFAULT_TOL,
        EqualityMode::Exact,
    )
    .expect("same shape");
    println!("W-node (2; 1, 2) -> {} ZX nodes, equal {}", trace.target.node_count(), v.equal);
    println!("provenance {}", trace.provenance_json());
}
