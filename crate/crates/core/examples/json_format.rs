//! Writes a diagram as JSON, reads it back and compares.

use zxw::diagram::{constructors, deserialize, serialize};

fn main() {
    let d = constructors::x_spider(2, 1, 2).expect("d >= 2");
    let text = serialize(&d);
    println!("{text}");
    let back = deserialize(&text).expect("own output parses");
    assert!(back.structurally_eq(&d));
    println!("round trip keeps the diagram: {}", back.structurally_eq(&d));

    let broken = r#"{"nodes": [], "wires": [], "inputs": [], "outputs": []}"#;
    println!("missing calculus: {}", deserialize(broken).unwrap_err());
}
