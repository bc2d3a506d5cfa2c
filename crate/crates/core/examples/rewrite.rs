//! Reduce a tree to balanced trees by rotations and compare with determinants.
//!
//! cargo run --example rewrite -- "(((1,2),3),4)"

use tree_cycles::rewrite::Reducer;
use tree_cycles::{decompose, parse_tree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(((1,2),3),4)".into());
    let tree = parse_tree(&text)?;

    let mut reducer = Reducer::new().with_trace();
    let sum = reducer.reduce(&tree)?;
    for step in reducer.trace() {
        let [t, a, b] = &step.triple;
        println!("rotate {t} at node {}: {a} , {b}", step.at.index());
    }
    println!("{} rotations", reducer.steps());

    for (t, c) in sum.terms() {
        println!("{c:+} [{t}]");
    }
    let by_rewrite = sum.to_decomposition();
    let by_det = decompose(&tree);
    for (k, c) in by_det.terms() {
        println!("k={k}: det {c:+}, rewrite {:+}", by_rewrite.coefficient(k));
    }
    println!("agree: {}", by_rewrite == by_det);
    Ok(())
}
