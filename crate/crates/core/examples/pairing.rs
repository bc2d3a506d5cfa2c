//! Pair top-degree cohomology classes with tree cycles.
//!
//! cargo run --example pairing

use tree_cycles::arnold::parse_expression;
use tree_cycles::decomposition::{incidence_matrix, pair_class};
use tree_cycles::{k_sequences, pair, parse_tree, CohomologyClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = parse_tree("((1,3),2)")?;
    for k in k_sequences(tree.genus())? {
        let x = incidence_matrix(&k, &tree)?;
        println!(
            "k={k} X={:?} det={} pair={}",
            x.rows(),
            x.det(),
            pair(&k, &tree)?
        );
    }

    // Pairing is linear, and respects the Arnold relations.
    let w11 = CohomologyClass::w_basis(&"1,1".parse()?);
    let twisted = parse_expression("w(1,2)*w(1,3) + 3*w(1,3)*w(2,3)", 3)?;
    println!("<W_(1,1), T> = {}", pair_class(&w11, &tree)?);
    println!("<{twisted}, T> = {}", pair_class(&twisted, &tree)?);
    Ok(())
}
