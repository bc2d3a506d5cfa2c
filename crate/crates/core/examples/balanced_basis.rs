//! The balanced trees T_k, their construction orderings, and the duality table.
//!
//! cargo run --example balanced_basis -- 5

use tree_cycles::decomposition::{
    build_balanced_tree, construction_ordering, construction_sign, duality_table,
    incidence_matrix_ordered, NodeOrdering,
};
use tree_cycles::k_sequences;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(5);

    for k in k_sequences(g)? {
        let tree = build_balanced_tree(&k);
        let ordering: Vec<String> = construction_ordering(&k)
            .iter()
            .map(|s| s.to_string())
            .collect();
        let x = incidence_matrix_ordered(&k, &construction_ordering(&k))?;
        println!(
            "k={k:<10} T_k={tree:<22} eps={:+} order=[{}] unitriangular={}",
            construction_sign(&k),
            ordering.join(" "),
            x.is_lower_unitriangular()
        );
    }

    let canonical = duality_table(g, NodeOrdering::Canonical)?;
    let construction = duality_table(g, NodeOrdering::Construction)?;
    println!(
        "canonical table signed diagonal: {}",
        canonical.is_signed_diagonal()
    );
    println!(
        "construction table is identity: {}",
        construction.is_identity()
    );
    println!("diagonal signs: {:?}", canonical.diagonal());
    Ok(())
}
