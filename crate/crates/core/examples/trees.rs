//! Enumerate trees, inspect balance, and round-trip the text form.
//!
//! cargo run --example trees -- 5

use tree_cycles::{enumerate_balanced, enumerate_trees, parse_tree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(5);

    let trees = enumerate_trees(g)?;
    let balanced = enumerate_balanced(g)?;
    println!("g={g}: {} trees, {} balanced", trees.len(), balanced.len());

    for tree in trees.iter().take(8) {
        let unbalanced: Vec<String> = tree
            .balance_report()
            .into_iter()
            .filter(|n| !n.balanced)
            .map(|n| format!("{}@depth{}", n.set, n.depth))
            .collect();
        println!(
            "  {tree:<20} unbalanced: {}",
            if unbalanced.is_empty() {
                "-".into()
            } else {
                unbalanced.join(" ")
            }
        );
    }

    // Any child order and spacing parses to the same canonical tree.
    let messy = parse_tree(" ( 3 , (2,1) ) ")?;
    println!("\"( 3 , (2,1) )\" -> {messy}");
    println!("{}", serde_json::to_string(&messy.to_json())?);
    Ok(())
}
