//! Straighten products in the cohomology ring of the pure braid group.
//!
//! cargo run --example arnold_ring

use tree_cycles::arnold::{basis, parse_expression, rank};
use tree_cycles::{multiply, straighten, CohomologyClass, Generator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let ranks: Vec<u128> = (0..n).map(|p| rank(n, p)).collect();
    println!("n={n} ranks by degree: {ranks:?}");
    let top: Vec<String> = basis(n, n - 1).iter().map(|m| m.to_string()).collect();
    println!("top degree basis: {}", top.join(", "));

    let w = |i, j| Generator::new(i, j);
    println!("w(1,3)w(2,3) = {}", straighten(n, &[w(1, 3)?, w(2, 3)?])?);
    println!("w(2,3)w(1,3) = {}", straighten(n, &[w(2, 3)?, w(1, 3)?])?);
    println!("w(1,2)w(1,2) = {}", straighten(n, &[w(1, 2)?, w(1, 2)?])?);

    let relation = parse_expression("w(1,2)*w(2,3)+w(2,3)*w(1,3)+w(1,3)*w(1,2)", n)?;
    println!("Arnold relation = {relation}");

    let a = parse_expression("w(1,4) + w(2,4)", n)?;
    let b = CohomologyClass::generator(n, 3, 4)?;
    let ab = multiply(&a, &b)?;
    println!("({a}) * ({b}) = {ab}");
    println!("{}", serde_json::to_string(&ab.to_json())?);
    Ok(())
}
