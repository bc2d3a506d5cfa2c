//! Run every verification suite over its default range.
//!
//! cargo run --release --example verify_all

use tree_cycles::verify::{run_suite, Ceilings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ceilings = Ceilings::default();
    let plan: [(&str, std::ops::RangeInclusive<usize>); 5] = [
        ("counts", 3..=8),
        ("duality", 3..=7),
        ("relations", 3..=7),
        ("crosspath", 3..=7),
        ("arnold", 2..=6),
    ];
    let mut failed = 0;
    for (suite, range) in plan {
        for param in range {
            let report = run_suite(suite, param, 2000, 1, &ceilings)?;
            failed += report.failures.len();
            println!(
                "{:<4} {suite:<10} {param:>2} {:>6} cases {:>6} ms",
                if report.passed() { "ok" } else { "FAIL" },
                report.cases,
                report.millis
            );
        }
    }
    if failed > 0 {
        eprintln!("{failed} failures");
        std::process::exit(2);
    }
    Ok(())
}
