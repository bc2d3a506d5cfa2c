//! One line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use serde_json::Value;
use tree_cycles::verify::{
    verify_arnold, verify_counts, verify_crosspath, verify_duality, verify_relations, Ceilings,
    SuiteReport,
};
use tree_cycles::{decompose, enumerate_balanced, enumerate_trees, pair, parse_tree, KSequence};

const SEED: u64 = 20240229;

type Criterion<'a> = (&'static str, u64, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn suites(reports: Vec<SuiteReport>) -> Outcome {
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            format!(
                "{}@{}: {}",
                r.suite,
                r.param,
                Value::from(r.failures.clone())
            )
        })
        .collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{cases} cases")
        } else {
            failed.join("; ")
        },
    }
}

fn counts(c: &Ceilings) -> Outcome {
    let all: Vec<usize> = (3..=8).map(|g| enumerate_trees(g).unwrap().len()).collect();
    let balanced: Vec<usize> = (3..=8)
        .map(|g| enumerate_balanced(g).unwrap().len())
        .collect();
    let mut out = suites((3..=8).map(|g| verify_counts(g, c).unwrap()).collect());
    if all != [1, 3, 15, 105, 945, 10395] || balanced != [1, 2, 6, 24, 120, 720] {
        out.passed = false;
        out.detail = format!("trees {all:?}, balanced {balanced:?}");
    }
    out
}

fn duality(c: &Ceilings) -> Outcome {
    suites((3..=7).map(|g| verify_duality(g, c).unwrap()).collect())
}

fn relations(c: &Ceilings) -> Outcome {
    let mut reports: Vec<SuiteReport> = (3..=5)
        .map(|g| verify_relations(g, 0, SEED, c).unwrap())
        .collect();
    reports.push(verify_relations(6, 10_000, SEED, c).unwrap());
    reports.push(verify_relations(7, 10_000, SEED, c).unwrap());
    let mut out = suites(reports);
    out.detail += " (exhaustive g<=5, 10000 sampled at g=6,7)";
    out
}

fn crosspath(c: &Ceilings) -> Outcome {
    let reports: Vec<SuiteReport> = (3..=6).map(|g| verify_crosspath(g, c).unwrap()).collect();
    let trees: usize = reports.iter().map(|r| r.cases).sum();
    let mut out = suites(reports);
    if trees != 124 {
        out.passed = false;
        out.detail = format!("covered {trees} trees, expected 124");
    }
    out
}

fn arnold(c: &Ceilings) -> Outcome {
    suites(
        (2..=6)
            .map(|n| verify_arnold(n, 1000, SEED, c).unwrap())
            .collect(),
    )
}

/// The small worked values, checked three ways: golden file, library, and
/// the permutation-expansion oracle.
fn ledger() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/g4_ledger.json");
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let mut problems = Vec::new();
    let mut checked = 0;

    for entry in golden["decompose"].as_array().unwrap() {
        let text = entry["tree"].as_str().unwrap();
        let want: Vec<(Vec<usize>, i64)> = entry["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                (
                    serde_json::from_value(t["k"].clone()).unwrap(),
                    t["coeff"].as_i64().unwrap(),
                )
            })
            .collect();
        let library: Vec<(Vec<usize>, i64)> = decompose(&parse_tree(text).unwrap())
            .terms()
            .map(|(k, c)| (k.entries().to_vec(), c))
            .collect();
        let oracle: Vec<(Vec<usize>, i64)> = common::decompose(text).into_iter().collect();
        if library != want || oracle != want {
            problems.push(format!(
                "decompose {text}: golden {want:?} library {library:?} oracle {oracle:?}"
            ));
        }
        checked += 1;
    }
    for entry in golden["pair"].as_array().unwrap() {
        let text = entry["tree"].as_str().unwrap();
        let k: Vec<usize> = serde_json::from_value(entry["k"].clone()).unwrap();
        let want = entry["value"].as_i64().unwrap();
        let library = pair(
            &KSequence::new(k.clone()).unwrap(),
            &parse_tree(text).unwrap(),
        )
        .unwrap();
        let oracle = common::pair(&k, text);
        if library != want || oracle != want {
            problems.push(format!(
                "pair {k:?} {text}: golden {want} library {library} oracle {oracle}"
            ));
        }
        checked += 1;
    }
    Outcome {
        passed: problems.is_empty() && checked == 3,
        detail: if problems.is_empty() {
            format!("{checked} values")
        } else {
            problems.join("; ")
        },
    }
}

fn main() {
    let ceilings = Ceilings::default();
    let criteria: [Criterion; 6] = [
        ("tree counts g=3..8", 30, Box::new(|| counts(&ceilings))),
        ("duality tables g=3..7", 10, Box::new(|| duality(&ceilings))),
        (
            "cyclic-triple relations",
            60,
            Box::new(|| relations(&ceilings)),
        ),
        (
            "determinant vs rewrite, 124 trees",
            60,
            Box::new(|| crosspath(&ceilings)),
        ),
        ("Arnold ring n=2..6", 30, Box::new(|| arnold(&ceilings))),
        ("worked g=4 values", 5, Box::new(ledger)),
    ];
    let mut all_passed = true;
    for (i, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*bound);
        let passed = outcome.passed && in_time;
        all_passed &= passed;
        println!(
            "criterion {}: {} {name} [{:.2}s, limit {bound}s] {}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail,
        );
    }
    if !all_passed {
        std::process::exit(1);
    }
}
