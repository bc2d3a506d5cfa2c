//! Runnable certificates: each suite checks one family of identities
//! exhaustively (or on a seeded sample) and reports counterexamples.
//!
//! Sampling uses `ChaCha8Rng::seed_from_u64(seed)`, so a report is a pure
//! function of `(suite, param, sample, seed)` apart from its timing field.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arnold::{basis, rank, straighten, CohomologyClass, Generator};
use crate::decomposition::{
    build_balanced_tree, construction_ordering, construction_sign, decompose, duality_table,
    incidence_matrix_ordered, NodeOrdering,
};
use crate::rewrite::{
    determinant_vectors, is_cyclic_triple, rotation_triple, verify_cyclic_determinant_identity,
    OrderedTree, Reducer,
};
use crate::tree::{enumerate_balanced, enumerate_trees, random_tree, NodeRef, Tree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown suite '{0}' (expected one of counts, duality, relations, crosspath, arnold)")]
    UnknownSuite(String),
    #[error("suite {suite} accepts {min}..={max}, got {value}")]
    OutOfRange {
        suite: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub param: usize,
    pub cases: usize,
    pub failures: Vec<Value>,
    pub millis: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Upper limits for each suite's parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ceilings {
    pub counts: usize,
    pub duality: usize,
    pub relations: usize,
    pub crosspath: usize,
    pub arnold: usize,
    /// Relations are checked on every tree and node up to this genus, and
    /// on a sample above it.
    pub exhaustive_relations: usize,
}

impl Default for Ceilings {
    fn default() -> Self {
        Ceilings {
            counts: 8,
            duality: 7,
            relations: 9,
            crosspath: 8,
            arnold: 6,
            exhaustive_relations: 5,
        }
    }
}

fn check_range(
    suite: &'static str,
    value: usize,
    min: usize,
    max: usize,
) -> Result<(), VerifyError> {
    if value < min || value > max {
        return Err(VerifyError::OutOfRange {
            suite,
            value,
            min,
            max,
        });
    }
    Ok(())
}

fn finish(
    suite: &str,
    param: usize,
    cases: usize,
    failures: Vec<Value>,
    start: Instant,
) -> SuiteReport {
    SuiteReport {
        suite: suite.to_string(),
        param,
        cases,
        failures,
        millis: start.elapsed().as_millis() as u64,
    }
}

pub fn double_factorial_odd(g: usize) -> u64 {
    // (2g-5)!! = 1 * 3 * ... * (2g-5)
    (1..=g.saturating_sub(3))
        .map(|i| 2 * i as u64 + 1)
        .product()
}

pub fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// Counts of all trees and of balanced trees, and agreement of the
/// balanced enumeration with filtering the full one.
pub fn verify_counts(g: usize, ceilings: &Ceilings) -> Result<SuiteReport, VerifyError> {
    check_range("counts", g, 3, ceilings.counts)?;
    let start = Instant::now();
    let trees = enumerate_trees(g).expect("genus checked");
    let balanced = enumerate_balanced(g).expect("genus checked");
    let filtered: Vec<Tree> = trees.iter().filter(|t| t.is_balanced()).cloned().collect();
    let mut failures = Vec::new();
    let checks = [
        ("trees", double_factorial_odd(g), trees.len() as u64),
        ("balanced", factorial(g - 2), balanced.len() as u64),
        (
            "balanced-filter",
            balanced.len() as u64,
            filtered.len() as u64,
        ),
    ];
    for (check, expected, got) in checks {
        if expected != got {
            failures.push(json!({ "check": check, "g": g, "expected": expected, "got": got }));
        }
    }
    if filtered != balanced {
        failures.push(json!({
            "check": "balanced-set",
            "g": g,
            "constructed": balanced.iter().map(Tree::render).collect::<Vec<_>>(),
            "filtered": filtered.iter().map(Tree::render).collect::<Vec<_>>(),
        }));
    }
    Ok(finish("counts", g, checks.len() + 1, failures, start))
}

/// The pairing table between `W_{k'}` and balanced trees `T_k`: signed
/// diagonal under canonical orderings with `epsilon_k` on the diagonal, the
/// identity under construction orderings, and every construction-ordered
/// `X_{k,T_k}` lower unitriangular.
pub fn verify_duality(g: usize, ceilings: &Ceilings) -> Result<SuiteReport, VerifyError> {
    check_range("duality", g, 3, ceilings.duality)?;
    let start = Instant::now();
    let canonical = duality_table(g, NodeOrdering::Canonical).expect("genus checked");
    let construction = duality_table(g, NodeOrdering::Construction).expect("genus checked");
    let ks = &canonical.ks;
    let mut failures = Vec::new();
    for (col, k) in ks.iter().enumerate() {
        let tree = build_balanced_tree(k);
        let eps = construction_sign(k);
        let x = incidence_matrix_ordered(k, &construction_ordering(k)).expect("lengths agree");
        if !x.is_lower_unitriangular() {
            failures.push(json!({
                "check": "lower-unitriangular",
                "k": k.to_json(),
                "tree": tree.render(),
                "matrix": x.to_json(),
            }));
        }
        for (row, k_row) in ks.iter().enumerate() {
            let expected_canonical = if row == col { eps } else { 0 };
            let expected_construction = i64::from(row == col);
            let got_canonical = canonical.entries[row][col];
            let got_construction = construction.entries[row][col];
            if got_canonical != expected_canonical || got_construction != expected_construction {
                failures.push(json!({
                    "check": "duality",
                    "k_row": k_row.to_json(),
                    "k": k.to_json(),
                    "tree": tree.render(),
                    "canonical": got_canonical,
                    "construction": got_construction,
                    "epsilon": eps,
                }));
            }
        }
    }
    Ok(finish("duality", g, ks.len() * ks.len(), failures, start))
}

struct RelationCase {
    ordered: OrderedTree,
    node: NodeRef,
}

fn eligible_nodes(tree: &Tree) -> Vec<NodeRef> {
    tree.nodes()
        .iter()
        .enumerate()
        .filter(|(_, set)| tree.children_of(**set).iter().any(|c| c.len() >= 2))
        .map(|(i, _)| NodeRef(i + 1))
        .collect()
}

fn check_relation(case: &RelationCase) -> Option<Value> {
    let tree = case.ordered.tree();
    let witness = |msg: &str| {
        json!({
            "check": msg,
            "tree": tree.render(),
            "ordering": case.ordered.ordering().iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
            "at": case.node.index(),
        })
    };
    let triple = match rotation_triple(&case.ordered, case.node) {
        Ok(triple) => triple,
        Err(e) => {
            let mut w = witness("rotation");
            w["error"] = Value::from(e.to_string());
            return Some(w);
        }
    };
    let [a, b, c] = &triple.trees;
    match is_cyclic_triple(a.tree(), b.tree(), c.tree()) {
        Ok(Some(detected)) if verify_cyclic_determinant_identity(&detected) => {}
        _ => {
            let mut w = witness("pattern");
            w["triple"] = triple.to_json();
            return Some(w);
        }
    }
    if !verify_cyclic_determinant_identity(&triple) {
        let mut w = witness("determinant-identity");
        w["triple"] = triple.to_json();
        w["determinants"] = Value::from(determinant_vectors(&triple).to_vec());
        return Some(w);
    }
    None
}

/// Every rotation triple matches the cyclic pattern and its aligned
/// determinants cancel for every `k`. Exhaustive (canonical orderings) up to
/// the exhaustive ceiling; above it, `sample` random trees, nodes and base
/// orderings.
pub fn verify_relations(
    g: usize,
    sample: usize,
    seed: u64,
    ceilings: &Ceilings,
) -> Result<SuiteReport, VerifyError> {
    check_range("relations", g, 3, ceilings.relations)?;
    let start = Instant::now();
    let cases: Vec<RelationCase> = if g <= ceilings.exhaustive_relations {
        enumerate_trees(g)
            .expect("genus checked")
            .into_iter()
            .flat_map(|tree| {
                let nodes = eligible_nodes(&tree);
                let ordered = OrderedTree::canonical(tree);
                nodes.into_iter().map(move |node| RelationCase {
                    ordered: ordered.clone(),
                    node,
                })
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..sample)
            .map(|_| {
                let tree = random_tree(g, &mut rng).expect("genus checked");
                let nodes = eligible_nodes(&tree);
                let node = nodes[rng.gen_range(0..nodes.len())];
                let mut ordering = tree.nodes().to_vec();
                ordering.shuffle(&mut rng);
                let ordered = OrderedTree::new(tree, ordering).expect("permuted nodes");
                RelationCase { ordered, node }
            })
            .collect()
    };
    let failures: Vec<Value> = cases.par_iter().filter_map(check_relation).collect();
    Ok(finish("relations", g, cases.len(), failures, start))
}

/// For every tree, the determinant decomposition equals the cyclic-triple
/// reduction converted to `k`-coordinates.
pub fn verify_crosspath(g: usize, ceilings: &Ceilings) -> Result<SuiteReport, VerifyError> {
    check_range("crosspath", g, 3, ceilings.crosspath)?;
    let start = Instant::now();
    let trees = enumerate_trees(g).expect("genus checked");
    let failures: Vec<Value> = trees
        .par_iter()
        .map_init(Reducer::new, |reducer, tree| {
            let by_det = decompose(tree);
            match reducer.reduce(tree) {
                Ok(sum) if sum.to_decomposition() == by_det => None,
                Ok(sum) => Some(json!({
                    "tree": tree.render(),
                    "det": by_det.to_json(),
                    "rewrite": sum.to_decomposition().to_json(),
                    "balanced": sum.to_json(),
                })),
                Err(e) => Some(json!({ "tree": tree.render(), "error": e.to_string() })),
            }
        })
        .flatten()
        .collect();
    Ok(finish("crosspath", g, trees.len(), failures, start))
}

/// Coefficients of `prod_{i=1}^{n-1} (1 + i t)`.
pub fn poincare_coefficients(n: usize) -> Vec<u128> {
    let mut coeffs = vec![1u128];
    for i in 1..n {
        let mut next = vec![0u128; coeffs.len() + 1];
        for (p, c) in coeffs.iter().enumerate() {
            next[p] += c;
            next[p + 1] += c * i as u128;
        }
        coeffs = next;
    }
    coeffs
}

fn generators(n: usize) -> Vec<Generator> {
    (1..=n)
        .flat_map(|j| (1..j).map(move |i| Generator::new(i, j).expect("i < j")))
        .collect()
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Ranks against the Poincaré polynomial, vanishing of every Arnold
/// relation (bare and multiplied by each generator), and `sample` seeded
/// checks that permuting factors only changes the sign.
pub fn verify_arnold(
    n: usize,
    sample: usize,
    seed: u64,
    ceilings: &Ceilings,
) -> Result<SuiteReport, VerifyError> {
    check_range("arnold", n, 2, ceilings.arnold)?;
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;

    let poincare = poincare_coefficients(n);
    for p in 0..=n {
        cases += 1;
        let expected = poincare.get(p).copied().unwrap_or(0);
        let enumerated = basis(n, p).len() as u128;
        let counted = rank(n, p);
        if enumerated != expected || counted != expected {
            failures.push(json!({
                "check": "rank", "n": n, "p": p,
                "expected": expected.to_string(),
                "basis": enumerated.to_string(),
                "rank": counted.to_string(),
            }));
        }
    }

    let gens = generators(n);
    let mut shifts: Vec<Option<Generator>> = vec![None];
    shifts.extend(gens.iter().copied().map(Some));
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let w = |i, j| Generator::new(i, j).expect("distinct");
                let products = [[w(a, b), w(b, c)], [w(b, c), w(c, a)], [w(c, a), w(a, b)]];
                for shift in &shifts {
                    cases += 1;
                    let mut total = CohomologyClass::zero(n);
                    for pair in &products {
                        let mut word = pair.to_vec();
                        word.extend(shift.iter().copied());
                        let term = straighten(n, &word).expect("indices in range");
                        total = total.checked_add(&term).expect("same n");
                    }
                    if !total.is_zero() {
                        failures.push(json!({
                            "check": "relation", "n": n, "triple": [a, b, c],
                            "shift": shift.map(|g| g.to_string()),
                            "result": total.to_string(),
                        }));
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(Vec<Generator>, Vec<usize>)> = (0..sample)
        .map(|_| {
            let p = rng.gen_range(1..=4usize);
            let word: Vec<Generator> = (0..p).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
            let mut perm: Vec<usize> = (0..p).collect();
            perm.shuffle(&mut rng);
            (word, perm)
        })
        .collect();
    cases += samples.len();
    let confluence: Vec<Value> = samples
        .par_iter()
        .filter_map(|(word, perm)| {
            let permuted: Vec<Generator> = perm.iter().map(|&i| word[i]).collect();
            let base = straighten(n, word).expect("in range");
            let moved = straighten(n, &permuted).expect("in range");
            let sign = permutation_sign(perm);
            let expected = base.scale(&sign.into());
            (moved != expected).then(|| {
                json!({
                    "check": "confluence", "n": n,
                    "word": word.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "permutation": perm,
                    "expected": expected.to_string(),
                    "got": moved.to_string(),
                })
            })
        })
        .collect();
    failures.extend(confluence);
    Ok(finish("arnold", n, cases, failures, start))
}

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 5] = ["counts", "duality", "relations", "crosspath", "arnold"];

/// Dispatch by suite name; `param` is the genus, or the strand count for
/// `arnold`.
pub fn run_suite(
    name: &str,
    param: usize,
    sample: usize,
    seed: u64,
    ceilings: &Ceilings,
) -> Result<SuiteReport, VerifyError> {
    match name {
        "counts" => verify_counts(param, ceilings),
        "duality" => verify_duality(param, ceilings),
        "relations" => verify_relations(param, sample, seed, ceilings),
        "crosspath" => verify_crosspath(param, ceilings),
        "arnold" => verify_arnold(param, sample, seed, ceilings),
        other => Err(VerifyError::UnknownSuite(other.to_string())),
    }
}
