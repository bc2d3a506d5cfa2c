//! Determinant pairings between the top cohomology basis `W_k` and tree
//! cycles, the balanced tree `T_k` attached to each `k`, and the
//! decomposition of an arbitrary tree's cycle in the balanced basis.
//!
//! Sign conventions: the cycle of a tree is taken with its canonical node
//! ordering; the basis element `B_k` is the cycle of `T_k` taken with the
//! order in which its nodes are produced by [`construction_ordering`]
//! (`xi_1` = root, ..., `xi_{g-2}` = first merge). Relative to `B_k`, the
//! canonically ordered cycle of `T_k` is `epsilon_k * B_k`, with
//! `epsilon_k = ` [`construction_sign`]`(k)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arnold::CohomologyClass;
use crate::kseq::{k_sequences, KSequence, KSequenceError};
use crate::leafset::LeafSet;
use crate::matrix::{IncidenceMatrix, IntMatrix};
use crate::tree::{ordering_sign, Tree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("k-sequence {k} belongs to genus {k_genus}, tree has genus {tree_genus}")]
    GenusMismatch {
        k: KSequence,
        k_genus: usize,
        tree_genus: usize,
    },
    #[error("tree {0} is not balanced")]
    NotBalanced(String),
    #[error("an ordering of {got} nodes was given for a matrix of size {expected}")]
    OrderingLength { expected: usize, got: usize },
    #[error("class must be homogeneous of degree {expected}, got {got:?}")]
    Degree { expected: usize, got: Option<usize> },
    #[error("class lives on {got} strands, tree needs {expected}")]
    Strands { expected: usize, got: usize },
    #[error(transparent)]
    KSequence(#[from] KSequenceError),
}

/// Which ordering of the internal nodes of `T_k` indexes the columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeOrdering {
    Canonical,
    Construction,
}

/// `(-1)^binom(g-2, 2)`.
pub fn global_sign(g: usize) -> i64 {
    let m = g.saturating_sub(2);
    if (m * m.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Node sets of `T_k` in construction order. Working from `i = g-2` down to
/// 1, the cluster represented by `k_i` is joined with the cluster
/// represented by `i+1`, and the union, represented by `k_i`, becomes `xi_i`.
pub fn construction_ordering(k: &KSequence) -> Vec<LeafSet> {
    let leaves = k.len() + 1;
    let mut clusters: Vec<LeafSet> = (0..=leaves)
        .map(|l| {
            if l == 0 {
                LeafSet::empty()
            } else {
                LeafSet::singleton(l)
            }
        })
        .collect();
    let mut ordering = vec![LeafSet::empty(); k.len()];
    for i in (1..=k.len()).rev() {
        let rep = k.get(i);
        debug_assert!(rep < i + 1);
        let merged = clusters[rep].union(clusters[i + 1]);
        ordering[i - 1] = merged;
        clusters[rep] = merged;
    }
    ordering
}

pub fn build_balanced_tree(k: &KSequence) -> Tree {
    Tree::from_family(k.len() + 1, construction_ordering(k))
        .expect("construction always yields a valid tree")
}

/// `epsilon_k`: sign of the permutation between the construction and the
/// canonical node orderings of `T_k`.
pub fn construction_sign(k: &KSequence) -> i64 {
    let construction = construction_ordering(k);
    let tree = build_balanced_tree(k);
    ordering_sign(&construction, tree.nodes()).expect("same node sets")
}

/// Inverse of [`build_balanced_tree`]. Peels leaves from the largest label
/// down: in a balanced tree the largest leaf `m` always sits in a cherry
/// `{x, m}`, and then `k_{m-1} = x`.
pub fn balanced_tree_to_k(tree: &Tree) -> Result<KSequence, DecompositionError> {
    let not_balanced = || DecompositionError::NotBalanced(tree.render());
    if !tree.is_balanced() {
        return Err(not_balanced());
    }
    let mut family: Vec<LeafSet> = tree.nodes().to_vec();
    let mut entries = vec![0usize; tree.node_count()];
    for m in (2..=tree.leaves()).rev() {
        let parent = family
            .iter()
            .filter(|s| s.contains(m))
            .min_by_key(|s| s.len())
            .copied()
            .ok_or_else(not_balanced)?;
        if parent.len() != 2 {
            return Err(not_balanced());
        }
        entries[m - 2] = parent.min_label().ok_or_else(not_balanced)?;
        family.retain(|s| *s != parent);
        for s in &mut family {
            s.remove(m);
        }
    }
    Ok(KSequence::new(entries)?)
}

fn check_genus(k: &KSequence, tree: &Tree) -> Result<(), DecompositionError> {
    if k.genus() != tree.genus() {
        return Err(DecompositionError::GenusMismatch {
            k: k.clone(),
            k_genus: k.genus(),
            tree_genus: tree.genus(),
        });
    }
    Ok(())
}

/// Entry `(i, j)` is 1 when both `k_i` and `i+1` lie in the `j`-th set of
/// `ordering`.
pub fn incidence_matrix_ordered(
    k: &KSequence,
    ordering: &[LeafSet],
) -> Result<IncidenceMatrix, DecompositionError> {
    if ordering.len() != k.len() {
        return Err(DecompositionError::OrderingLength {
            expected: k.len(),
            got: ordering.len(),
        });
    }
    let mut m = IntMatrix::zeros(k.len());
    for i in 1..=k.len() {
        let (a, b) = (k.get(i), i + 1);
        for (j, set) in ordering.iter().enumerate() {
            if set.contains(a) && set.contains(b) {
                m.set(i - 1, j, 1);
            }
        }
    }
    Ok(m)
}

/// Incidence matrix with the tree's canonical node ordering.
pub fn incidence_matrix(k: &KSequence, tree: &Tree) -> Result<IncidenceMatrix, DecompositionError> {
    check_genus(k, tree)?;
    incidence_matrix_ordered(k, tree.nodes())
}

/// `<W_k, A_T> = (-1)^binom(g-2,2) det X_{k,T}`.
pub fn pair(k: &KSequence, tree: &Tree) -> Result<i64, DecompositionError> {
    Ok(global_sign(tree.genus()) * incidence_matrix(k, tree)?.det())
}

/// Pair a top-degree class with a tree cycle, linearly in the class.
pub fn pair_class(class: &CohomologyClass, tree: &Tree) -> Result<BigInt, DecompositionError> {
    let strands = tree.leaves();
    if class.strands() != strands {
        return Err(DecompositionError::Strands {
            expected: strands,
            got: class.strands(),
        });
    }
    let top = tree.node_count();
    if !class.is_zero() && class.degree() != Some(top) {
        return Err(DecompositionError::Degree {
            expected: top,
            got: class.degree(),
        });
    }
    let mut total = BigInt::from(0);
    for (monomial, coeff) in class.terms() {
        // Stored monomials are admissible, and in top degree those are the W_k.
        let k = monomial
            .as_k_sequence()
            .expect("top-degree admissible monomial is some W_k");
        total += coeff * pair(&k, tree)?;
    }
    Ok(total)
}

/// Coordinates of a tree cycle in the basis `{B_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    genus: usize,
    terms: BTreeMap<KSequence, i64>,
}

impl CycleDecomposition {
    pub fn new(genus: usize) -> Self {
        CycleDecomposition {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn add(&mut self, k: KSequence, coeff: i64) {
        let entry = self.terms.entry(k.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn coefficient(&self, k: &KSequence) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    /// Nonzero coefficients, sorted by `k`.
    pub fn terms(&self) -> impl Iterator<Item = (&KSequence, i64)> {
        self.terms.iter().map(|(k, c)| (k, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `{"g": .., "basis": "balanced-construction", "terms": [{"k": [..], "coeff": ..}]}`
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| json!({ "k": k.to_json(), "coeff": c }))
            .collect();
        json!({ "g": self.genus, "basis": "balanced-construction", "terms": terms })
    }
}

/// `k -> det X_{k,T}` over all `k`, zeros dropped.
pub fn decompose(tree: &Tree) -> CycleDecomposition {
    let g = tree.genus();
    let mut out = CycleDecomposition::new(g);
    for k in k_sequences(g).expect("trees have genus at least 3") {
        let det = incidence_matrix_ordered(&k, tree.nodes())
            .expect("lengths agree")
            .det();
        out.add(k, det);
    }
    out
}

/// `det X_{k', T_k}` for all pairs, rows indexed by `k'` and columns by `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityTable {
    pub ks: Vec<KSequence>,
    pub entries: Vec<Vec<i64>>,
}

impl DualityTable {
    /// Diagonal with every diagonal entry equal to `±1`.
    pub fn is_signed_diagonal(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, &v)| if r == c { v.abs() == 1 } else { v == 0 })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(r, row)| row.iter().enumerate().all(|(c, &v)| v == i64::from(r == c)))
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.entries.len())
            .map(|i| self.entries[i][i])
            .collect()
    }
}

pub fn duality_table(g: usize, ordering: NodeOrdering) -> Result<DualityTable, DecompositionError> {
    let ks = k_sequences(g)?;
    let columns: Vec<Vec<LeafSet>> = ks
        .iter()
        .map(|k| match ordering {
            NodeOrdering::Canonical => build_balanced_tree(k).nodes().to_vec(),
            NodeOrdering::Construction => construction_ordering(k),
        })
        .collect();
    let entries = ks
        .iter()
        .map(|row_k| {
            columns
                .iter()
                .map(|cols| {
                    incidence_matrix_ordered(row_k, cols)
                        .expect("lengths agree")
                        .det()
                })
                .collect()
        })
        .collect();
    Ok(DualityTable { ks, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn k(v: &[usize]) -> KSequence {
        KSequence::new(v.to_vec()).unwrap()
    }

    fn t(s: &str) -> Tree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_balanced_tree(&k(&[1])).render(), "(1,2)");
        assert_eq!(build_balanced_tree(&k(&[1, 1])).render(), "((1,3),2)");
        assert_eq!(build_balanced_tree(&k(&[1, 2])).render(), "((2,3),1)");
        assert_eq!(
            construction_ordering(&k(&[1, 1])),
            t("((1,3),2)").nodes().to_vec()
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(balanced_tree_to_k(&t("((1,3),2)")).unwrap(), k(&[1, 1]));
        assert_eq!(balanced_tree_to_k(&t("((2,3),1)")).unwrap(), k(&[1, 2]));
        assert!(matches!(
            balanced_tree_to_k(&t("((1,2),3)")),
            Err(DecompositionError::NotBalanced(_))
        ));
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(
            incidence_matrix(&k(&[1]), &t("(1,2)")).unwrap().rows(),
            vec![vec![1]]
        );
        assert_eq!(
            incidence_matrix(&k(&[1, 1]), &t("((1,2),3)"))
                .unwrap()
                .rows(),
            vec![vec![1, 1], vec![1, 0]]
        );
        assert_eq!(
            incidence_matrix(&k(&[1, 2]), &t("((2,3),1)"))
                .unwrap()
                .rows(),
            vec![vec![1, 0], vec![1, 1]]
        );
        assert!(matches!(
            incidence_matrix(&k(&[1, 2]), &t("(1,2)")),
            Err(DecompositionError::GenusMismatch { .. })
        ));
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(&k(&[1]), &t("(1,2)")).unwrap(), 1);
        assert_eq!(pair(&k(&[1, 1]), &t("((1,3),2)")).unwrap(), -1);
        assert_eq!(pair(&k(&[1, 2]), &t("((1,3),2)")).unwrap(), 0);
    }

    #[test]
    fn global_sign_values() {
        let signs: Vec<i64> = (3..=8).map(global_sign).collect();
        // binom(g-2, 2) = 0, 1, 3, 6, 10, 15
        assert_eq!(signs, vec![1, -1, -1, 1, 1, -1]);
    }

    #[test]
    fn pair_class_examples() {
        let w11 = CohomologyClass::w_basis(&k(&[1, 1]));
        let w12 = CohomologyClass::w_basis(&k(&[1, 2]));
        assert_eq!(pair_class(&w11, &t("((1,3),2)")).unwrap(), BigInt::from(-1));
        assert_eq!(
            pair_class(&CohomologyClass::zero(3), &t("((1,2),3)")).unwrap(),
            BigInt::from(0)
        );
        let tree = t("((1,2),3)");
        let sum = w11.checked_add(&w12).unwrap();
        let separate = pair(&k(&[1, 1]), &tree).unwrap() + pair(&k(&[1, 2]), &tree).unwrap();
        assert_eq!(pair_class(&sum, &tree).unwrap(), BigInt::from(separate));
        assert!(matches!(
            pair_class(&CohomologyClass::one(3), &tree),
            Err(DecompositionError::Degree { .. })
        ));
        assert!(matches!(
            pair_class(&CohomologyClass::zero(4), &tree),
            Err(DecompositionError::Strands { .. })
        ));
    }

    #[test]
    fn pair_class_straightens_non_basis_products() {
        // w(1,3) w(2,3) = w(1,2) w(2,3) - w(1,2) w(1,3) = W_(1,2) - W_(1,1)
        let c = crate::arnold::parse_expression("w(1,3)*w(2,3)", 3).unwrap();
        let tree = t("((1,2),3)");
        let expected = pair(&k(&[1, 2]), &tree).unwrap() - pair(&k(&[1, 1]), &tree).unwrap();
        assert_eq!(pair_class(&c, &tree).unwrap(), BigInt::from(expected));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&t("(1,2)"));
        assert_eq!(d.terms().collect::<Vec<_>>(), vec![(&k(&[1]), 1)]);
        let d = decompose(&t("((1,3),2)"));
        assert_eq!(d.terms().collect::<Vec<_>>(), vec![(&k(&[1, 1]), 1)]);
        let d = decompose(&t("((1,2),3)"));
        assert_eq!(
            d.terms().collect::<Vec<_>>(),
            vec![(&k(&[1, 1]), -1), (&k(&[1, 2]), -1)]
        );
    }

    #[test]
    fn duality_small_genera() {
        let g3 = duality_table(3, NodeOrdering::Canonical).unwrap();
        assert_eq!(g3.entries, vec![vec![1]]);
        let g4 = duality_table(4, NodeOrdering::Canonical).unwrap();
        assert_eq!(g4.entries, vec![vec![1, 0], vec![0, 1]]);
        assert!(duality_table(2, NodeOrdering::Canonical).is_err());
    }

    #[test]
    fn decomposition_json_shape() {
        let json = decompose(&t("((1,2),3)")).to_json();
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"{"basis":"balanced-construction","g":4,"terms":[{"coeff":-1,"k":[1,1]},{"coeff":-1,"k":[1,2]}]}"#
        );
    }
}
