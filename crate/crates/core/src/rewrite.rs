//! Cyclic-triple rewriting.
//!
//! Three trees form a cyclic triple when they are the three ways of
//! associating the same three hanging subtrees below a common node. Their
//! cycles, taken with aligned node orderings, sum to zero. Rotating at the
//! deepest unbalanced node and recursing expresses any tree's cycle as a
//! signed sum of balanced-tree cycles without computing a determinant.
//!
//! Alignment: the node whose descendant set changes under a rotation keeps
//! its position in the ordering, and every other node keeps its own.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::decomposition::{
    balanced_tree_to_k, construction_sign, incidence_matrix_ordered, CycleDecomposition,
};
use crate::kseq::k_sequences;
use crate::leafset::LeafSet;
use crate::tree::{ordering_sign, NodeRef, Tree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("trees have different genera: {0} and {1}")]
    GenusMismatch(usize, usize),
    #[error("node {node:?} of {tree} has two leaf children, no rotation exists")]
    NotEligible { tree: String, node: NodeRef },
    #[error("ordering is not a permutation of the node sets of {0}")]
    InvalidOrdering(String),
    #[error("reduction exceeded the step limit of {limit} rotations")]
    StepLimit { limit: u64 },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A tree together with an explicit order on its internal nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedTree {
    tree: Tree,
    ordering: Vec<LeafSet>,
}

impl OrderedTree {
    pub fn canonical(tree: Tree) -> Self {
        let ordering = tree.nodes().to_vec();
        OrderedTree { tree, ordering }
    }

    pub fn new(tree: Tree, ordering: Vec<LeafSet>) -> Result<Self, RewriteError> {
        if ordering_sign(tree.nodes(), &ordering).is_none() {
            return Err(RewriteError::InvalidOrdering(tree.render()));
        }
        Ok(OrderedTree { tree, ordering })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn ordering(&self) -> &[LeafSet] {
        &self.ordering
    }

    /// Sign relating this ordering to the canonical one: the cycle with this
    /// ordering equals the sign times the canonically ordered cycle.
    pub fn parity(&self) -> i64 {
        ordering_sign(self.tree.nodes(), &self.ordering).expect("validated ordering")
    }

    /// 1-based position of a node set in this ordering.
    pub fn position_of(&self, set: LeafSet) -> Option<usize> {
        self.ordering.iter().position(|s| *s == set).map(|p| p + 1)
    }
}

/// Witness that three ordered trees form a cyclic triple.
///
/// The orderings agree away from position `s`. At `s` the trees carry
/// `B2 ∪ B3`, `B3 ∪ B1` and `B1 ∪ B2`; position `t` carries `B1 ∪ B2 ∪ B3`
/// in all three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicTriple {
    pub trees: [OrderedTree; 3],
    pub blocks: [LeafSet; 3],
    pub s: usize,
    pub t: usize,
}

impl CyclicTriple {
    pub fn to_json(&self) -> Value {
        json!({
            "trees": self.trees.iter().map(|t| t.tree.render()).collect::<Vec<_>>(),
            "blocks": self.blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>(),
            "s": self.s,
            "t": self.t,
        })
    }
}

/// Check the cyclic-triple pattern on three trees and return a witness with
/// orderings aligned to the first tree's canonical ordering.
pub fn is_cyclic_triple(
    t1: &Tree,
    t2: &Tree,
    t3: &Tree,
) -> Result<Option<CyclicTriple>, RewriteError> {
    for other in [t2, t3] {
        if other.genus() != t1.genus() {
            return Err(RewriteError::GenusMismatch(t1.genus(), other.genus()));
        }
    }
    let trees = [t1, t2, t3];
    let in_all = |set: &LeafSet| trees.iter().all(|t| t.nodes().contains(set));
    let mut extras = [LeafSet::empty(); 3];
    for (slot, tree) in extras.iter_mut().zip(trees) {
        let own: Vec<LeafSet> = tree
            .nodes()
            .iter()
            .filter(|s| !in_all(s))
            .copied()
            .collect();
        if own.len() != 1 {
            return Ok(None);
        }
        *slot = own[0];
    }
    let union = extras[0].union(extras[1]).union(extras[2]);
    let blocks = extras.map(|s| union.difference(s));
    let disjoint = blocks[0].is_disjoint(blocks[1])
        && blocks[1].is_disjoint(blocks[2])
        && blocks[2].is_disjoint(blocks[0]);
    let pattern = blocks.iter().all(|b| !b.is_empty())
        && disjoint
        && blocks[0].union(blocks[1]).union(blocks[2]) == union
        && extras[0] == blocks[1].union(blocks[2])
        && extras[1] == blocks[2].union(blocks[0])
        && extras[2] == blocks[0].union(blocks[1])
        && in_all(&union);
    if !pattern {
        return Ok(None);
    }

    let base = t1.nodes().to_vec();
    let s = base.iter().position(|x| *x == extras[0]).expect("own set") + 1;
    let t = base.iter().position(|x| *x == union).expect("common set") + 1;
    let aligned = |tree: &Tree, extra: LeafSet| {
        let mut ordering = base.clone();
        ordering[s - 1] = extra;
        OrderedTree {
            tree: tree.clone(),
            ordering,
        }
    };
    Ok(Some(CyclicTriple {
        trees: [
            aligned(t1, extras[0]),
            aligned(t2, extras[1]),
            aligned(t3, extras[2]),
        ],
        blocks,
        s,
        t,
    }))
}

/// The subtrees around a rotation at `v`: `v1` is the child that gets split
/// into `u1`, `u2`, and `v2` is the other child.
struct Pivot {
    v: LeafSet,
    v1: LeafSet,
    u1: LeafSet,
    u2: LeafSet,
    v2: LeafSet,
}

fn pivot(tree: &Tree, node: NodeRef) -> Result<Pivot, RewriteError> {
    let v = tree.node(node)?;
    let [a, b] = tree.children_of(v);
    if a.len() < 2 && b.len() < 2 {
        return Err(RewriteError::NotEligible {
            tree: tree.render(),
            node,
        });
    }
    let (lo, hi) = v.two_smallest().expect("internal node has two leaves");
    let v1 = if a.contains(lo) && a.contains(hi) {
        a
    } else if b.contains(lo) && b.contains(hi) {
        b
    } else if a.len() >= 2 {
        a
    } else {
        b
    };
    let v2 = v.difference(v1);
    let [u1, u2] = tree.children_of(v1);
    Ok(Pivot { v, v1, u1, u2, v2 })
}

fn replace_set(ordered: &OrderedTree, old: LeafSet, new: LeafSet) -> OrderedTree {
    let ordering: Vec<LeafSet> = ordered
        .ordering
        .iter()
        .map(|s| if *s == old { new } else { *s })
        .collect();
    let tree = Tree::from_family(ordered.tree.leaves(), ordering.iter().copied())
        .expect("re-association keeps the family laminar");
    OrderedTree { tree, ordering }
}

/// Rotate an ordered tree at `node` (canonical position in its tree),
/// returning the two re-associated trees with inherited orderings.
pub fn rotate_ordered(
    ordered: &OrderedTree,
    node: NodeRef,
) -> Result<(OrderedTree, OrderedTree), RewriteError> {
    let p = pivot(&ordered.tree, node)?;
    debug_assert!(p.v1.union(p.v2) == p.v);
    Ok((
        replace_set(ordered, p.v1, p.u1.union(p.v2)),
        replace_set(ordered, p.v1, p.u2.union(p.v2)),
    ))
}

/// The two other associations of the three subtrees hanging below `node`:
/// `((u1,u2),v2)` becomes `((u1,v2),u2)` and `((v2,u2),u1)`.
pub fn rotate(tree: &Tree, node: NodeRef) -> Result<(Tree, Tree), RewriteError> {
    let (a, b) = rotate_ordered(&OrderedTree::canonical(tree.clone()), node)?;
    Ok((a.tree, b.tree))
}

/// The aligned cyclic triple formed by a tree and its two rotations at `node`.
pub fn rotation_triple(ordered: &OrderedTree, node: NodeRef) -> Result<CyclicTriple, RewriteError> {
    let p = pivot(&ordered.tree, node)?;
    let (first, second) = rotate_ordered(ordered, node)?;
    let s = ordered.position_of(p.v1).expect("v1 is a node");
    let t = ordered.position_of(p.v).expect("v is a node");
    Ok(CyclicTriple {
        trees: [ordered.clone(), first, second],
        blocks: [p.v2, p.u2, p.u1],
        s,
        t,
    })
}

/// Deepest unbalanced node, ties going to the smaller canonical position.
pub fn find_unbalanced(tree: &Tree) -> Option<NodeRef> {
    tree.balance_report()
        .into_iter()
        .filter(|n| !n.balanced)
        .max_by(|a, b| a.depth.cmp(&b.depth).then(b.node.cmp(&a.node)))
        .map(|n| n.node)
}

/// Per-`k` determinants of the three aligned incidence matrices.
pub fn determinant_vectors(triple: &CyclicTriple) -> [Vec<i64>; 3] {
    let g = triple.trees[0].tree.genus();
    let ks = k_sequences(g).expect("genus at least 3");
    triple.trees.clone().map(|ot| {
        ks.iter()
            .map(|k| {
                incidence_matrix_ordered(k, &ot.ordering)
                    .expect("lengths agree")
                    .det()
            })
            .collect()
    })
}

/// True when the three aligned determinants sum to zero for every `k`.
pub fn verify_cyclic_determinant_identity(triple: &CyclicTriple) -> bool {
    let [a, b, c] = determinant_vectors(triple);
    a.iter().zip(&b).zip(&c).all(|((x, y), z)| x + y + z == 0)
}

/// Integer combination of balanced trees, each standing for its
/// canonically ordered cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTreeSum {
    genus: usize,
    terms: BTreeMap<Tree, i64>,
}

impl SignedTreeSum {
    pub fn new(genus: usize) -> Self {
        SignedTreeSum {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn add(&mut self, tree: Tree, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(tree.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&tree);
        }
    }

    fn add_scaled(&mut self, other: &SignedTreeSum, factor: i64) {
        for (tree, coeff) in &other.terms {
            self.add(tree.clone(), coeff * factor);
        }
    }

    pub fn coefficient(&self, tree: &Tree) -> i64 {
        self.terms.get(tree).copied().unwrap_or(0)
    }

    /// Terms sorted by rendered tree.
    pub fn terms(&self) -> Vec<(&Tree, i64)> {
        let mut out: Vec<(String, &Tree, i64)> = self
            .terms
            .iter()
            .map(|(t, c)| (t.render(), t, *c))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter().map(|(_, t, c)| (t, c)).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coordinates in the construction-ordered basis `B_k`: the canonical
    /// cycle of `T_k` is `epsilon_k B_k`.
    pub fn to_decomposition(&self) -> CycleDecomposition {
        let mut out = CycleDecomposition::new(self.genus);
        for (tree, coeff) in &self.terms {
            let k = balanced_tree_to_k(tree).expect("reduction yields balanced trees");
            let eps = construction_sign(&k);
            out.add(k, coeff * eps);
        }
        out
    }

    /// `{"g": .., "terms": [{"tree": newick, "coeff": ..}]}`
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .into_iter()
            .map(|(t, c)| json!({ "tree": t.render(), "coeff": c }))
            .collect();
        json!({ "g": self.genus, "terms": terms })
    }
}

/// One rotation performed during a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub at: NodeRef,
    pub triple: [Tree; 3],
}

impl TraceStep {
    pub fn to_json(&self) -> Value {
        json!({
            "at": self.at.index(),
            "triple": self.triple.iter().map(Tree::render).collect::<Vec<_>>(),
        })
    }
}

/// Reduction to balanced trees, memoized by canonical tree.
///
/// Each rotation at the deepest unbalanced node `v` makes `v` balanced and
/// leaves all shallower nodes untouched, so the vector of unbalanced-node
/// counts indexed by depth (shallowest first) drops lexicographically. A
/// rotation budget of `3^g` per call guards against regressions.
#[derive(Debug, Default)]
pub struct Reducer {
    memo: HashMap<Tree, SignedTreeSum>,
    trace: Option<Vec<TraceStep>>,
    step_limit: Option<u64>,
    steps: u64,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record every rotation performed (memoized subtrees are not replayed).
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    /// Override the default `3^g` rotation budget.
    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.step_limit = Some(limit);
        self
    }

    pub fn trace(&self) -> &[TraceStep] {
        self.trace.as_deref().unwrap_or(&[])
    }

    /// Rotations performed by the last call to [`Reducer::reduce`].
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn reduce(&mut self, tree: &Tree) -> Result<SignedTreeSum, RewriteError> {
        self.steps = 0;
        let limit = self
            .step_limit
            .unwrap_or_else(|| 3u64.saturating_pow(tree.genus() as u32));
        self.reduce_inner(tree, limit)
    }

    fn reduce_inner(&mut self, tree: &Tree, limit: u64) -> Result<SignedTreeSum, RewriteError> {
        if let Some(done) = self.memo.get(tree) {
            return Ok(done.clone());
        }
        let mut out = SignedTreeSum::new(tree.genus());
        match find_unbalanced(tree) {
            None => out.add(tree.clone(), 1),
            Some(node) => {
                self.steps += 1;
                if self.steps > limit {
                    return Err(RewriteError::StepLimit { limit });
                }
                let ordered = OrderedTree::canonical(tree.clone());
                let (first, second) = rotate_ordered(&ordered, node)?;
                if let Some(trace) = self.trace.as_mut() {
                    trace.push(TraceStep {
                        at: node,
                        triple: [tree.clone(), first.tree.clone(), second.tree.clone()],
                    });
                }
                // A_T = -A_{T'} - A_{T''} with aligned orderings; each aligned
                // cycle is its parity times the canonical one.
                for next in [first, second] {
                    let sub = self.reduce_inner(&next.tree, limit)?;
                    out.add_scaled(&sub, -next.parity());
                }
            }
        }
        self.memo.insert(tree.clone(), out.clone());
        Ok(out)
    }
}

/// Reduce a tree's canonically ordered cycle to balanced trees.
pub fn reduce_to_balanced(tree: &Tree) -> Result<SignedTreeSum, RewriteError> {
    Reducer::new().reduce(tree)
}
