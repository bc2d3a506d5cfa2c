//! Marked trivalent trees.
//!
//! A tree of genus `g` is stored as a rooted full binary tree on the leaves
//! `1..=g-1`; the root leaf `g` is implicit and sits above the binary root.
//! Internally the tree is kept as its laminar family of descendant leaf sets,
//! one per internal node, in canonical order (larger sets first, ties broken
//! lexicographically). The canonical family determines the tree, so derived
//! equality and hashing are equality and hashing of trees.

use std::fmt;

use rand::Rng;
use serde_json::{json, Value};

use crate::leafset::LeafSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate leaf label {0}")]
    DuplicateLabel(usize),
    #[error("leaf labels must be exactly 1..={n}, but {missing} is missing")]
    NonContiguousLabels { n: usize, missing: usize },
    #[error("a tree needs at least 2 leaves (genus at least 3), got {0}")]
    TooFewLeaves(usize),
    #[error("leaf label {0} is outside the supported range 1..=64")]
    LabelOutOfRange(usize),
    #[error("genus must be at least 3, got {0}")]
    GenusTooSmall(usize),
    #[error("genus {0} is above the supported maximum of 65")]
    GenusTooLarge(usize),
    #[error("expected a tree of genus {expected}, got genus {actual}")]
    GenusMismatch { expected: usize, actual: usize },
    #[error("invalid laminar family: {0}")]
    InvalidFamily(String),
    #[error("node position {pos} is outside 1..={max}")]
    InvalidNodeRef { pos: usize, max: usize },
}

/// Position of an internal node in the canonical ordering of a tree,
/// counted from 1. Position 1 is always the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef(pub usize);

impl NodeRef {
    pub const ROOT: NodeRef = NodeRef(1);

    pub fn index(self) -> usize {
        self.0
    }
}

/// Descendant leaf sets of the internal nodes, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaminarFamily {
    leaves: usize,
    sets: Vec<LeafSet>,
}

impl LaminarFamily {
    pub fn sets(&self) -> &[LeafSet] {
        &self.sets
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    /// True when any two members are nested or disjoint.
    pub fn is_laminar(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, a)| {
            self.sets[i + 1..]
                .iter()
                .all(|b| a.is_disjoint(*b) || a.is_subset(*b) || b.is_subset(*a))
        })
    }

    /// Rebuild the tree this family describes.
    pub fn to_tree(&self) -> Result<Tree, TreeError> {
        Tree::from_family(self.leaves, self.sets.iter().copied())
    }

    /// Sets as sorted label lists.
    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|s| s.to_vec()).collect()
    }
}

/// Balance status of one internal node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeBalance {
    pub node: NodeRef,
    pub set: LeafSet,
    pub depth: usize,
    pub balanced: bool,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    leaves: usize,
    nodes: Vec<LeafSet>,
}

impl Tree {
    /// Build a tree from the descendant sets of its internal nodes, in any
    /// order. The family must contain `{1..=leaves}`, have `leaves - 1`
    /// distinct members of size at least two, and be laminar.
    pub fn from_family<I>(leaves: usize, sets: I) -> Result<Tree, TreeError>
    where
        I: IntoIterator<Item = LeafSet>,
    {
        if leaves < 2 {
            return Err(TreeError::TooFewLeaves(leaves));
        }
        if leaves > LeafSet::MAX_LABEL {
            return Err(TreeError::LabelOutOfRange(leaves));
        }
        let full = LeafSet::full(leaves);
        let mut nodes: Vec<LeafSet> = sets.into_iter().collect();
        nodes.sort_by(LeafSet::canonical_cmp);

        let bad = |msg: String| Err(TreeError::InvalidFamily(msg));
        if nodes.len() != leaves - 1 {
            return bad(format!(
                "{} sets given, a tree on {leaves} leaves has {}",
                nodes.len(),
                leaves - 1
            ));
        }
        if nodes[0] != full {
            return bad(format!("the family must contain {full}"));
        }
        for (i, set) in nodes.iter().enumerate() {
            if set.len() < 2 {
                return bad(format!("{set} has fewer than two elements"));
            }
            if !set.is_subset(full) {
                return bad(format!("{set} is not contained in {full}"));
            }
            for other in &nodes[i + 1..] {
                if set == other {
                    return bad(format!("{set} occurs twice"));
                }
                if !(set.is_disjoint(*other) || other.is_subset(*set)) {
                    return bad(format!("{set} and {other} overlap"));
                }
            }
        }
        Ok(Tree { leaves, nodes })
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn genus(&self) -> usize {
        self.leaves + 1
    }

    /// Number of internal nodes, `g - 2`.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Descendant sets in canonical order.
    pub fn nodes(&self) -> &[LeafSet] {
        &self.nodes
    }

    pub fn node(&self, node: NodeRef) -> Result<LeafSet, TreeError> {
        self.check_ref(node)?;
        Ok(self.nodes[node.0 - 1])
    }

    pub fn check_ref(&self, node: NodeRef) -> Result<(), TreeError> {
        if node.0 == 0 || node.0 > self.nodes.len() {
            return Err(TreeError::InvalidNodeRef {
                pos: node.0,
                max: self.nodes.len(),
            });
        }
        Ok(())
    }

    pub fn position_of(&self, set: LeafSet) -> Option<NodeRef> {
        self.nodes
            .iter()
            .position(|s| *s == set)
            .map(|i| NodeRef(i + 1))
    }

    /// The two child subtrees of the internal node with descendant set `set`,
    /// as leaf sets, the one holding the smaller label first. Leaf children
    /// show up as singletons.
    pub fn children_of(&self, set: LeafSet) -> [LeafSet; 2] {
        let mut found: Vec<LeafSet> = Vec::with_capacity(2);
        // Canonical order lists larger sets first, so maximal proper subsets
        // are met before anything nested inside them.
        for candidate in &self.nodes {
            if *candidate != set
                && candidate.is_subset(set)
                && found.iter().all(|f| !candidate.is_subset(*f))
            {
                found.push(*candidate);
            }
        }
        let covered = found.iter().fold(LeafSet::empty(), |acc, s| acc.union(*s));
        found.extend(set.difference(covered).iter().map(LeafSet::singleton));
        debug_assert_eq!(found.len(), 2, "node {set} is not binary");
        found.sort_by_key(|s| s.min_label());
        [found[0], found[1]]
    }

    pub fn children(&self, node: NodeRef) -> Result<[LeafSet; 2], TreeError> {
        Ok(self.children_of(self.node(node)?))
    }

    /// Distance from the binary root (depth 0).
    pub fn depth_of(&self, set: LeafSet) -> usize {
        self.nodes
            .iter()
            .filter(|s| **s != set && set.is_subset(**s))
            .count()
    }

    /// A node is balanced when its two smallest descendant labels lie in
    /// different child subtrees.
    pub fn is_node_balanced(&self, set: LeafSet) -> bool {
        let Some((a, b)) = set.two_smallest() else {
            return true;
        };
        let [left, _] = self.children_of(set);
        left.contains(a) != left.contains(b)
    }

    pub fn balance_report(&self) -> Vec<NodeBalance> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, set)| NodeBalance {
                node: NodeRef(i + 1),
                set: *set,
                depth: self.depth_of(*set),
                balanced: self.is_node_balanced(*set),
            })
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.nodes.iter().all(|s| self.is_node_balanced(*s))
    }

    pub fn descendant_sets(&self) -> LaminarFamily {
        LaminarFamily {
            leaves: self.leaves,
            sets: self.nodes.clone(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(LeafSet::full(self.leaves), &mut out);
        out
    }

    // The larger child is written first; equal sizes go smaller label first.
    fn render_into(&self, set: LeafSet, out: &mut String) {
        if set.len() == 1 {
            out.push_str(&set.min_label().unwrap_or(0).to_string());
            return;
        }
        let [mut a, mut b] = self.children_of(set);
        if b.len() > a.len() {
            std::mem::swap(&mut a, &mut b);
        }
        out.push('(');
        self.render_into(a, out);
        out.push(',');
        self.render_into(b, out);
        out.push(')');
    }

    /// `{"g": .., "newick": .., "nodes": [[..], ..]}`
    pub fn to_json(&self) -> Value {
        json!({
            "g": self.genus(),
            "newick": self.render(),
            "nodes": self.descendant_sets().to_vecs(),
        })
    }

    /// Insert a new largest leaf on the edge directly above `below`, which
    /// is either a node set or a leaf singleton.
    fn with_leaf_above(&self, below: LeafSet) -> Tree {
        let label = self.leaves + 1;
        let mut nodes: Vec<LeafSet> = self
            .nodes
            .iter()
            .map(|s| {
                if below.is_subset(*s) && *s != below {
                    s.union(LeafSet::singleton(label))
                } else {
                    *s
                }
            })
            .collect();
        nodes.push(below.union(LeafSet::singleton(label)));
        nodes.sort_by(LeafSet::canonical_cmp);
        Tree {
            leaves: label,
            nodes,
        }
    }

    /// All edges of the rooted tree, named by the node or leaf below them.
    fn edges(&self) -> impl Iterator<Item = LeafSet> + '_ {
        self.nodes
            .iter()
            .copied()
            .chain((1..=self.leaves).map(LeafSet::singleton))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.render())
    }
}

impl std::str::FromStr for Tree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

fn check_genus(g: usize) -> Result<(), TreeError> {
    if g < 3 {
        return Err(TreeError::GenusTooSmall(g));
    }
    if g > LeafSet::MAX_LABEL + 1 {
        return Err(TreeError::GenusTooLarge(g));
    }
    Ok(())
}

/// Parse `TREE := LEAF | "(" TREE "," TREE ")"`, where a leaf is a positive
/// decimal integer. Whitespace is ignored and the child order is irrelevant.
pub fn parse_tree(text: &str) -> Result<Tree, TreeError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        seen: LeafSet::empty(),
        sets: Vec::new(),
        max_label: 0,
    };
    parser.tree()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input"));
    }
    let leaves = parser.seen.len();
    if leaves < 2 {
        return Err(TreeError::TooFewLeaves(leaves));
    }
    if parser.max_label > leaves {
        let missing = (1..=leaves)
            .find(|l| !parser.seen.contains(*l))
            .unwrap_or(leaves);
        return Err(TreeError::NonContiguousLabels { n: leaves, missing });
    }
    Tree::from_family(leaves, parser.sets)
}

/// Parse and check the result against an explicitly requested genus.
pub fn parse_tree_with_genus(text: &str, g: usize) -> Result<Tree, TreeError> {
    let tree = parse_tree(text)?;
    if tree.genus() != g {
        return Err(TreeError::GenusMismatch {
            expected: g,
            actual: tree.genus(),
        });
    }
    Ok(tree)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    seen: LeafSet,
    sets: Vec<LeafSet>,
    max_label: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> TreeError {
        TreeError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), TreeError> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn tree(&mut self) -> Result<LeafSet, TreeError> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let left = self.tree()?;
                self.expect(b',')?;
                let right = self.tree()?;
                self.expect(b')')?;
                let set = left.union(right);
                self.sets.push(set);
                Ok(set)
            }
            Some(b) if b.is_ascii_digit() => self.leaf(),
            Some(_) => Err(self.error("expected '(' or a leaf label")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn leaf(&mut self) -> Result<LeafSet, TreeError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or("");
        let label: usize = digits.parse().map_err(|_| TreeError::Syntax {
            pos: start,
            msg: format!("leaf label '{digits}' is not a valid integer"),
        })?;
        if label == 0 || label > LeafSet::MAX_LABEL {
            return Err(TreeError::LabelOutOfRange(label));
        }
        if self.seen.contains(label) {
            return Err(TreeError::DuplicateLabel(label));
        }
        self.seen.insert(label);
        self.max_label = self.max_label.max(label);
        Ok(LeafSet::singleton(label))
    }
}

pub fn render_tree(tree: &Tree) -> String {
    tree.render()
}

/// Every tree of genus `g`, each once, sorted by rendered string.
/// There are `(2g-5)!!` of them.
pub fn enumerate_trees(g: usize) -> Result<Vec<Tree>, TreeError> {
    check_genus(g)?;
    let mut layer = vec![cherry()];
    for _ in 3..g {
        layer = layer
            .iter()
            .flat_map(|t| t.edges().map(move |e| t.with_leaf_above(e)))
            .collect();
    }
    Ok(sort_by_string(layer))
}

/// The balanced trees of genus `g`, sorted by rendered string; `(g-2)!` of them.
pub fn enumerate_balanced(g: usize) -> Result<Vec<Tree>, TreeError> {
    check_genus(g)?;
    let trees = crate::kseq::k_sequences(g)
        .map_err(|_| TreeError::GenusTooSmall(g))?
        .iter()
        .map(crate::decomposition::build_balanced_tree)
        .collect();
    Ok(sort_by_string(trees))
}

/// A uniformly random tree of genus `g`: inserting each new leaf on a
/// uniformly chosen edge reaches every tree with equal probability.
pub fn random_tree<R: Rng + ?Sized>(g: usize, rng: &mut R) -> Result<Tree, TreeError> {
    check_genus(g)?;
    let mut tree = cherry();
    for _ in 3..g {
        let edges: Vec<LeafSet> = tree.edges().collect();
        let pick = edges[rng.gen_range(0..edges.len())];
        tree = tree.with_leaf_above(pick);
    }
    Ok(tree)
}

fn cherry() -> Tree {
    Tree {
        leaves: 2,
        nodes: vec![LeafSet::full(2)],
    }
}

fn sort_by_string(trees: Vec<Tree>) -> Vec<Tree> {
    let mut keyed: Vec<(String, Tree)> = trees.into_iter().map(|t| (t.render(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, t)| t).collect()
}

/// Sign of the permutation taking the ordering `from` to the ordering `to`.
/// Returns `None` unless both list the same distinct sets.
pub fn ordering_sign(from: &[LeafSet], to: &[LeafSet]) -> Option<i64> {
    if from.len() != to.len() {
        return None;
    }
    let perm: Option<Vec<usize>> = to
        .iter()
        .map(|s| from.iter().position(|f| f == s))
        .collect();
    let perm = perm?;
    let mut seen = vec![false; perm.len()];
    for &p in &perm {
        if std::mem::replace(&mut seen[p], true) {
            return None;
        }
    }
    let mut visited = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    Some(sign)
}
