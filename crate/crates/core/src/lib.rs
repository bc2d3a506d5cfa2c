//! Tree-indexed abelian cycles in the top homology of the pure braid group
//! `PB_{g-1}`, computed two independent ways.
//!
//! * [`tree`]: marked trivalent trees on leaves `1..=g-1`, their canonical
//!   forms, enumeration, and the balanced subfamily.
//! * [`arnold`]: the cohomology ring of the pure braid group with
//!   straightening to the admissible basis.
//! * [`decomposition`]: incidence matrices, determinant pairings, the
//!   balanced basis, and decomposition of any tree's cycle in it.
//! * [`rewrite`]: the cyclic-triple rewriting system, which reaches the same
//!   decomposition by rotations alone.
//! * [`verify`]: exhaustive and seeded suites tying the pieces together.
//!
//! ```
//! use tree_cycles::{decompose, parse_tree, reduce_to_balanced};
//!
//! let tree = parse_tree("((1,2),3)").unwrap();
//! let by_det = decompose(&tree);
//! let by_rotation = reduce_to_balanced(&tree).unwrap().to_decomposition();
//! assert_eq!(by_det, by_rotation);
//! ```

pub mod arnold;
pub mod cli;
pub mod decomposition;
pub mod kseq;
pub mod leafset;
pub mod matrix;
pub mod rewrite;
pub mod tree;
pub mod verify;

pub use arnold::{multiply, straighten, CohomologyClass, Generator, Monomial};
pub use decomposition::{
    balanced_tree_to_k, build_balanced_tree, decompose, incidence_matrix, pair, pair_class,
    CycleDecomposition,
};
pub use kseq::{k_sequences, KSequence};
pub use leafset::LeafSet;
pub use matrix::{IncidenceMatrix, IntMatrix};
pub use rewrite::{reduce_to_balanced, rotate, CyclicTriple, OrderedTree, SignedTreeSum};
pub use tree::{enumerate_balanced, enumerate_trees, parse_tree, render_tree, NodeRef, Tree};
pub use verify::SuiteReport;
