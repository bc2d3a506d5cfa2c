//! Small sets of leaf labels, stored as a bitmask.
//!
//! Labels run from 1 to [`LeafSet::MAX_LABEL`]; label `i` occupies bit `i - 1`.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LeafSet(u64);

impl LeafSet {
    pub const MAX_LABEL: usize = 64;

    pub const fn empty() -> Self {
        LeafSet(0)
    }

    pub fn singleton(label: usize) -> Self {
        debug_assert!((1..=Self::MAX_LABEL).contains(&label));
        LeafSet(1u64 << (label - 1))
    }

    /// The set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= Self::MAX_LABEL);
        if n == 64 {
            LeafSet(u64::MAX)
        } else {
            LeafSet((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=Self::MAX_LABEL).contains(&label) && self.0 & (1u64 << (label - 1)) != 0
    }

    pub fn insert(&mut self, label: usize) {
        *self = self.union(Self::singleton(label));
    }

    pub fn remove(&mut self, label: usize) {
        self.0 &= !Self::singleton(label).0;
    }

    pub fn union(self, other: Self) -> Self {
        LeafSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        LeafSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        LeafSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest label, if any.
    pub fn min_label(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max_label(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// The two smallest labels, if the set has at least two elements.
    pub fn two_smallest(self) -> Option<(usize, usize)> {
        let first = self.min_label()?;
        let mut rest = self;
        rest.remove(first);
        Some((first, rest.min_label()?))
    }

    /// Labels in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(tz + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical node order: larger sets first, then lexicographic on the
    /// ascending element lists.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl FromIterator<usize> for LeafSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = LeafSet::empty();
        for label in iter {
            set.insert(label);
        }
        set
    }
}

impl fmt::Debug for LeafSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LeafSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, label) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}
