//! Slow, independent reference implementations. Nothing here calls into the
//! library except for input types.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant by summing over all permutations.
pub fn leibniz_det(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for a in 0..n {
            for b in a + 1..n {
                if p[a] > p[b] {
                    inversions += 1;
                }
            }
        }
        let product: i64 = (0..n).map(|i| rows[i][p[i]]).product();
        total += if inversions % 2 == 0 {
            product
        } else {
            -product
        };
    });
    total
}

fn permute(p: &mut Vec<usize>, start: usize, visit: &mut dyn FnMut(&[usize])) {
    if start == p.len() {
        visit(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, visit);
        p.swap(start, i);
    }
}

/// Internal-node leaf sets of a bracketed tree string, sorted by size
/// descending and then lexicographically.
pub fn descendant_sets(text: &str) -> Vec<BTreeSet<usize>> {
    fn walk(chars: &[u8], pos: &mut usize, out: &mut Vec<BTreeSet<usize>>) -> BTreeSet<usize> {
        if chars[*pos] == b'(' {
            *pos += 1;
            let mut set = walk(chars, pos, out);
            assert_eq!(chars[*pos], b',');
            *pos += 1;
            set.extend(walk(chars, pos, out));
            assert_eq!(chars[*pos], b')');
            *pos += 1;
            out.push(set.clone());
            set
        } else {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let label = std::str::from_utf8(&chars[start..*pos])
                .unwrap()
                .parse()
                .unwrap();
            BTreeSet::from([label])
        }
    }
    let cleaned: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut sets = Vec::new();
    let mut pos = 0;
    walk(&cleaned, &mut pos, &mut sets);
    sets.sort_by(|a, b| {
        b.len().cmp(&a.len()).then_with(|| {
            a.iter()
                .collect::<Vec<_>>()
                .cmp(&b.iter().collect::<Vec<_>>())
        })
    });
    sets
}

/// All sequences with `1 <= k_i <= i` of length `g - 2`, lexicographic.
pub fn all_k(g: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 1..=g - 2 {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=i).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn incidence(k: &[usize], sets: &[BTreeSet<usize>]) -> Vec<Vec<i64>> {
    k.iter()
        .enumerate()
        .map(|(row, &ki)| {
            sets.iter()
                .map(|s| i64::from(s.contains(&ki) && s.contains(&(row + 2))))
                .collect()
        })
        .collect()
}

pub fn pair(k: &[usize], tree: &str) -> i64 {
    let m = k.len() as i64;
    let sign = if (m * (m - 1) / 2) % 2 == 0 { 1 } else { -1 };
    sign * leibniz_det(&incidence(k, &descendant_sets(tree)))
}

/// Nonzero determinant coordinates of a tree, keyed by `k`.
pub fn decompose(tree: &str) -> BTreeMap<Vec<usize>, i64> {
    let sets = descendant_sets(tree);
    let g = sets[0].len() + 1;
    all_k(g)
        .into_iter()
        .filter_map(|k| {
            let d = leibniz_det(&incidence(&k, &sets));
            (d != 0).then_some((k, d))
        })
        .collect()
}

/// The degree-`p` piece of the exterior algebra on the pairs `{a < b}` of
/// `1..=n`, together with the span of the three-term relations there.
pub struct ArnoldOracle {
    pub n: usize,
    pub p: usize,
    pairs: Vec<(usize, usize)>,
    monomials: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    echelon: Vec<(usize, Vec<BigRational>)>,
}

impl ArnoldOracle {
    pub fn new(n: usize, p: usize) -> Self {
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|b| (1..b).map(move |a| (a, b))).collect();
        let monomials = subsets(pairs.len(), p);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut oracle = ArnoldOracle {
            n,
            p,
            pairs,
            monomials,
            index,
            echelon: Vec::new(),
        };
        if p >= 2 {
            for c in 1..=n {
                for b in 1..c {
                    for a in 1..b {
                        for rest in subsets(oracle.pairs.len(), p - 2) {
                            let rest: Vec<(usize, usize)> =
                                rest.iter().map(|&i| oracle.pairs[i]).collect();
                            let mut v = oracle.zero();
                            for (x, y) in [((a, b), (b, c)), ((b, c), (a, c)), ((a, c), (a, b))] {
                                let mut word = vec![x, y];
                                word.extend(&rest);
                                oracle.accumulate(&mut v, &word, &BigRational::one());
                            }
                            oracle.insert(v);
                        }
                    }
                }
            }
        }
        oracle
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.monomials.len()]
    }

    /// Add `coeff` times the exterior product of `word` (pairs, any order).
    pub fn accumulate(&self, v: &mut [BigRational], word: &[(usize, usize)], coeff: &BigRational) {
        let mut idx: Vec<usize> = word
            .iter()
            .map(|&(a, b)| {
                let key = (a.min(b), a.max(b));
                self.pairs
                    .iter()
                    .position(|p| *p == key)
                    .expect("pair in range")
            })
            .collect();
        let mut sign = 1;
        for i in 0..idx.len() {
            for j in 0..idx.len() - 1 - i {
                if idx[j] > idx[j + 1] {
                    idx.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let slot = self.index[&idx];
        if sign > 0 {
            v[slot] += coeff;
        } else {
            v[slot] -= coeff;
        }
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (pivot, row) in &self.echelon {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        v
    }

    /// Add a vector to the relation span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.echelon.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.echelon.push((pivot, v));
        true
    }

    pub fn in_span(&self, v: Vec<BigRational>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

pub fn ratio(c: &BigInt) -> BigRational {
    BigRational::from_integer(c.clone())
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}
