//! Integral cohomology ring of the pure braid group on `n` strands.
//!
//! The ring is the exterior algebra on degree-one generators `w(i,j)`,
//! `1 <= i < j <= n`, modulo the Arnold relations
//! `w(k,l) w(l,m) + w(l,m) w(m,k) + w(m,k) w(k,l) = 0`. Every class is kept
//! in the additive basis of admissible monomials
//! `w(k_1,l_1) ... w(k_p,l_p)` with `k_i < l_i` and `l_1 < ... < l_p`.

mod expr;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::kseq::KSequence;

pub use expr::{parse_expression, ExprError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArnoldError {
    #[error("generator w({i},{j}) needs two distinct positive strand indices")]
    InvalidGenerator { i: usize, j: usize },
    #[error("generator {generator} uses a strand beyond n = {n}")]
    OutOfRange { generator: Generator, n: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
}

/// A degree-one generator `w(i,j)`, stored with `i < j`.
///
/// Ordering compares the larger index first, then the smaller one; this is
/// the order in which admissible monomials list their factors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    large: usize,
    small: usize,
}

impl Generator {
    /// `w(i,j) = w(j,i)`, so the indices may come in either order.
    pub fn new(i: usize, j: usize) -> Result<Self, ArnoldError> {
        if i == j || i == 0 || j == 0 {
            return Err(ArnoldError::InvalidGenerator { i, j });
        }
        Ok(Generator {
            large: i.max(j),
            small: i.min(j),
        })
    }

    pub fn i(self) -> usize {
        self.small
    }

    pub fn j(self) -> usize {
        self.large
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({},{})", self.small, self.large)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered product of generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn new(factors: Vec<Generator>) -> Self {
        Monomial(factors)
    }

    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Strictly increasing larger indices.
    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0].large < w[1].large)
    }

    /// For a top-degree admissible monomial `w(k_1,2) w(k_2,3) ... w(k_p,p+1)`
    /// returns `k`.
    pub fn as_k_sequence(&self) -> Option<KSequence> {
        if self.0.is_empty() {
            return None;
        }
        let mut entries = Vec::with_capacity(self.0.len());
        for (idx, gen) in self.0.iter().enumerate() {
            if gen.large != idx + 2 {
                return None;
            }
            entries.push(gen.small);
        }
        KSequence::new(entries).ok()
    }

    pub fn to_json(&self) -> Value {
        Value::from(
            self.0
                .iter()
                .map(|g| vec![g.small, g.large])
                .collect::<Vec<_>>(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (idx, gen) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "{gen}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer combination of admissible monomials on `n` strands.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    strands: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl CohomologyClass {
    pub fn zero(strands: usize) -> Self {
        CohomologyClass {
            strands,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(strands: usize) -> Self {
        let mut c = Self::zero(strands);
        c.terms.insert(Monomial::unit(), BigInt::one());
        c
    }

    pub fn generator(strands: usize, i: usize, j: usize) -> Result<Self, ArnoldError> {
        straighten(strands, &[Generator::new(i, j)?])
    }

    /// The class of `W_k`.
    pub fn w_basis(k: &KSequence) -> Self {
        let mut c = Self::zero(k.len() + 1);
        c.terms.insert(w_basis_index(k), BigInt::one());
        c
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigInt {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    /// The common degree of all terms, or `None` for zero or mixed classes.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    fn add_term(&mut self, monomial: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Occupied(mut entry) => {
                *entry.get_mut() += coeff;
                if entry.get().is_zero() {
                    entry.remove();
                }
            }
            Entry::Vacant(entry) => {
                entry.insert(coeff);
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArnoldError> {
        if self.strands != other.strands {
            return Err(ArnoldError::StrandMismatch(self.strands, other.strands));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArnoldError> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut out = Self::zero(self.strands);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({ "coeff": bigint_json(c), "monomial": m.to_json() }))
            .collect();
        json!({ "n": self.strands, "terms": terms })
    }
}

impl std::ops::Neg for &CohomologyClass {
    type Output = CohomologyClass;

    fn neg(self) -> CohomologyClass {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            if m.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] {}", self.strands, self)
    }
}

pub(crate) fn bigint_json(value: &BigInt) -> Value {
    match value.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(value.to_string()),
    }
}

/// Sort factors into (larger index, smaller index) order. Returns the sign
/// of the sorting permutation, or `None` if a factor repeats.
fn sort_with_sign(factors: &mut [Generator]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            factors.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    factors.windows(2).all(|w| w[0] != w[1]).then_some(sign)
}

/// Expand a product of generators in the admissible basis.
///
/// Factors are sorted with the exterior sign (a repeated factor kills the
/// product). While two factors `w(a,l)`, `w(b,l)` with `a < b` share their
/// larger index, the pair is replaced through
/// `w(a,l) w(b,l) = w(a,b) w(b,l) - w(a,b) w(a,l)` and the result re-sorted.
/// Each rewrite lowers the multiset of larger indices, so this terminates.
pub fn straighten(n: usize, factors: &[Generator]) -> Result<CohomologyClass, ArnoldError> {
    if let Some(generator) = factors.iter().find(|g| g.large > n) {
        return Err(ArnoldError::OutOfRange {
            generator: *generator,
            n,
        });
    }
    let mut out = CohomologyClass::zero(n);
    let mut pending: Vec<(i64, Vec<Generator>)> = vec![(1, factors.to_vec())];
    while let Some((sign, mut word)) = pending.pop() {
        let Some(sort_sign) = sort_with_sign(&mut word) else {
            continue;
        };
        let sign = sign * sort_sign;
        // Rightmost clash first: the largest shared larger index.
        let clash = (1..word.len())
            .rev()
            .find(|&i| word[i - 1].large == word[i].large);
        match clash {
            None => out.add_term(Monomial(word), BigInt::from(sign)),
            Some(i) => {
                let (a, b, l) = (word[i - 1].small, word[i].small, word[i].large);
                let ab = Generator { large: b, small: a };
                let bl = Generator { large: l, small: b };
                let al = Generator { large: l, small: a };
                let mut first = word.clone();
                first[i - 1] = ab;
                first[i] = bl;
                let mut second = word;
                second[i - 1] = ab;
                second[i] = al;
                pending.push((sign, first));
                pending.push((-sign, second));
            }
        }
    }
    Ok(out)
}

/// Product in the ring, straightened.
pub fn multiply(a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass, ArnoldError> {
    if a.strands != b.strands {
        return Err(ArnoldError::StrandMismatch(a.strands, b.strands));
    }
    let mut out = CohomologyClass::zero(a.strands);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let mut word = ma.0.clone();
            word.extend_from_slice(&mb.0);
            let product = straighten(a.strands, &word)?;
            let coeff = ca * cb;
            for (m, c) in product.terms {
                out.add_term(m, c * &coeff);
            }
        }
    }
    Ok(out)
}

/// All admissible monomials of degree `p` on `n` strands. For `p = n - 1`
/// these are the `W_k`, listed in lexicographic order of `k`.
pub fn basis(n: usize, p: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut larger = Vec::with_capacity(p);
    choose_larger(n, p, 2, &mut larger, &mut out);
    out
}

fn choose_larger(
    n: usize,
    p: usize,
    from: usize,
    larger: &mut Vec<usize>,
    out: &mut Vec<Monomial>,
) {
    if larger.len() == p {
        let mut smaller = vec![1usize; p];
        loop {
            out.push(Monomial(
                larger
                    .iter()
                    .zip(&smaller)
                    .map(|(&large, &small)| Generator { large, small })
                    .collect(),
            ));
            let mut pos = p;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                if smaller[pos] + 1 < larger[pos] {
                    smaller[pos] += 1;
                    break;
                }
                smaller[pos] = 1;
            }
        }
    }
    for l in from..=n {
        larger.push(l);
        choose_larger(n, p, l + 1, larger, out);
        larger.pop();
    }
}

/// Rank of the degree-`p` part: the sum over `2 <= l_1 < ... < l_p <= n` of
/// `(l_1 - 1) ... (l_p - 1)`.
pub fn rank(n: usize, p: usize) -> u128 {
    fn go(n: usize, remaining: usize, from: usize) -> u128 {
        if remaining == 0 {
            return 1;
        }
        (from..=n)
            .map(|l| (l as u128 - 1) * go(n, remaining - 1, l + 1))
            .sum()
    }
    go(n, p, 2)
}

/// `W_k = w(k_1,2) w(k_2,3) ... w(k_{g-2},g-1)`.
pub fn w_basis_index(k: &KSequence) -> Monomial {
    Monomial(
        k.entries()
            .iter()
            .enumerate()
            .map(|(i, &ki)| Generator {
                large: i + 2,
                small: ki,
            })
            .collect(),
    )
}
