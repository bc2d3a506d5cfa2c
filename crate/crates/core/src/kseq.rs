//! Index sequences `k = (k_1, ..., k_{g-2})` with `1 <= k_i <= i`.

use std::fmt;

use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KSequenceError {
    #[error("entry k_{index} = {value} must lie in 1..={index}")]
    OutOfRange { index: usize, value: usize },
    #[error("a k-sequence needs at least one entry (genus at least 3)")]
    Empty,
    #[error("genus must be at least 3, got {0}")]
    GenusTooSmall(usize),
    #[error("cannot parse k-sequence '{0}': expected a comma-separated list of integers")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSequence(Vec<usize>);

impl KSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self, KSequenceError> {
        if entries.is_empty() {
            return Err(KSequenceError::Empty);
        }
        for (i, &value) in entries.iter().enumerate() {
            if value == 0 || value > i + 1 {
                return Err(KSequenceError::OutOfRange {
                    index: i + 1,
                    value,
                });
            }
        }
        Ok(KSequence(entries))
    }

    /// Parse a comma-separated list such as `1,1,2`.
    pub fn parse(text: &str) -> Result<Self, KSequenceError> {
        let entries: Result<Vec<usize>, _> = text
            .split(',')
            .map(|part| part.trim().parse::<usize>())
            .collect();
        let entries = entries.map_err(|_| KSequenceError::Parse(text.to_string()))?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `k_i`, 1-based.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn genus(&self) -> usize {
        self.0.len() + 2
    }

    pub fn to_json(&self) -> Value {
        Value::from(self.0.clone())
    }
}

impl fmt::Display for KSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for KSequence {
    type Err = KSequenceError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        Self::parse(text)
    }
}

impl fmt::Debug for KSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k{self}")
    }
}

/// All `(g-2)!` sequences for genus `g`, in lexicographic order.
pub fn k_sequences(g: usize) -> Result<Vec<KSequence>, KSequenceError> {
    if g < 3 {
        return Err(KSequenceError::GenusTooSmall(g));
    }
    let len = g - 2;
    let mut out = Vec::new();
    let mut current = vec![1usize; len];
    loop {
        out.push(KSequence(current.clone()));
        // Odometer increment from the last position, digit i ranging over 1..=i+1.
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if current[pos] < pos + 1 {
                current[pos] += 1;
                break;
            }
            current[pos] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_genera() {
        let g3 = k_sequences(3).unwrap();
        assert_eq!(g3, vec![KSequence::new(vec![1]).unwrap()]);
        let g4: Vec<Vec<usize>> = k_sequences(4)
            .unwrap()
            .iter()
            .map(|k| k.entries().to_vec())
            .collect();
        assert_eq!(g4, vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(k_sequences(5).unwrap().len(), 6);
        assert_eq!(k_sequences(2), Err(KSequenceError::GenusTooSmall(2)));
    }

    #[test]
    fn counts_are_factorials_and_sorted() {
        let mut fact = 1;
        for g in 3..=9 {
            fact *= (g - 2).max(1);
            let ks = k_sequences(g).unwrap();
            assert_eq!(ks.len(), fact);
            assert!(ks.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn validation() {
        assert_eq!(
            KSequence::new(vec![1, 3]),
            Err(KSequenceError::OutOfRange { index: 2, value: 3 })
        );
        assert_eq!(
            KSequence::new(vec![0]),
            Err(KSequenceError::OutOfRange { index: 1, value: 0 })
        );
        assert_eq!(KSequence::new(vec![]), Err(KSequenceError::Empty));
        assert_eq!(KSequence::parse("1, 2,1").unwrap().entries(), &[1, 2, 1]);
        assert!(matches!(
            KSequence::parse("1,x"),
            Err(KSequenceError::Parse(_))
        ));
        assert_eq!(KSequence::parse("1,2").unwrap().genus(), 4);
    }
}
