//! Small dense integer matrices with exact determinants.

use std::fmt;

use serde_json::Value;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    size: usize,
    data: Vec<i64>,
}

/// The 0/1 matrix recording which row pairs `(k_i, i+1)` are enclosed by
/// which internal node.
pub type IncidenceMatrix = IntMatrix;

impl IntMatrix {
    pub fn zeros(size: usize) -> Self {
        IntMatrix {
            size,
            data: vec![0; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows do not form a square matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix is not square");
        IntMatrix {
            size,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.size + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.size.max(1))
            .map(<[i64]>::to_vec)
            .take(self.size)
            .collect()
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.size).map(|r| self.get(r, col)).collect()
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.size)
            .all(|i| self.get(i, i) == 1 && (i + 1..self.size).all(|j| self.get(i, j) == 0))
    }

    /// Exact determinant: cofactor expansion below size 5, fraction-free
    /// elimination from size 5 up.
    pub fn det(&self) -> i64 {
        if self.size < 5 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> i64 {
        let cols: Vec<usize> = (0..self.size).collect();
        self.cofactor(0, &cols)
    }

    fn cofactor(&self, row: usize, cols: &[usize]) -> i64 {
        match cols.len() {
            0 => 1,
            1 => self.get(row, cols[0]),
            2 => {
                self.get(row, cols[0]) * self.get(row + 1, cols[1])
                    - self.get(row, cols[1]) * self.get(row + 1, cols[0])
            }
            _ => {
                let mut total = 0;
                let mut rest = Vec::with_capacity(cols.len() - 1);
                for (pos, &col) in cols.iter().enumerate() {
                    let entry = self.get(row, col);
                    if entry == 0 {
                        continue;
                    }
                    rest.clear();
                    rest.extend(
                        cols.iter()
                            .enumerate()
                            .filter(|(p, _)| *p != pos)
                            .map(|(_, c)| *c),
                    );
                    let minor = self.cofactor(row + 1, &rest);
                    if pos % 2 == 0 {
                        total += entry * minor;
                    } else {
                        total -= entry * minor;
                    }
                }
                total
            }
        }
    }

    /// Bareiss fraction-free elimination; every division is exact.
    pub fn det_bareiss(&self) -> i64 {
        let n = self.size;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for c in 0..n {
                    a.swap(k * n + c, swap * n + c);
                }
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * pivot - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = pivot;
        }
        let det = sign * a[n * n - 1];
        i64::try_from(det).expect("determinant overflows i64")
    }

    pub fn to_json(&self) -> Value {
        Value::from(self.rows())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}
