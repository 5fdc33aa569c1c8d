use crate::error::{Error, Result};

/// Dense real symmetric matrix.
///
/// Only the upper triangle (diagonal included) is stored, so `get(i, j)` and
/// `get(j, i)` read the same slot and symmetry holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    packed: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            packed: vec![0.0; n * (n + 1) / 2],
        }
    }

    /// Builds a matrix from a function of the upper-triangle indices `i <= j`.
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Self {
        let mut packed = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                packed.push(entry(i, j));
            }
        }
        SymmetricMatrix { n, packed }
    }

    /// Reads a full row-major matrix, rejecting asymmetric or non-finite input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidMatrix(format!("entry ({i}, {j}) is {v}")));
                }
                if j > i && v != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // Row i of the packed upper triangle starts after i rows of
        // decreasing length n, n-1, ..., n-i+1.
        i * self.n - i * (i.wrapping_sub(1)) / 2 + (j - i)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.packed[self.slot(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = self.slot(i, j);
        self.packed[k] = value;
    }

    pub fn max_abs(&self) -> f64 {
        self.packed.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Off-diagonal entries `(i, j, value)` with `i < j`, row by row.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    /// Full row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = self.get(i, j);
                out[i * n + j] = v;
                out[j * n + i] = v;
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}
