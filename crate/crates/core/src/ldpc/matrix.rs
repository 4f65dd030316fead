//! Sparse parity-check matrix.

use super::gf2::{self, BitRow};
use crate::error::{Error, Result};

/// Sparse binary matrix stored as sorted per-row and per-column index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    /// Builds the matrix from the row indices of each column.
    pub fn from_columns(n_rows: usize, columns: Vec<Vec<usize>>) -> Result<Self> {
        let n_cols = columns.len();
        let mut rows = vec![Vec::new(); n_rows];
        let mut cols = Vec::with_capacity(n_cols);
        for (j, mut col) in columns.into_iter().enumerate() {
            col.sort_unstable();
            col.dedup();
            for &i in &col {
                if i >= n_rows {
                    return Err(Error::InvalidParameter(format!(
                        "row index {i} out of range in column {j}"
                    )));
                }
                rows[i].push(j);
            }
            cols.push(col);
        }
        Ok(Self {
            n_rows,
            n_cols,
            rows,
            cols,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Column indices of row `i`.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    /// Row indices of column `j`.
    pub fn col(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vec<usize>] {
        &self.cols
    }

    pub fn n_edges(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// Same matrix with columns reordered: new column `k` is old column `order[k]`.
    pub fn permute_columns(&self, order: &[usize]) -> Self {
        let columns = order.iter().map(|&j| self.cols[j].clone()).collect();
        Self::from_columns(self.n_rows, columns).expect("indices already validated")
    }

    /// `H · bitsᵀ` over GF(2).
    pub fn syndrome(&self, bits: &[u8]) -> Result<Vec<u8>> {
        if bits.len() != self.n_cols {
            return Err(Error::LengthMismatch {
                expected: self.n_cols,
                actual: bits.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &j| acc ^ (bits[j] & 1)))
            .collect())
    }

    /// True when two rows share two or more columns.
    pub fn has_four_cycle(&self) -> bool {
        let mut seen = vec![usize::MAX; self.n_rows];
        for (a, row) in self.rows.iter().enumerate() {
            for &j in row {
                for &b in &self.cols[j] {
                    if b == a {
                        continue;
                    }
                    if seen[b] == a {
                        return true;
                    }
                    seen[b] = a;
                }
            }
        }
        false
    }

    pub fn dense_rows(&self) -> Vec<BitRow> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = BitRow::zeros(self.n_cols);
                for &j in row {
                    dense.set(j);
                }
                dense
            })
            .collect()
    }

    pub fn gf2_rank(&self) -> usize {
        gf2::rank(self.dense_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> ParityCheckMatrix {
        // [7,4] Hamming code, columns are binary 1..7
        let columns = (1..=7usize)
            .map(|v| (0..3).filter(|b| (v >> b) & 1 == 1).collect())
            .collect();
        ParityCheckMatrix::from_columns(3, columns).unwrap()
    }

    #[test]
    fn structure() {
        let h = hamming();
        assert_eq!(h.n_rows(), 3);
        assert_eq!(h.n_cols(), 7);
        assert_eq!(h.n_edges(), 12);
        assert_eq!(h.row(0), &[0, 2, 4, 6]);
        assert_eq!(h.gf2_rank(), 3);
        assert!(h.has_four_cycle());
    }

    #[test]
    fn syndrome_of_single_flip_is_column() {
        let h = hamming();
        let mut bits = vec![0u8; 7];
        bits[4] = 1;
        let s = h.syndrome(&bits).unwrap();
        let expected: Vec<u8> = (0..3).map(|i| h.col(4).contains(&i) as u8).collect();
        assert_eq!(s, expected);
        assert!(h.syndrome(&[0; 6]).is_err());
    }

    #[test]
    fn rejects_out_of_range_rows() {
        assert!(ParityCheckMatrix::from_columns(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn four_cycle_free_example() {
        let h = ParityCheckMatrix::from_columns(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(!h.has_four_cycle());
    }
}
