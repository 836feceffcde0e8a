//! Row-compressed sparse matrices over Q(i).

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{GaussianRational, LinalgError};

/// Sparse matrix in compressed row form. Entries are stored sorted by
/// column within each row and are never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<GaussianRational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, row_ptr: vec![0; rows + 1], col_idx: Vec::new(), vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let trip = (0..n).map(|i| (i, i, GaussianRational::from_int(1)));
        Self::from_triplets(n, n, trip).expect("identity indices are in range")
    }

    /// Assemble from `(row, col, value)` triplets. Repeated positions are
    /// summed and zero results dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, GaussianRational)>,
    {
        let mut per_row: Vec<BTreeMap<usize, GaussianRational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            if v.is_zero() {
                continue;
            }
            *per_row[r].entry(c).or_default() += v;
        }
        let mut m = Self::zeros(rows, cols);
        m.row_ptr.clear();
        m.row_ptr.push(0);
        for row in per_row {
            for (c, v) in row {
                if !v.is_zero() {
                    m.col_idx.push(c);
                    m.vals.push(v);
                }
            }
            m.row_ptr.push(m.col_idx.len());
        }
        Ok(m)
    }

    /// Build from dense rows; every row must have `cols` entries.
    pub fn from_dense(cols: usize, rows: &[Vec<GaussianRational>]) -> Result<Self, LinalgError> {
        let mut trip = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            for (j, v) in row.iter().enumerate() {
                trip.push((i, j, v.clone()));
            }
        }
        Self::from_triplets(rows.len(), cols, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    /// Nonzero entries of row `i` as `(col, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &GaussianRational)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[span.clone()].iter().copied().zip(&self.vals[span])
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> + '_ {
        (0..self.rows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> GaussianRational {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[span.clone()].binary_search(&j) {
            Ok(k) => self.vals[span.start + k].clone(),
            Err(_) => GaussianRational::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let trip = self.entries().map(|(i, j, v)| (j, i, v.clone()));
        Self::from_triplets(self.cols, self.rows, trip).expect("transpose stays in range")
    }

    pub fn to_dense(&self) -> Vec<Vec<GaussianRational>> {
        let mut out = vec![vec![GaussianRational::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn mul_vec(&self, x: &[GaussianRational]) -> Result<Vec<GaussianRational>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).filter(|(j, _)| !x[*j].is_zero()).map(|(j, v)| v * &x[j]).sum()).collect())
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_slice(&self, start: usize, end: usize) -> Self {
        let trip = self.entries().filter(|(_, j, _)| (start..end).contains(j)).map(|(i, j, v)| (i, j - start, v.clone()));
        Self::from_triplets(self.rows, end - start, trip).expect("slice stays in range")
    }

    /// All columns except `start..end`, in their original order.
    pub fn column_complement(&self, start: usize, end: usize) -> Self {
        let width = end - start;
        let trip = self.entries().filter(|(_, j, _)| !(start..end).contains(j)).map(|(i, j, v)| {
            let j = if j >= end { j - width } else { j };
            (i, j, v.clone())
        });
        Self::from_triplets(self.rows, self.cols - width, trip).expect("complement stays in range")
    }

    /// Append `v` as an extra column.
    pub fn with_column(&self, v: &[GaussianRational]) -> Result<Self, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let extra = v.iter().enumerate().map(|(i, x)| (i, self.cols, x.clone()));
        let trip = self.entries().map(|(i, j, x)| (i, j, x.clone())).chain(extra);
        Self::from_triplets(self.rows, self.cols + 1, trip)
    }

    /// Stack `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut b = BlockBuilder::new(self.rows + other.rows, self.cols);
        b.add(0, 0, self, false)?;
        b.add(self.rows, 0, other, false)?;
        Ok(b.build())
    }
}

/// Accumulates matrix blocks at arbitrary offsets.
#[derive(Debug)]
pub struct BlockBuilder {
    rows: usize,
    cols: usize,
    trip: Vec<(usize, usize, GaussianRational)>,
}

impl BlockBuilder {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, trip: Vec::new() }
    }

    /// Place `m` with its top-left corner at `(r0, c0)`, optionally negated.
    pub fn add(&mut self, r0: usize, c0: usize, m: &SparseMatrix, negate: bool) -> Result<(), LinalgError> {
        if r0 + m.rows() > self.rows || c0 + m.cols() > self.cols {
            return Err(LinalgError::IndexOutOfRange { row: r0 + m.rows(), col: c0 + m.cols(), rows: self.rows, cols: self.cols });
        }
        for (i, j, v) in m.entries() {
            let v = if negate { -v } else { v.clone() };
            self.trip.push((r0 + i, c0 + j, v));
        }
        Ok(())
    }

    pub fn build(self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.rows, self.cols, self.trip).expect("blocks were range-checked")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(2, 3, [(0, 1, g(2)), (0, 1, g(-2)), (1, 2, g(5)), (1, 0, g(1))]).unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(1, 2), g(5));
        assert_eq!(m.row(1).map(|(j, _)| j).collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn out_of_range_triplet() {
        assert!(SparseMatrix::from_triplets(1, 1, [(0, 1, g(1))]).is_err());
    }

    #[test]
    fn slicing() {
        let m = SparseMatrix::from_dense(4, &[vec![g(1), g(2), g(3), g(4)]]).unwrap();
        assert_eq!(m.column_slice(1, 3).to_dense(), vec![vec![g(2), g(3)]]);
        assert_eq!(m.column_complement(1, 3).to_dense(), vec![vec![g(1), g(4)]]);
        assert_eq!(m.transpose().transpose(), m);
    }
}
