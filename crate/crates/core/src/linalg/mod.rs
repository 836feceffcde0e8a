//! Exact linear algebra over the Gaussian rationals.

mod elimination;
pub mod reference;
mod scalar;
mod sparse;

use thiserror::Error;

pub use elimination::RankInfo;
pub use scalar::{parse_rational, rat, GaussianRational, Rational};
pub use sparse::{BlockBuilder, SparseMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry ({row},{col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("column range {start}..{end} exceeds {cols} columns")]
    BadRange { start: usize, end: usize, cols: usize },
}

pub fn rank(m: &SparseMatrix) -> usize {
    rank_info(m).rank
}

pub fn rank_info(m: &SparseMatrix) -> RankInfo {
    let e = elimination::eliminate(m);
    RankInfo { rank: e.pivots.len(), max_bits: e.max_bits }
}

/// Basis of `{x : m x = 0}`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<GaussianRational>> {
    elimination::kernel_from_echelon(&elimination::eliminate(m))
}

/// Echelon basis of the row space.
pub fn row_space_basis(m: &SparseMatrix) -> Vec<Vec<(usize, GaussianRational)>> {
    elimination::eliminate(m).pivots.iter().map(|(_, r)| r.to_rational()).collect()
}

/// Whether `m x = b` has a solution.
pub fn is_solvable(m: &SparseMatrix, b: &[GaussianRational]) -> Result<bool, LinalgError> {
    let aug = m.with_column(b)?;
    Ok(rank(&aug) == rank(m))
}

/// Dimension of the projection of `ker m` onto the columns `keep`.
///
/// Vectors of the kernel that vanish on `keep` are the kernel of the
/// remaining columns, so the projection has dimension
/// `|keep| - rank(m) + rank(m without keep)`.
pub fn image_dim_after_projection(m: &SparseMatrix, keep: std::ops::Range<usize>) -> Result<usize, LinalgError> {
    Ok(projection_info(m, keep)?.rank)
}

/// As [`image_dim_after_projection`], also reporting coefficient growth.
pub fn projection_info(m: &SparseMatrix, keep: std::ops::Range<usize>) -> Result<RankInfo, LinalgError> {
    if keep.start > keep.end || keep.end > m.cols() {
        return Err(LinalgError::BadRange { start: keep.start, end: keep.end, cols: m.cols() });
    }
    let full = rank_info(m);
    let rest = rank_info(&m.column_complement(keep.start, keep.end));
    Ok(RankInfo { rank: keep.len() + rest.rank - full.rank, max_bits: full.max_bits.max(rest.max_bits) })
}
