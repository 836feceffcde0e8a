//! Pages of the Frölicher spectral sequence through zig-zag spaces.
//!
//! `E_r^{p,q} = X_r^{p,q} / Y_r^{p,q}` where `X_r` holds the forms
//! `α_0 ∈ Λ^{p,q}` that start a zig-zag
//!
//! ```text
//! ∂̄α_0 = 0,  ∂α_j + ∂̄α_{j+1} = 0  (0 ≤ j ≤ r-2),  α_j ∈ Λ^{p+j,q-j}
//! ```
//!
//! and `Y_r` holds `∂̄β_0 + ∂β_1` for `β_0 ∈ Λ^{p,q-1}` and
//! `β_i ∈ Λ^{p-i,q+i-1}` subject to `∂̄β_i + ∂β_{i+1} = 0` for
//! `1 ≤ i ≤ r-2` and `∂̄β_{r-1} = 0`. Every dimension is a difference of
//! exact ranks; no quotient space is ever formed explicitly.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::exec::Exec;
use crate::exterior::Form;
use crate::linalg::{self, kernel_basis, rank_info, BlockBuilder, GaussianRational, LinalgError, RankInfo, SparseMatrix};
use crate::model::ComplexModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FssError {
    #[error("page index must be at least 1")]
    BadPage,
    #[error("bidegree ({0},{1}) is outside the complex")]
    OutOfRange(i64, i64),
    #[error("this complex has no finite extent; pass explicit bidegrees")]
    Unbounded,
    #[error("form is not of pure bidegree ({0},{1})")]
    WrongBidegree(i64, i64),
    #[error("operator block unavailable: {0}")]
    Operator(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A bigraded complex with anticommuting `∂` and `∂̄` given blockwise.
pub trait DoubleComplex: Sync {
    fn label(&self) -> String;

    /// Dimension of the `(p,q)` block; zero outside the complex.
    fn block_dim(&self, p: i64, q: i64) -> usize;

    /// `∂: (p,q) → (p+1,q)` as a `block_dim(p+1,q) × block_dim(p,q)` matrix.
    fn del_block(&self, p: i64, q: i64) -> Result<Arc<SparseMatrix>, FssError>;

    /// `∂̄: (p,q) → (p,q+1)`.
    fn delbar_block(&self, p: i64, q: i64) -> Result<Arc<SparseMatrix>, FssError>;

    /// `Some(n)` when all blocks lie in `[0,n]^2`.
    fn extent(&self) -> Option<usize>;
}

impl DoubleComplex for ComplexModel {
    fn label(&self) -> String {
        self.name().to_string()
    }

    fn block_dim(&self, p: i64, q: i64) -> usize {
        let n = self.dim() as i64;
        if (0..=n).contains(&p) && (0..=n).contains(&q) {
            self.bidegree_dim(p as usize, q as usize)
        } else {
            0
        }
    }

    fn del_block(&self, p: i64, q: i64) -> Result<Arc<SparseMatrix>, FssError> {
        if self.block_dim(p, q) == 0 || self.block_dim(p + 1, q) == 0 {
            return Ok(Arc::new(SparseMatrix::zeros(self.block_dim(p + 1, q), self.block_dim(p, q))));
        }
        Ok(self.del_matrix(p as usize, q as usize))
    }

    fn delbar_block(&self, p: i64, q: i64) -> Result<Arc<SparseMatrix>, FssError> {
        if self.block_dim(p, q) == 0 || self.block_dim(p, q + 1) == 0 {
            return Ok(Arc::new(SparseMatrix::zeros(self.block_dim(p, q + 1), self.block_dim(p, q))));
        }
        Ok(self.delbar_matrix(p as usize, q as usize))
    }

    fn extent(&self) -> Option<usize> {
        Some(self.dim())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    X,
    Y,
}

/// The linear system describing `X_r^{p,q}` or `Y_r^{p,q}`.
///
/// Unknown blocks are laid out by ascending holomorphic degree. For `X`
/// the first block is `α_0`; for `Y` the last block is `β_0` and the one
/// before it is `β_1`.
#[derive(Clone, Debug)]
pub struct ZigZagSystem {
    pub kind: SystemKind,
    pub r: usize,
    pub bidegree: (i64, i64),
    /// Bidegrees of the unknown blocks, in column order.
    pub blocks: Vec<(i64, i64)>,
    /// Column offset of each block; one extra entry holds the total.
    pub offsets: Vec<usize>,
    /// Constraints on the unknowns.
    pub constraints: SparseMatrix,
    /// For `Y`: the map from unknowns to `Λ^{p,q}`. Empty for `X`.
    pub image: SparseMatrix,
}

impl ZigZagSystem {
    pub fn columns(&self) -> usize {
        *self.offsets.last().expect("offsets are never empty")
    }

    pub fn block_range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }
}

fn offsets_of(cx: &dyn DoubleComplex, blocks: &[(i64, i64)]) -> Vec<usize> {
    let mut off = vec![0];
    for &(a, b) in blocks {
        off.push(off.last().unwrap() + cx.block_dim(a, b));
    }
    off
}

/// Build the zig-zag system of the given kind.
pub fn zigzag_system(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64, kind: SystemKind) -> Result<ZigZagSystem, FssError> {
    if r == 0 {
        return Err(FssError::BadPage);
    }
    match kind {
        SystemKind::X => x_system(cx, r, p, q),
        SystemKind::Y => y_system(cx, r, p, q),
    }
}

fn x_system(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64) -> Result<ZigZagSystem, FssError> {
    let blocks: Vec<(i64, i64)> = (0..r as i64).map(|j| (p + j, q - j)).collect();
    let offsets = offsets_of(cx, &blocks);
    // One equation block per target bidegree: ∂̄α_0 lands in (p,q+1), and
    // equation j+1 lands in (p+j+1, q-j).
    let mut row_off = vec![0];
    let targets: Vec<(i64, i64)> = std::iter::once((p, q + 1)).chain((0..r as i64 - 1).map(|j| (p + j + 1, q - j))).collect();
    for &(a, b) in &targets {
        row_off.push(row_off.last().unwrap() + cx.block_dim(a, b));
    }
    let mut bld = BlockBuilder::new(*row_off.last().unwrap(), *offsets.last().unwrap());
    bld.add(row_off[0], offsets[0], &*cx.delbar_block(p, q)?, false)?;
    for j in 0..r - 1 {
        let (a, b) = blocks[j];
        bld.add(row_off[j + 1], offsets[j], &*cx.del_block(a, b)?, false)?;
        let (a1, b1) = blocks[j + 1];
        bld.add(row_off[j + 1], offsets[j + 1], &*cx.delbar_block(a1, b1)?, false)?;
    }
    let cols = *offsets.last().unwrap();
    Ok(ZigZagSystem {
        kind: SystemKind::X,
        r,
        bidegree: (p, q),
        blocks,
        offsets,
        constraints: bld.build(),
        image: SparseMatrix::zeros(0, cols),
    })
}

fn y_system(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64) -> Result<ZigZagSystem, FssError> {
    // β_i sits at (p-i, q+i-1) for i ≥ 1 and β_0 at (p, q-1).
    let beta = |i: usize| -> (i64, i64) {
        if i == 0 {
            (p, q - 1)
        } else {
            (p - i as i64, q + i as i64 - 1)
        }
    };
    let blocks: Vec<(i64, i64)> = (0..r).rev().map(beta).collect();
    let col_of = |i: usize| r - 1 - i;
    let offsets = offsets_of(cx, &blocks);
    let cols = *offsets.last().unwrap();

    // Constraint i (1 ≤ i ≤ r-1) lands in (p-i, q+i): ∂̄β_i + ∂β_{i+1}, the
    // second term absent for i = r-1.
    let mut row_off = vec![0];
    for i in 1..r {
        let (a, b) = beta(i);
        row_off.push(row_off.last().unwrap() + cx.block_dim(a, b + 1));
    }
    let mut bld = BlockBuilder::new(*row_off.last().unwrap(), cols);
    for i in 1..r {
        let (a, b) = beta(i);
        bld.add(row_off[i - 1], offsets[col_of(i)], &*cx.delbar_block(a, b)?, false)?;
        if i + 1 < r {
            let (a1, b1) = beta(i + 1);
            bld.add(row_off[i - 1], offsets[col_of(i + 1)], &*cx.del_block(a1, b1)?, false)?;
        }
    }
    let mut img = BlockBuilder::new(cx.block_dim(p, q), cols);
    img.add(0, offsets[col_of(0)], &*cx.delbar_block(p, q - 1)?, false)?;
    if r > 1 {
        img.add(0, offsets[col_of(1)], &*cx.del_block(p - 1, q)?, false)?;
    }
    Ok(ZigZagSystem { kind: SystemKind::Y, r, bidegree: (p, q), blocks, offsets, constraints: bld.build(), image: img.build() })
}

/// One page entry with the ranks it was derived from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PageEntry {
    pub dim: usize,
    pub x_dim: usize,
    pub y_dim: usize,
    /// `dim(X_r + Y_r)`; equals `x_dim` because `Y_r ⊆ X_r`.
    pub sum_dim: usize,
    pub max_bits: u64,
}

fn y_dim_info(y: &ZigZagSystem) -> Result<RankInfo, FssError> {
    let k = rank_info(&y.constraints);
    let kt = rank_info(&y.constraints.vstack(&y.image)?);
    Ok(RankInfo { rank: kt.rank - k.rank, max_bits: k.max_bits.max(kt.max_bits) })
}

/// `e_r^{p,q}` from `dim(X+Y) - dim Y`, checking `dim(X+Y) = dim X`.
pub fn entry(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64) -> Result<PageEntry, FssError> {
    if r == 0 {
        return Err(FssError::BadPage);
    }
    if cx.block_dim(p, q) == 0 {
        return Ok(PageEntry::default());
    }
    let x = x_system(cx, r, p, q)?;
    let y = y_system(cx, r, p, q)?;
    let keep = x.block_range(0);
    let mrank = rank_info(&x.constraints);
    let rest = rank_info(&x.constraints.column_complement(keep.start, keep.end));
    let x_dim = keep.len() + rest.rank - mrank.rank;

    let krank = rank_info(&y.constraints);
    let kt = rank_info(&y.constraints.vstack(&y.image)?);
    let y_dim = kt.rank - krank.rank;

    // [[M, 0], [0, K], [P, T]] with P the inclusion of the α_0 block.
    let (mr, mc) = (x.constraints.rows(), x.constraints.cols());
    let (kr, kc) = (y.constraints.rows(), y.constraints.cols());
    let dim_pq = cx.block_dim(p, q);
    let mut bld = BlockBuilder::new(mr + kr + dim_pq, mc + kc);
    bld.add(0, 0, &x.constraints, false)?;
    bld.add(mr, mc, &y.constraints, false)?;
    bld.add(mr + kr, keep.start, &SparseMatrix::identity(dim_pq), false)?;
    bld.add(mr + kr, mc, &y.image, false)?;
    let big = rank_info(&bld.build());
    let sum_dim = big.rank - mrank.rank - krank.rank;
    let max_bits = [mrank, rest, krank, kt, big].iter().map(|i| i.max_bits).max().unwrap_or(0);
    Ok(PageEntry { dim: sum_dim - y_dim, x_dim, y_dim, sum_dim, max_bits })
}

/// Smallest `r` from which `e_r^{p,q}` no longer changes, from the
/// number of blocks that fall inside `[0,n]^2`.
pub fn stable_page(n: usize, p: usize, q: usize) -> usize {
    let jx = q.min(n - p) + 1;
    let iy = p.min(n + 1 - q);
    (jx + 1).max(iy + 1)
}

/// All entries `e_r^{p,q}` for `1 ≤ r ≤ r_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageTable {
    pub label: String,
    pub n: usize,
    pub r_max: usize,
    pub entries: BTreeMap<(usize, usize, usize), PageEntry>,
}

impl PageTable {
    /// `e_r^{p,q}`; zero outside `[0,n]^2`.
    pub fn get(&self, r: usize, p: usize, q: usize) -> usize {
        self.entries.get(&(r, p, q)).map_or(0, |e| e.dim)
    }

    pub fn entry(&self, r: usize, p: usize, q: usize) -> Option<&PageEntry> {
        self.entries.get(&(r, p, q))
    }

    /// Page `r` as an `(n+1) × (n+1)` grid indexed `[p][q]`.
    pub fn page(&self, r: usize) -> Vec<Vec<usize>> {
        (0..=self.n).map(|p| (0..=self.n).map(|q| self.get(r, p, q)).collect()).collect()
    }

    pub fn max_bits(&self) -> u64 {
        self.entries.values().map(|e| e.max_bits).max().unwrap_or(0)
    }

    /// `Σ_{p+q=k} e_r^{p,q}`.
    pub fn total(&self, r: usize, k: usize) -> usize {
        (0..=k.min(self.n)).filter(|p| k - p <= self.n).map(|p| self.get(r, p, k - p)).sum()
    }
}

/// Compute every entry of pages `1..=r_max`. Entries past their stable
/// page are copied instead of recomputed.
pub fn page_dims(cx: &dyn DoubleComplex, r_max: usize, exec: Exec) -> Result<PageTable, FssError> {
    if r_max == 0 {
        return Err(FssError::BadPage);
    }
    let n = cx.extent().ok_or(FssError::Unbounded)?;
    let mut jobs = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            let top = r_max.min(stable_page(n, p, q));
            jobs.extend((1..=top).map(|r| (r, p, q)));
        }
    }
    let results = exec.map(&jobs, |&(r, p, q)| entry(cx, r, p as i64, q as i64));
    let mut computed = BTreeMap::new();
    for (job, res) in jobs.iter().zip(results) {
        computed.insert(*job, res?);
    }
    let mut entries = BTreeMap::new();
    for r in 1..=r_max {
        for p in 0..=n {
            for q in 0..=n {
                let rr = r.min(stable_page(n, p, q));
                entries.insert((r, p, q), computed[&(rr, p, q)]);
            }
        }
    }
    Ok(PageTable { label: cx.label(), n, r_max, entries })
}

/// Pages that change, and the first page after which nothing changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    /// Smallest `r` with `E_r = E_∞` in every bidegree.
    pub degenerates_at: usize,
    /// `(r, p, q, e_r, e_{r+1})` for each entry that drops.
    pub drops: Vec<(usize, usize, usize, usize, usize)>,
}

/// Read degeneration off a table whose last page is stable, as produced
/// by [`page_dims`] with `r_max` at least `n + 2`.
pub fn degeneration_report(t: &PageTable) -> DegenerationReport {
    let mut drops = Vec::new();
    let mut last_change = 0;
    for r in 1..t.r_max {
        for p in 0..=t.n {
            for q in 0..=t.n {
                let (a, b) = (t.get(r, p, q), t.get(r + 1, p, q));
                if a != b {
                    drops.push((r, p, q, a, b));
                    last_change = r;
                }
            }
        }
    }
    DegenerationReport { degenerates_at: last_change + 1, drops }
}

/// Page index past which every entry of an `n`-dimensional model is stable.
pub fn global_stable_page(n: usize) -> usize {
    (0..=n).flat_map(|p| (0..=n).map(move |q| stable_page(n, p, q))).max().unwrap_or(1)
}

/// Rank of `d_r: E_r^{p,q} → E_r^{p+r,q-r+1}`.
pub fn dr_rank(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64) -> Result<usize, FssError> {
    if r == 0 {
        return Err(FssError::BadPage);
    }
    let (tp, tq) = (p + r as i64, q - r as i64 + 1);
    let last = (p + r as i64 - 1, q - r as i64 + 1);
    if cx.block_dim(p, q) == 0 || cx.block_dim(tp, tq) == 0 || cx.block_dim(last.0, last.1) == 0 {
        return Ok(0);
    }
    let x = x_system(cx, r, p, q)?;
    let y = y_system(cx, r, tp, tq)?;
    let y_dim = y_dim_info(&y)?.rank;
    let (mr, mc) = (x.constraints.rows(), x.constraints.cols());
    let (kr, kc) = (y.constraints.rows(), y.constraints.cols());
    let del_last = cx.del_block(last.0, last.1)?;
    let rows_t = cx.block_dim(tp, tq);
    let mut bld = BlockBuilder::new(mr + kr + rows_t, mc + kc);
    bld.add(0, 0, &x.constraints, false)?;
    bld.add(mr, mc, &y.constraints, false)?;
    bld.add(mr + kr, x.offsets[r - 1], &del_last, false)?;
    bld.add(mr + kr, mc, &y.image, false)?;
    let big = linalg::rank(&bld.build());
    let span = big - linalg::rank(&x.constraints) - linalg::rank(&y.constraints);
    Ok(span - y_dim)
}

/// Membership of a `(p,q)`-form in `X_r` and `Y_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub in_x: bool,
    pub in_y: bool,
}

impl Membership {
    /// A nonzero class on `E_r`.
    pub fn is_nonzero_class(self) -> bool {
        self.in_x && !self.in_y
    }
}

fn coords(cx: &ComplexModel, x: &Form, p: i64, q: i64) -> Result<Vec<GaussianRational>, FssError> {
    if cx.block_dim(p, q) == 0 {
        return Err(FssError::OutOfRange(p, q));
    }
    cx.coordinates(x, p as usize, q as usize).ok_or(FssError::WrongBidegree(p, q))
}

pub fn class_membership(cx: &ComplexModel, r: usize, p: i64, q: i64, x: &Form) -> Result<Membership, FssError> {
    let v = coords(cx, x, p, q)?;
    Ok(Membership { in_x: in_x_coords(cx, r, p, q, &v)?, in_y: in_y_coords(cx, r, p, q, &v)? })
}

pub fn in_x_coords(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64, v: &[GaussianRational]) -> Result<bool, FssError> {
    let x = x_system(cx, r, p, q)?;
    let keep = x.block_range(0);
    let m_keep = x.constraints.column_slice(keep.start, keep.end);
    let rhs: Vec<GaussianRational> = m_keep.mul_vec(v)?.into_iter().map(|c| -c).collect();
    Ok(linalg::is_solvable(&x.constraints.column_complement(keep.start, keep.end), &rhs)?)
}

pub fn in_y_coords(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64, v: &[GaussianRational]) -> Result<bool, FssError> {
    let y = y_system(cx, r, p, q)?;
    let stacked = y.constraints.vstack(&y.image)?;
    let mut rhs = vec![GaussianRational::zero(); y.constraints.rows()];
    rhs.extend_from_slice(v);
    Ok(linalg::is_solvable(&stacked, &rhs)?)
}

/// Basis of `X_r^{p,q}` in coordinates of `Λ^{p,q}`.
pub fn x_basis(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64) -> Result<Vec<Vec<GaussianRational>>, FssError> {
    let x = x_system(cx, r, p, q)?;
    let keep = x.block_range(0);
    let projected: Vec<Vec<GaussianRational>> = kernel_basis(&x.constraints).into_iter().map(|v| v[keep.clone()].to_vec()).collect();
    Ok(independent_subset(&[], projected, keep.len()).1)
}

/// Basis of `Y_r^{p,q}` in coordinates of `Λ^{p,q}`.
pub fn y_basis(cx: &dyn DoubleComplex, r: usize, p: i64, q: i64) -> Result<Vec<Vec<GaussianRational>>, FssError> {
    let y = y_system(cx, r, p, q)?;
    let images: Vec<Vec<GaussianRational>> = kernel_basis(&y.constraints).iter().map(|v| y.image.mul_vec(v)).collect::<Result<_, _>>()?;
    Ok(independent_subset(&[], images, cx.block_dim(p, q)).1)
}

/// Greedily extend `base` by vectors from `cands` that enlarge the span.
/// Returns the final span rank and the vectors that were added.
fn independent_subset(
    base: &[Vec<GaussianRational>],
    cands: Vec<Vec<GaussianRational>>,
    width: usize,
) -> (usize, Vec<Vec<GaussianRational>>) {
    let mut rows: Vec<Vec<GaussianRational>> = base.to_vec();
    let mut current = span_rank(&rows, width);
    let mut added = Vec::new();
    for v in cands {
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        rows.push(v.clone());
        let next = span_rank(&rows, width);
        if next > current {
            current = next;
            added.push(v);
        } else {
            rows.pop();
        }
    }
    (current, added)
}

pub(crate) fn span_rank(rows: &[Vec<GaussianRational>], width: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    linalg::rank(&SparseMatrix::from_dense(width, rows).expect("rows have the block width"))
}

/// Forms whose classes form a basis of `E_r^{p,q}`.
pub fn representatives(cx: &ComplexModel, r: usize, p: i64, q: i64) -> Result<Vec<Form>, FssError> {
    if cx.block_dim(p, q) == 0 {
        return Ok(Vec::new());
    }
    let width = cx.block_dim(p, q);
    let y = y_basis(cx, r, p, q)?;
    let x = x_basis(cx, r, p, q)?;
    let (_, reps) = independent_subset(&y, x, width);
    Ok(reps.iter().map(|v| cx.form_from_coordinates(p as usize, q as usize, v)).collect())
}

/// Whether two families of `(p,q)`-forms span the same subspace of
/// `E_r^{p,q}`, i.e. the same subspace of `Λ^{p,q}` modulo `Y_r`.
pub fn same_classes(cx: &ComplexModel, r: usize, p: i64, q: i64, a: &[Form], b: &[Form]) -> Result<bool, FssError> {
    let width = cx.block_dim(p, q);
    let y = y_basis(cx, r, p, q)?;
    let to_coords = |fs: &[Form]| -> Result<Vec<Vec<GaussianRational>>, FssError> { fs.iter().map(|f| coords(cx, f, p, q)).collect() };
    let (ca, cb) = (to_coords(a)?, to_coords(b)?);
    let ya = [y.clone(), ca.clone()].concat();
    let yb = [y.clone(), cb].concat();
    let yab = [ya.clone(), yb.clone()].concat();
    let (ra, rb, rab) = (span_rank(&ya, width), span_rank(&yb, width), span_rank(&yab, width));
    Ok(ra == rab && rb == rab)
}
