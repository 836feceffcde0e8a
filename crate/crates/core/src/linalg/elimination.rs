//! Fraction-free sparse elimination over the Gaussian integers.
//!
//! Each input row is scaled to Z[i] by clearing denominators. A row update
//! `row <- p' row - a' pivot` uses the cofactors of `gcd(p, a)` in Z[i], and
//! every new row is divided by the integer content of its entries, so the
//! working rows stay primitive. Pivots follow a Markowitz rule: the column
//! with the fewest live entries, then the shortest row in it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{GaussianRational, Rational, SparseMatrix};

/// Gaussian integer `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_unit(&self) -> bool {
        (self.im.is_zero() && self.re.magnitude().is_one()) || (self.re.is_zero() && self.im.magnitude().is_one())
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn conj(&self) -> GaussInt {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }

    /// Exact quotient; the caller guarantees divisibility.
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            return GaussInt { re: &self.re / &d.re, im: &self.im / &d.re };
        }
        let num = self.mul(&d.conj());
        let n = d.norm();
        GaussInt { re: num.re / &n, im: num.im / &n }
    }

    /// Nearest-integer quotient, used by the Euclidean algorithm.
    fn div_round(&self, d: &GaussInt) -> GaussInt {
        let num = self.mul(&d.conj());
        let n = d.norm();
        let two_n = &n * 2;
        let round = |x: BigInt| -> BigInt { Integer::div_floor(&(x * 2 + &n), &two_n) };
        GaussInt { re: round(num.re), im: round(num.im) }
    }

    fn gcd(a: &GaussInt, b: &GaussInt) -> GaussInt {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a.sub(&q.mul(&b));
            a = b;
            b = r;
        }
        a
    }

    pub(crate) fn to_gaussian_rational(&self) -> GaussianRational {
        GaussianRational::new(Rational::from_integer(self.re.clone()), Rational::from_integer(self.im.clone()))
    }
}

/// A sparse row over Z[i] with strictly increasing column indices.
#[derive(Clone, Debug, Default)]
pub(crate) struct ZRow {
    pub(crate) cols: Vec<usize>,
    pub(crate) vals: Vec<GaussInt>,
}

impl ZRow {
    fn coeff(&self, c: usize) -> Option<&GaussInt> {
        self.cols.binary_search(&c).ok().map(|k| &self.vals[k])
    }

    fn from_rational(cols: Vec<usize>, vals: Vec<&GaussianRational>) -> ZRow {
        let mut l = BigInt::one();
        for v in &vals {
            l = l.lcm(v.re().denom());
            l = l.lcm(v.im().denom());
        }
        let vals = vals
            .into_iter()
            .map(|v| GaussInt { re: v.re().numer() * (&l / v.re().denom()), im: v.im().numer() * (&l / v.im().denom()) })
            .collect();
        let mut row = ZRow { cols, vals };
        row.make_primitive();
        row
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for v in &self.vals {
            g = g.gcd(&v.re);
            g = g.gcd(&v.im);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for v in &mut self.vals {
            v.re /= &g;
            v.im /= &g;
        }
    }

    fn max_bits(&self) -> u64 {
        self.vals.iter().map(GaussInt::bits).max().unwrap_or(0)
    }

    pub(crate) fn to_rational(&self) -> Vec<(usize, GaussianRational)> {
        self.cols.iter().copied().zip(self.vals.iter().map(GaussInt::to_gaussian_rational)).collect()
    }
}

/// Rows in echelon form, each tagged with its pivot column. Row `k` has no
/// entries in the pivot columns of rows `0..k`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Echelon {
    pub(crate) cols: usize,
    pub(crate) pivots: Vec<(usize, ZRow)>,
    pub(crate) max_bits: u64,
}

/// Rank together with the largest intermediate coefficient seen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    /// Largest bit length of any real or imaginary part of a working entry.
    pub max_bits: u64,
}

pub(crate) fn eliminate(m: &SparseMatrix) -> Echelon {
    let ncols = m.cols();
    let mut rows: Vec<Option<ZRow>> = Vec::with_capacity(m.rows());
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut col_cnt = vec![0usize; ncols];
    let mut max_bits = 0;
    for i in 0..m.rows() {
        let (cols, vals): (Vec<usize>, Vec<&GaussianRational>) = m.row(i).unzip();
        if cols.is_empty() {
            continue;
        }
        let row = ZRow::from_rational(cols, vals);
        max_bits = max_bits.max(row.max_bits());
        let id = rows.len();
        for &c in &row.cols {
            col_rows[c].push(id);
            col_cnt[c] += 1;
        }
        rows.push(Some(row));
    }

    let mut done = vec![false; ncols];
    let mut pivots = Vec::new();
    while let Some(c) = (0..ncols).filter(|&c| !done[c] && col_cnt[c] > 0).min_by_key(|&c| col_cnt[c]) {
        done[c] = true;
        let mut cand = std::mem::take(&mut col_rows[c]);
        cand.sort_unstable();
        cand.dedup();
        cand.retain(|&id| rows[id].as_ref().is_some_and(|r| r.coeff(c).is_some()));
        let &pid = cand
            .iter()
            .min_by_key(|&&id| {
                let r = rows[id].as_ref().expect("candidate rows are live");
                (r.cols.len(), !r.coeff(c).expect("candidate has pivot column").is_unit())
            })
            .expect("column count was positive");
        let prow = rows[pid].take().expect("pivot row is live");
        for &cc in &prow.cols {
            col_cnt[cc] -= 1;
        }
        let p = prow.coeff(c).expect("pivot entry").clone();
        for &id in cand.iter().filter(|&&id| id != pid) {
            let row = rows[id].take().expect("candidate rows are live");
            let a = row.coeff(c).expect("candidate has pivot column").clone();
            let (pf, af) = if p.is_unit() {
                // p^{-1} = conj(p) for a unit, so row - a conj(p) pivot clears c.
                (None, a.mul(&p.conj()))
            } else {
                let g = GaussInt::gcd(&p, &a);
                (Some(p.div_exact(&g)), a.div_exact(&g))
            };
            let new = combine(&row, pf.as_ref(), &prow, &af, id, &mut col_rows, &mut col_cnt);
            max_bits = max_bits.max(new.max_bits());
            rows[id] = if new.cols.is_empty() { None } else { Some(new) };
        }
        pivots.push((c, prow));
    }
    Echelon { cols: ncols, pivots, max_bits }
}

/// `pf * row - af * prow`, made primitive, with column bookkeeping.
fn combine(
    row: &ZRow,
    pf: Option<&GaussInt>,
    prow: &ZRow,
    af: &GaussInt,
    id: usize,
    col_rows: &mut [Vec<usize>],
    col_cnt: &mut [usize],
) -> ZRow {
    let scale = |v: &GaussInt| match pf {
        Some(f) => f.mul(v),
        None => v.clone(),
    };
    let mut out = ZRow { cols: Vec::with_capacity(row.cols.len() + prow.cols.len()), vals: Vec::new() };
    let (mut i, mut k) = (0, 0);
    while i < row.cols.len() || k < prow.cols.len() {
        let ci = row.cols.get(i).copied().unwrap_or(usize::MAX);
        let ck = prow.cols.get(k).copied().unwrap_or(usize::MAX);
        if ci < ck {
            out.cols.push(ci);
            out.vals.push(scale(&row.vals[i]));
            i += 1;
        } else if ck < ci {
            out.cols.push(ck);
            out.vals.push(GaussInt { re: BigInt::zero(), im: BigInt::zero() }.sub(&af.mul(&prow.vals[k])));
            col_cnt[ck] += 1;
            col_rows[ck].push(id);
            k += 1;
        } else {
            let v = scale(&row.vals[i]).sub(&af.mul(&prow.vals[k]));
            if v.is_zero() {
                col_cnt[ci] -= 1;
            } else {
                out.cols.push(ci);
                out.vals.push(v);
            }
            i += 1;
            k += 1;
        }
    }
    out.make_primitive();
    out
}

/// Basis of the right kernel by back substitution through the echelon rows.
pub(crate) fn kernel_from_echelon(e: &Echelon) -> Vec<Vec<GaussianRational>> {
    let mut is_pivot = vec![false; e.cols];
    for (c, _) in &e.pivots {
        is_pivot[*c] = true;
    }
    type Row = (usize, GaussianRational, Vec<(usize, GaussianRational)>);
    let rows: Vec<Row> = e
        .pivots
        .iter()
        .map(|(c, r)| {
            let entries = r.to_rational();
            let pv = entries.iter().find(|(j, _)| j == c).expect("pivot entry").1.clone();
            let rest = entries.into_iter().filter(|(j, _)| j != c).collect();
            (*c, pv, rest)
        })
        .collect();
    let mut basis = Vec::new();
    for f in (0..e.cols).filter(|&j| !is_pivot[j]) {
        let mut x = vec![GaussianRational::zero(); e.cols];
        x[f] = GaussianRational::from_int(1);
        for (c, pv, rest) in rows.iter().rev() {
            let s: GaussianRational = rest.iter().filter(|(j, _)| !x[*j].is_zero()).map(|(j, v)| v * &x[*j]).sum();
            if !s.is_zero() {
                x[*c] = -(&s / pv);
            }
        }
        basis.push(x);
    }
    basis
}
