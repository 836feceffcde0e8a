//! Chevalley–Eilenberg cochains of a finite-dimensional Lie algebra,
//! given by the differentials of a dual basis.

use num_traits::Zero;

use crate::exec::Exec;
use crate::exterior::{wedge_sign, Mask};
use crate::linalg::{kernel_basis, rank, GaussianRational, SparseMatrix};

/// `Λ^• g*` on generators `e^1..e^m` (bit `k-1` is `e^k`) with a
/// differential determined by the 2-forms `d e^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochains {
    m: usize,
    dgen: Vec<Vec<(Mask, GaussianRational)>>,
}

impl Cochains {
    pub fn new(m: usize, dgen: Vec<Vec<(Mask, GaussianRational)>>) -> Self {
        assert!(m <= 64 && dgen.len() == m, "one differential per generator");
        Self { m, dgen }
    }

    pub fn generators(&self) -> usize {
        self.m
    }

    pub fn dgen(&self, k: usize) -> &[(Mask, GaussianRational)] {
        &self.dgen[k]
    }

    /// `d` of a monomial by the Leibniz rule.
    pub fn apply(&self, mask: Mask, out: &mut Vec<(Mask, GaussianRational)>) {
        let mut rest = mask;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = mask & ((1u64 << j) - 1);
            let after = mask & !((1u64 << j) | before);
            let s0 = if before.count_ones().is_multiple_of(2) { 1 } else { -1 };
            for (m2, c) in &self.dgen[j] {
                let Some(s1) = wedge_sign(before, *m2) else { continue };
                let Some(s2) = wedge_sign(before | m2, after) else { continue };
                let c = c.clone();
                out.push((before | m2 | after, if s0 * s1 * s2 < 0 { -c } else { c }));
            }
        }
    }

    /// `d` of a combination of monomials, with like terms collected.
    pub fn apply_sum<'a>(&self, terms: impl IntoIterator<Item = (Mask, &'a GaussianRational)>) -> Vec<(Mask, GaussianRational)> {
        let mut acc = std::collections::BTreeMap::<Mask, GaussianRational>::new();
        let mut buf = Vec::new();
        for (m, c) in terms {
            buf.clear();
            self.apply(m, &mut buf);
            for (m2, c2) in buf.drain(..) {
                *acc.entry(m2).or_default() += &c2 * c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Generators whose `d(d e^k)` is nonzero.
    pub fn non_closed_squares(&self) -> Vec<usize> {
        (0..self.m).filter(|&k| !self.apply_sum(self.dgen[k].iter().map(|(m, c)| (*m, c))).is_empty()).collect()
    }

    /// Monomials of degree `k`, ascending as integers.
    pub fn basis(&self, k: usize) -> Vec<Mask> {
        combinations(self.m, k)
    }

    /// Matrix of `d: Λ^k → Λ^{k+1}` in the monomial bases.
    pub fn matrix(&self, k: usize) -> SparseMatrix {
        let src = self.basis(k);
        let dst = self.basis(k + 1);
        let index: std::collections::HashMap<Mask, usize> = dst.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut trip = Vec::new();
        let mut buf = Vec::new();
        for (j, m) in src.iter().enumerate() {
            buf.clear();
            self.apply(*m, &mut buf);
            for (m2, c) in buf.drain(..) {
                trip.push((index[&m2], j, c));
            }
        }
        SparseMatrix::from_triplets(dst.len(), src.len(), trip).expect("indices come from the bases")
    }

    /// Betti numbers `b_0..b_m` of the cochain complex.
    pub fn betti(&self, exec: Exec) -> Vec<usize> {
        let degrees: Vec<usize> = (0..=self.m).collect();
        let ranks = exec.map(&degrees, |&k| if k == self.m { 0 } else { rank(&self.matrix(k)) });
        (0..=self.m)
            .map(|k| {
                let dim = binomial(self.m, k);
                dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }
            })
            .collect()
    }

    /// Dimensions of the ascending central series `g_1 ⊂ g_2 ⊂ ...` of the
    /// dual Lie algebra, stopping at the full algebra. Stops early (without
    /// reaching `m`) if the algebra is not nilpotent.
    pub fn ascending_type(&self) -> Vec<usize> {
        let m = self.m;
        // Coefficient of e^{ij} (i<j) in d e^k, i.e. (d e^k)(e_i, e_j).
        let coeff = |k: usize, i: usize, j: usize| -> GaussianRational {
            let (mask, sign) = if i < j { ((1u64 << i) | (1u64 << j), 1) } else { ((1u64 << i) | (1u64 << j), -1) };
            let c = self.dgen[k].iter().find(|(mm, _)| *mm == mask).map(|(_, c)| c.clone()).unwrap_or_default();
            if sign < 0 {
                -c
            } else {
                c
            }
        };
        // Annihilator of the current ideal, as covectors.
        let mut ann: Vec<Vec<GaussianRational>> =
            (0..m).map(|k| (0..m).map(|i| GaussianRational::from_int(i64::from(i == k))).collect()).collect();
        let mut dims = Vec::new();
        loop {
            // X lies in the next term iff phi([X, e_j]) = 0 for every phi in
            // the annihilator and every j.
            let mut trip = Vec::new();
            let mut row = 0;
            for phi in &ann {
                for j in 0..m {
                    for i in 0..m {
                        if i == j {
                            continue;
                        }
                        let v: GaussianRational = (0..m).filter(|&k| !phi[k].is_zero()).map(|k| &phi[k] * &coeff(k, i, j)).sum();
                        if !v.is_zero() {
                            trip.push((row, i, v));
                        }
                    }
                    row += 1;
                }
            }
            let mat = SparseMatrix::from_triplets(row, m, trip).expect("indices in range");
            let next = kernel_basis(&mat);
            let dim = next.len();
            if dims.last() == Some(&dim) {
                return dims;
            }
            dims.push(dim);
            if dim == m {
                return dims;
            }
            let span = SparseMatrix::from_dense(m, &next).expect("kernel vectors have length m");
            ann = kernel_basis(&span);
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..m` as masks, in increasing numeric order.
pub(crate) fn combinations(m: usize, k: usize) -> Vec<Mask> {
    combinations_of(&(0..m).collect::<Vec<_>>(), k)
}

/// All `k`-subsets of the given bit positions, in lexicographic order of
/// the positions.
pub(crate) fn combinations_of(bits: &[usize], k: usize) -> Vec<Mask> {
    let n = bits.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | (1u64 << bits[i])));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            break;
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
    out.sort_unstable();
    out
}
