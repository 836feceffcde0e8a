//! Bigraded exterior algebra on `ω^1..ω^n, ω̄^1..ω̄^n`.
//!
//! A monomial is a bitmask: bit `k-1` is `ω^k` and bit `n+k-1` is `ω̄^k`.
//! The canonical order of factors is ascending bit order, so all
//! holomorphic factors come first.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::linalg::GaussianRational;

pub type Mask = u64;

/// Largest supported complex dimension.
pub const MAX_DIM: usize = 32;

/// Sign of `a ∧ b` relative to the canonical monomial `a | b`, or `None`
/// if the factors overlap.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> y >> 1).count_ones();
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Holomorphic and antiholomorphic degrees of a monomial.
pub fn bidegree_of(mask: Mask, n: usize) -> (usize, usize) {
    let hol = mask & low_bits(n);
    ((hol.count_ones()) as usize, (mask >> n).count_ones() as usize)
}

pub(crate) fn low_bits(n: usize) -> Mask {
    if n >= 64 {
        Mask::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Build a mask from 1-based indices; negative indices are conjugates.
/// Returns the sign needed to reorder the listed factors canonically, or
/// `None` when an index repeats or is out of range.
pub fn monomial_from_indices(n: usize, idx: &[i64]) -> Option<(Mask, i8)> {
    let mut mask: Mask = 0;
    let mut sign = 1i8;
    for &k in idx {
        let a = k.unsigned_abs() as usize;
        if a == 0 || a > n {
            return None;
        }
        let bit = if k > 0 { a - 1 } else { n + a - 1 };
        let m = 1u64 << bit;
        sign *= wedge_sign(mask, m)?;
        mask |= m;
    }
    Some((mask, sign))
}

/// Canonical index list of a monomial, conjugates negative.
pub fn indices_of(mask: Mask, n: usize) -> Vec<i64> {
    (0..2 * n).filter(|b| mask >> b & 1 == 1).map(|b| if b < n { b as i64 + 1 } else { -((b - n) as i64 + 1) }).collect()
}

/// Conjugate monomial and the sign `(-1)^{pq}` picked up by reordering.
pub fn conj_mask(mask: Mask, n: usize) -> (Mask, i8) {
    let hol = mask & low_bits(n);
    let anti = mask >> n;
    let (p, q) = (hol.count_ones(), anti.count_ones());
    let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
    (anti | (hol << n), sign)
}

/// Render a monomial as `w[1,-2]`.
pub fn format_monomial(mask: Mask, n: usize) -> String {
    let idx: Vec<String> = indices_of(mask, n).iter().map(i64::to_string).collect();
    format!("w[{}]", idx.join(","))
}

/// A differential form with Gaussian rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Mask, GaussianRational>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "complex dimension {n} exceeds {MAX_DIM}");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, GaussianRational::from_int(1))
    }

    pub fn monomial(n: usize, mask: Mask, c: GaussianRational) -> Self {
        let mut f = Self::zero(n);
        f.add_term(mask, c);
        f
    }

    /// `c · ω^{i_1} ∧ ... ` from 1-based indices (negative = conjugate).
    pub fn from_indices(n: usize, idx: &[i64], c: GaussianRational) -> Option<Self> {
        let (mask, sign) = monomial_from_indices(n, idx)?;
        let c = if sign < 0 { -c } else { c };
        Some(Self::monomial(n, mask, c))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Mask, GaussianRational)>) -> Self {
        let mut f = Self::zero(n);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &GaussianRational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: Mask) -> GaussianRational {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mask: Mask, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "forms over different dimensions");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GaussianRational::from_int(-1)))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "forms over different dimensions");
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(s) = wedge_sign(*a, *b) {
                    let c = ca * cb;
                    out.add_term(a | b, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(m, c)| {
                let (cm, s) = conj_mask(*m, self.n);
                let c = c.conj();
                (cm, if s < 0 { -c } else { c })
            }),
        )
    }

    /// The `(p,q)` component.
    pub fn component(&self, p: usize, q: usize) -> Self {
        let n = self.n;
        Self::from_terms(n, self.terms.iter().filter(|(m, _)| bidegree_of(**m, n) == (p, q)).map(|(m, c)| (*m, c.clone())))
    }

    /// Bidegrees that occur, ascending.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(|m| bidegree_of(*m, self.n)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Re-embed into dimension `new_n`, shifting holomorphic and conjugate
    /// indices by `offset`.
    pub fn embed(&self, new_n: usize, offset: usize) -> Self {
        assert!(offset + self.n <= new_n, "embedding does not fit");
        Self::from_terms(
            new_n,
            self.terms.iter().map(|(m, c)| {
                let hol = m & low_bits(self.n);
                let anti = m >> self.n;
                ((hol << offset) | (anti << (new_n + offset)), c.clone())
            }),
        )
    }

    /// Model-file syntax, e.g. `(1,0) w[1,4] + (0,-1) w[2,-1]`; `0` if empty.
    pub fn to_model_syntax(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| format!("{} {}", c.to_pair_string(), format_monomial(m, self.n)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn sorted_terms(&self) -> Vec<(Mask, &GaussianRational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(m, _)| {
            let (p, q) = bidegree_of(*m, self.n);
            (p + q, std::cmp::Reverse(p), indices_of(*m, self.n).iter().map(|k| k.abs()).collect::<Vec<_>>())
        });
        v
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.sorted_terms().into_iter().map(|(m, c)| format!("({}) {}", c, format_monomial(m, self.n))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn anticommutation() {
        let a = Form::from_indices(3, &[1], g(1)).unwrap();
        let b = Form::from_indices(3, &[-2], g(1)).unwrap();
        assert_eq!(a.wedge(&b), b.wedge(&a).scale(&g(-1)));
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn index_ordering_sign() {
        let (m, s) = monomial_from_indices(4, &[-1, 2]).unwrap();
        assert_eq!(s, -1);
        assert_eq!(indices_of(m, 4), vec![2, -1]);
        assert!(monomial_from_indices(4, &[3, 3]).is_none());
        assert!(monomial_from_indices(4, &[5]).is_none());
    }

    #[test]
    fn conjugation_sign() {
        // conj(ω^1 ∧ ω̄^2) = ω̄^1 ∧ ω^2 = -ω^2 ∧ ω̄^1
        let f = Form::from_indices(2, &[1, -2], GaussianRational::i()).unwrap();
        let expect = Form::from_indices(2, &[2, -1], GaussianRational::i()).unwrap();
        assert_eq!(f.conj(), expect);
        assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn embedding() {
        let f = Form::from_indices(2, &[1, -2], g(1)).unwrap();
        let e = f.embed(5, 3);
        assert_eq!(e, Form::from_indices(5, &[4, -5], g(1)).unwrap());
    }

    #[test]
    fn syntax() {
        let f = Form::from_indices(4, &[2, -1], g(-1)).unwrap().add(&Form::from_indices(4, &[1, 4], g(1)).unwrap());
        assert_eq!(f.to_model_syntax(), "(1,0) w[1,4] + (-1,0) w[2,-1]");
    }
}
