//! Invariant Hermitian metrics and the special-metric predicates.
//!
//! A metric is stored through its coefficient matrix `H`, with fundamental
//! form `F = i Σ_{k,l} H_kl ω^k ∧ ω̄^l`. In the `x` coordinates of a metric
//! file, `H_kk = x_kk` and `H_kl = -i x_kl` for `k < l`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::catalog::FamilyTuple;
use crate::exterior::{low_bits, Form, Mask, MAX_DIM};
use crate::linalg::reference::determinant;
use crate::linalg::{GaussianRational, Rational};
use crate::model::{ComplexModel, Cursor, ParseError, ParseErrorKind, Scope};

type G = GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HermitianError {
    #[error("matrix is not square of size {0}")]
    NotSquare(usize),
    #[error("matrix is not Hermitian at ({0},{1})")]
    NotHermitian(usize, usize),
    #[error("matrix is not positive definite")]
    NotPositive,
    #[error("metric has dimension {metric}, model has dimension {model}")]
    DimensionMismatch { metric: usize, model: usize },
    #[error("index ({0},{1}) outside 1..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("Gauduchon order {k} outside 1..{max}")]
    OrderOutOfRange { k: usize, max: usize },
    #[error("top form of F^n vanishes")]
    Degenerate,
    #[error("c1 has nonzero imaginary part {0}")]
    ComplexC1(String),
    #[error("residuals are defined for complex dimension 4 only")]
    NotFourDimensional,
    #[error("invalid family tuple: {0}")]
    InvalidTuple(String),
}

/// An invariant Hermitian metric on an `n`-dimensional coframe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMetric {
    name: String,
    h: Vec<Vec<G>>,
    form: Form,
}

impl HermitianMetric {
    /// Build from a Hermitian positive definite matrix.
    pub fn from_h(h: Vec<Vec<G>>) -> Result<Self, HermitianError> {
        check_hermitian(&h)?;
        if !leading_minors_positive(&h) {
            return Err(HermitianError::NotPositive);
        }
        let form = fundamental_form_of(&h);
        Ok(Self { name: "metric".into(), h, form })
    }

    /// Build from real diagonal `x_kk` and complex `x_kl` (`k < l`,
    /// 1-based keys); missing off-diagonal entries are zero.
    pub fn from_x(n: usize, diag: &[Rational], off: &BTreeMap<(usize, usize), G>) -> Result<Self, HermitianError> {
        if diag.len() != n {
            return Err(HermitianError::NotSquare(n));
        }
        let mut h = vec![vec![G::zero(); n]; n];
        for (k, x) in diag.iter().enumerate() {
            h[k][k] = G::from_real(x.clone());
        }
        for (&(k, l), x) in off {
            if k == 0 || l > n || k >= l {
                return Err(HermitianError::IndexOutOfRange(k, l, n));
            }
            let v = -x.mul_i();
            h[l - 1][k - 1] = v.conj();
            h[k - 1][l - 1] = v;
        }
        Self::from_h(h)
    }

    /// `F = (i/2) Σ ρ_k ω^k ∧ ω̄^k`.
    pub fn diagonal(rho: &[Rational]) -> Result<Self, HermitianError> {
        let half = Rational::new(1.into(), 2.into());
        let n = rho.len();
        let h = (0..n).map(|k| (0..n).map(|l| if k == l { G::from_real(&rho[k] * &half) } else { G::zero() }).collect()).collect();
        Self::from_h(h)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    pub fn matrix(&self) -> &[Vec<G>] {
        &self.h
    }

    pub fn fundamental_form(&self) -> &Form {
        &self.form
    }

    /// `λ F` for a positive rational `λ`.
    pub fn scaled(&self, lambda: &Rational) -> Result<Self, HermitianError> {
        Self::from_h(self.h.iter().map(|row| row.iter().map(|x| x.scale(lambda)).collect()).collect())
    }

    /// Determinant of `H` with row `r` and column `s` removed, unsigned.
    pub fn cofactor(&self, r: usize, s: usize) -> Result<G, HermitianError> {
        cofactor(&self.h, r, s)
    }

    /// Metric-file text.
    pub fn to_metric_file(&self) -> String {
        let n = self.dim();
        let mut out = format!("metric \"{}\" dim {n}\n", self.name);
        for k in 0..n {
            out.push_str(&format!("x {} {} = {}\n", k + 1, k + 1, self.h[k][k].re()));
        }
        for k in 0..n {
            for l in k + 1..n {
                // x_kl = i H_kl
                let x = self.h[k][l].mul_i();
                if !x.is_zero() {
                    out.push_str(&format!("x {} {} = {}\n", k + 1, l + 1, x.to_pair_string()));
                }
            }
        }
        out
    }
}

fn check_hermitian(h: &[Vec<G>]) -> Result<(), HermitianError> {
    let n = h.len();
    if h.iter().any(|row| row.len() != n) {
        return Err(HermitianError::NotSquare(n));
    }
    for (k, row) in h.iter().enumerate() {
        for (l, v) in row.iter().enumerate().skip(k) {
            if *v != h[l][k].conj() {
                return Err(HermitianError::NotHermitian(k + 1, l + 1));
            }
        }
    }
    Ok(())
}

fn leading_minors_positive(h: &[Vec<G>]) -> bool {
    (1..=h.len()).all(|k| {
        let sub: Vec<Vec<G>> = h[..k].iter().map(|row| row[..k].to_vec()).collect();
        let d = determinant(&sub);
        d.im().is_zero() && d.re() > &Rational::zero()
    })
}

/// Sylvester's criterion on an exact Hermitian matrix.
pub fn is_positive_definite(h: &[Vec<G>]) -> Result<bool, HermitianError> {
    check_hermitian(h)?;
    Ok(leading_minors_positive(h))
}

/// Unsigned minor of `h` at 1-based `(r, s)`.
pub fn cofactor(h: &[Vec<G>], r: usize, s: usize) -> Result<G, HermitianError> {
    let n = h.len();
    if r == 0 || s == 0 || r > n || s > n {
        return Err(HermitianError::IndexOutOfRange(r, s, n));
    }
    let sub: Vec<Vec<G>> = h
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != r - 1)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != s - 1).map(|(_, x)| x.clone()).collect())
        .collect();
    Ok(determinant(&sub))
}

fn fundamental_form_of(h: &[Vec<G>]) -> Form {
    let n = h.len();
    let mut f = Form::zero(n);
    for (k, row) in h.iter().enumerate() {
        for (l, v) in row.iter().enumerate() {
            if !v.is_zero() {
                // ω^k ∧ ω̄^l is already in canonical order.
                let mask: Mask = (1 << k) | (1 << (n + l));
                f.add_term(mask, v.mul_i());
            }
        }
    }
    f
}

fn same_dim(model: &ComplexModel, metric: &HermitianMetric) -> Result<usize, HermitianError> {
    if model.dim() != metric.dim() {
        return Err(HermitianError::DimensionMismatch { metric: metric.dim(), model: model.dim() });
    }
    Ok(model.dim())
}

/// `∂F ∧ F^{n-2}`, or `dF` when `n = 2`.
pub fn balanced_obstruction(model: &ComplexModel, metric: &HermitianMetric) -> Result<Form, HermitianError> {
    let n = same_dim(model, metric)?;
    let f = metric.fundamental_form();
    Ok(match n {
        1 => Form::zero(1),
        2 => model.differential(f).0,
        _ => model.del(f).wedge(&f.pow(n - 2)),
    })
}

pub fn is_balanced(model: &ComplexModel, metric: &HermitianMetric) -> Result<bool, HermitianError> {
    Ok(balanced_obstruction(model, metric)?.is_zero())
}

pub fn is_skt(model: &ComplexModel, metric: &HermitianMetric) -> Result<bool, HermitianError> {
    same_dim(model, metric)?;
    Ok(model.del(&model.delbar(metric.fundamental_form())).is_zero())
}

/// `∂∂̄(F^k) ∧ F^{n-k-1} = 0` for `1 ≤ k ≤ n-1`.
pub fn is_kth_gauduchon(model: &ComplexModel, metric: &HermitianMetric, k: usize) -> Result<bool, HermitianError> {
    let n = same_dim(model, metric)?;
    if k == 0 || k + 1 > n {
        return Err(HermitianError::OrderOutOfRange { k, max: n.saturating_sub(1) });
    }
    let f = metric.fundamental_form();
    let ddb = model.del(&model.delbar(&f.pow(k)));
    Ok(ddb.wedge(&f.pow(n - k - 1)).is_zero())
}

pub fn is_standard(model: &ComplexModel, metric: &HermitianMetric) -> Result<bool, HermitianError> {
    let n = same_dim(model, metric)?;
    if n < 2 {
        return Err(HermitianError::OrderOutOfRange { k: 1, max: 0 });
    }
    is_kth_gauduchon(model, metric, n - 1)
}

/// The constant `c` with `(i/2) ∂∂̄F ∧ F^{n-2} = c F^n`.
pub fn c1_constant(model: &ComplexModel, metric: &HermitianMetric) -> Result<Rational, HermitianError> {
    let n = same_dim(model, metric)?;
    if n < 2 {
        return Err(HermitianError::OrderOutOfRange { k: 1, max: 0 });
    }
    if n == 2 {
        return Ok(Rational::zero());
    }
    let f = metric.fundamental_form();
    let top: Mask = low_bits(2 * n);
    let vol = f.pow(n).coeff(top);
    if vol.is_zero() {
        return Err(HermitianError::Degenerate);
    }
    let half_i = G::new(Rational::zero(), Rational::new(1.into(), 2.into()));
    let lhs = model.del(&model.delbar(f)).wedge(&f.pow(n - 2)).coeff(top) * half_i;
    let c = lhs / vol;
    if !c.im().is_zero() {
        return Err(HermitianError::ComplexC1(c.to_pair_string()));
    }
    Ok(c.re().clone())
}

/// Coefficients `(A, B, C)` of `(1/2) ∂F ∧ F^2` on `ω^{1234 1̄2̄3̄}`,
/// `ω^{1234 1̄2̄4̄}`, `ω^{1234 1̄3̄4̄}`, from closed formulas in the minors
/// of `H`.
pub fn family_balance_residuals(tuple: &FamilyTuple, metric: &HermitianMetric) -> Result<[G; 3], HermitianError> {
    if metric.dim() != 4 {
        return Err(HermitianError::NotFourDimensional);
    }
    tuple.validate().map_err(|e| HermitianError::InvalidTuple(e.to_string()))?;
    let m = |r, s| metric.cofactor(r, s);
    let (h11, h12, h13, h14, h22, h24) = (m(1, 1)?, m(1, 2)?, m(1, 3)?, m(1, 4)?, m(2, 2)?, m(2, 4)?);
    let i = G::i();
    let re = |x: &Rational| G::from_real(x.clone());
    let im_part = |x: &G| G::from_real(x.im().clone());
    let two = G::from_int(2);
    Ok(match tuple {
        FamilyTuple::I(t) => {
            let (eps, nu, a, b) = (G::from_int(t.eps.into()), G::from_int(t.nu.into()), re(&t.a), re(&t.b));
            let delta = G::from_int(t.delta.into());
            let a_c = -(&nu * &h11) - &i * &b * &h22 + &two * &i * &delta * im_part(&h13);
            let b_c = -(&delta * &eps * &b * h12.conj()) - &i * &a * &h12 - &i * h14.conj();
            let c_c = -(&i * &eps * &h11);
            [a_c, b_c, c_c]
        }
        FamilyTuple::II(t) => {
            let (eps, mu, nu, a, b) = (G::from_int(t.eps.into()), G::from_int(t.mu.into()), G::from_int(t.nu.into()), re(&t.a), re(&t.b));
            let a_c = -(&nu * &h11) + &i * (&mu * &h22 - &two * &b * im_part(&h12) + &two * im_part(&h13));
            let b_c = -(&two * &eps * im_part(&h12)) + &mu * h24.conj() + &i * &a * &h11;
            let c_c = &i * h14.conj();
            [a_c, b_c, c_c]
        }
    })
}

/// The same three coefficients read off a direct computation of
/// `(1/2) ∂F ∧ F^2`.
pub fn direct_balance_coefficients(model: &ComplexModel, metric: &HermitianMetric) -> Result<[G; 3], HermitianError> {
    let n = same_dim(model, metric)?;
    if n != 4 {
        return Err(HermitianError::NotFourDimensional);
    }
    let f = metric.fundamental_form();
    let half = G::new(Rational::new(1.into(), 2.into()), Rational::zero());
    let w = model.del(f).wedge(&f.pow(2)).scale(&half);
    let anti = |bits: &[usize]| -> Mask { 0x0F | bits.iter().fold(0, |acc, b| acc | (1 << (4 + b - 1))) };
    Ok([w.coeff(anti(&[1, 2, 3])), w.coeff(anti(&[1, 2, 4])), w.coeff(anti(&[1, 3, 4]))])
}

/// Parse a metric file:
///
/// ```text
/// metric "unit" dim 3
/// x 1 1 = 1/2
/// x 1 2 = (0,1/3)
/// ```
pub fn parse_metric(text: &str) -> Result<HermitianMetric, ParseError> {
    let err = |line, kind| ParseError { line, kind };
    let declared: Vec<String> = Vec::new();
    let bound = BTreeMap::new();
    let scope = Scope { declared: &declared, bound: &bound };
    let mut header: Option<(String, usize, usize)> = None;
    let mut diag: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut off: BTreeMap<(usize, usize), G> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut cur = Cursor::new(raw.split('#').next().unwrap_or(""));
        if cur.at_end() {
            continue;
        }
        match (cur.ident().as_deref(), &header) {
            (Some("metric"), None) => {
                let name = cur.quoted().map_err(|k| err(line, k))?;
                cur.keyword("dim").map_err(|k| err(line, k))?;
                let n = cur.integer().filter(|&n| n >= 1 && n as usize <= MAX_DIM).ok_or(err(line, ParseErrorKind::BadDimension))?;
                header = Some((name, n as usize, line));
            }
            (Some("x"), Some((_, n, _))) => {
                let n = *n;
                let k = cur.integer().ok_or_else(|| err(line, cur.unexpected("a row index")))?;
                let l = cur.integer().ok_or_else(|| err(line, cur.unexpected("a column index")))?;
                if k < 1 || l < k || l as usize > n {
                    return Err(err(line, ParseErrorKind::Syntax(format!("need 1 <= k <= l <= {n}, got {k} {l}"))));
                }
                cur.expect(b'=').map_err(|k| err(line, k))?;
                let (k, l) = (k as usize, l as usize);
                let dup = if k == l {
                    let v = cur.expr(&scope).map_err(|e| err(line, e))?;
                    diag.insert(k, v).is_some()
                } else {
                    let v = cur.complex(&scope).map_err(|e| err(line, e))?;
                    off.insert((k, l), v).is_some()
                };
                if dup {
                    return Err(err(line, ParseErrorKind::Syntax(format!("entry {k} {l} given twice"))));
                }
                if !cur.at_end() {
                    return Err(err(line, cur.unexpected("end of line")));
                }
            }
            (Some("metric"), Some(_)) => return Err(err(line, ParseErrorKind::Syntax("second metric header".into()))),
            (_, None) => return Err(err(line, ParseErrorKind::Syntax("file must start with a metric header".into()))),
            (other, Some(_)) => {
                return Err(err(line, ParseErrorKind::Syntax(format!("unknown keyword '{}'", other.unwrap_or("")))));
            }
        }
    }
    let Some((name, n, header_line)) = header else {
        return Err(err(1, ParseErrorKind::Syntax("missing metric header".into())));
    };
    let diag: Vec<Rational> = (1..=n)
        .map(|k| diag.get(&k).cloned().ok_or_else(|| err(header_line, ParseErrorKind::Syntax(format!("missing diagonal entry x {k} {k}")))))
        .collect::<Result<_, _>>()?;
    HermitianMetric::from_x(n, &diag, &off).map(|m| m.with_name(name)).map_err(|e| err(header_line, ParseErrorKind::Syntax(e.to_string())))
}

/// `F = (i/2) Σ ω^k ∧ ω̄^k`.
pub fn unit_metric(n: usize) -> HermitianMetric {
    HermitianMetric::diagonal(&vec![Rational::one(); n]).expect("positive weights")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn g(re: i64, im: i64) -> G {
        G::from_ratios(re, 1, im, 1)
    }

    #[test]
    fn positivity() {
        let id: Vec<Vec<G>> = (0..4).map(|k| (0..4).map(|l| g(i64::from(k == l), 0)).collect()).collect();
        assert!(is_positive_definite(&id).unwrap());
        let mut neg = id.clone();
        neg[1][1] = g(-1, 0);
        assert!(!is_positive_definite(&neg).unwrap());
        let mut bad = id;
        bad[0][1] = g(0, 1);
        assert!(is_positive_definite(&bad).is_err());
    }

    #[test]
    fn metric_file_round_trip() {
        let text = "metric \"m\" dim 3\nx 1 1 = 1/2\nx 2 2 = 1\nx 3 3 = 2 # weight\nx 1 3 = (0,1/4)\n";
        let m = parse_metric(text).unwrap();
        assert_eq!(m.matrix()[0][2], G::from_ratios(1, 4, 0, 1));
        assert_eq!(m.fundamental_form().conj(), *m.fundamental_form());
        assert_eq!(parse_metric(&m.to_metric_file()).unwrap(), m);
        assert_eq!(parse_metric("metric \"m\" dim 2\nx 1 1 = 1\n").unwrap_err().line, 1);
        assert_eq!(parse_metric("metric \"m\" dim 2\nx 1 1 = 1\nx 2 2 = -1\n").unwrap_err().line, 1);
        assert_eq!(parse_metric("metric \"m\" dim 2\nx 2 1 = (0,1)\n").unwrap_err().line, 2);
    }

    #[test]
    fn diagonal_weights() {
        let m = HermitianMetric::diagonal(&[rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(m.matrix()[1][1], g(1, 0));
        let f = m.fundamental_form();
        assert_eq!(f.coeff(0b0101), G::from_ratios(0, 1, 1, 2));
    }
}
