//! Nilpotent Lie algebras with an invariant complex structure, described by
//! `d ω^k` for a basis of (1,0)-forms.

mod cochains;
mod expr;
mod parse;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::exec::Exec;
use crate::exterior::{bidegree_of, conj_mask, low_bits, Form, Mask, MAX_DIM};
use crate::linalg::{GaussianRational, SparseMatrix};

pub use cochains::Cochains;
pub(crate) use cochains::{binomial, combinations_of};
pub(crate) use expr::{Cursor, Scope};
pub use parse::{parse_form, parse_model, ParamKind, ParamSpec, ParsedModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("parameter '{0}' is declared but has no value")]
    UnboundParameter(String),
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("parameter '{name}' must be {expected}, got {value}")]
    InvalidParameterValue { name: String, expected: String, value: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension must be between 1 and {MAX_DIM}")]
    BadDimension,
    #[error("index out of range or repeated in w[...]")]
    BadMonomial,
    #[error("d {0} is not a 2-form")]
    NotTwoForm(usize),
    #[error("d {0} given twice")]
    DuplicateDifferential(usize),
    #[error("d {0} is missing")]
    MissingDifferential(usize),
    #[error("d {0} has a nonzero (0,2) component; the structure is not integrable")]
    NotIntegrable(usize),
    #[error("d(d ω^{0}) is nonzero")]
    NotNilpotentSquare(usize),
}

/// A parse or validation error tied to a 1-based source line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("dimension must be between 1 and {MAX_DIM}, got {0}")]
    BadDimension(usize),
    #[error("expected {expected} differentials, got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("d ω^{0} is not a 2-form in this dimension")]
    NotTwoForm(usize),
    #[error("d ω^{0} has a nonzero (0,2) component")]
    NotIntegrable(usize),
    #[error("d(d ω^{0}) is nonzero")]
    NotNilpotentSquare(usize),
}

/// Monomial basis of `Λ^{p,q}`.
#[derive(Debug)]
pub struct Basis {
    pub masks: Vec<Mask>,
    index: HashMap<Mask, usize>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn index_of(&self, m: Mask) -> Option<usize> {
        self.index.get(&m).copied()
    }
}

/// A complex structure on a nilpotent Lie algebra of complex dimension `n`.
#[derive(Clone)]
pub struct ComplexModel {
    name: String,
    n: usize,
    d: Vec<Form>,
    cochains: Cochains,
    bases: Arc<Vec<OnceLock<Arc<Basis>>>>,
    del: Arc<Vec<OnceLock<Arc<SparseMatrix>>>>,
    delbar: Arc<Vec<OnceLock<Arc<SparseMatrix>>>>,
}

impl std::fmt::Debug for ComplexModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComplexModel").field("name", &self.name).field("n", &self.n).field("d", &self.d).finish()
    }
}

impl PartialEq for ComplexModel {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.n == other.n && self.d == other.d
    }
}

impl ComplexModel {
    /// Validate and build from `d ω^1, ..., d ω^n`.
    pub fn new(name: impl Into<String>, n: usize, d: Vec<Form>) -> Result<Self, ModelError> {
        if n == 0 || n > MAX_DIM {
            return Err(ModelError::BadDimension(n));
        }
        if d.len() != n {
            return Err(ModelError::WrongCount { expected: n, found: d.len() });
        }
        for (k, f) in d.iter().enumerate() {
            if f.dim() != n || f.terms().any(|(m, _)| m.count_ones() != 2) {
                return Err(ModelError::NotTwoForm(k + 1));
            }
            if !f.component(0, 2).is_zero() {
                return Err(ModelError::NotIntegrable(k + 1));
            }
        }
        let mut dgen: Vec<Vec<(Mask, GaussianRational)>> = d.iter().map(|f| f.terms().map(|(m, c)| (m, c.clone())).collect()).collect();
        for f in &d {
            dgen.push(f.conj().terms().map(|(m, c)| (m, c.clone())).collect());
        }
        let cochains = Cochains::new(2 * n, dgen);
        if let Some(&k) = cochains.non_closed_squares().first() {
            return Err(ModelError::NotNilpotentSquare(k % n + 1));
        }
        let slots = (n + 1) * (n + 1);
        Ok(Self {
            name: name.into(),
            n,
            d,
            cochains,
            bases: Arc::new((0..slots).map(|_| OnceLock::new()).collect()),
            del: Arc::new((0..slots).map(|_| OnceLock::new()).collect()),
            delbar: Arc::new((0..slots).map(|_| OnceLock::new()).collect()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        let mut m = self.clone();
        m.name = name.into();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `d ω^k` for 1-based `k`.
    pub fn d_omega(&self, k: usize) -> &Form {
        &self.d[k - 1]
    }

    pub fn differentials(&self) -> &[Form] {
        &self.d
    }

    pub fn cochains(&self) -> &Cochains {
        &self.cochains
    }

    fn slot(&self, p: usize, q: usize) -> usize {
        p * (self.n + 1) + q
    }

    /// Monomial basis of `Λ^{p,q}`: holomorphic part outer, both parts in
    /// lexicographic order of indices.
    pub fn basis(&self, p: usize, q: usize) -> Arc<Basis> {
        assert!(p <= self.n && q <= self.n, "bidegree ({p},{q}) out of range");
        self.bases[self.slot(p, q)]
            .get_or_init(|| {
                let hol = combinations_of(&(0..self.n).collect::<Vec<_>>(), p);
                let anti = combinations_of(&(self.n..2 * self.n).collect::<Vec<_>>(), q);
                let mut masks = Vec::with_capacity(hol.len() * anti.len());
                for h in &hol {
                    for a in &anti {
                        masks.push(h | a);
                    }
                }
                masks.sort_by_key(|m| (lex_key(m & low_bits(self.n)), lex_key(m >> self.n)));
                let index = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
                Arc::new(Basis { masks, index })
            })
            .clone()
    }

    pub fn bidegree_dim(&self, p: usize, q: usize) -> usize {
        if p > self.n || q > self.n {
            0
        } else {
            binomial(self.n, p) * binomial(self.n, q)
        }
    }

    fn operator_matrix(&self, p: usize, q: usize, holo: bool) -> Arc<SparseMatrix> {
        let cache = if holo { &self.del } else { &self.delbar };
        cache[self.slot(p, q)]
            .get_or_init(|| {
                let (tp, tq) = if holo { (p + 1, q) } else { (p, q + 1) };
                let src = self.basis(p, q);
                if tp > self.n || tq > self.n {
                    return Arc::new(SparseMatrix::zeros(0, src.len()));
                }
                let dst = self.basis(tp, tq);
                let mut trip = Vec::new();
                let mut buf = Vec::new();
                for (j, m) in src.masks.iter().enumerate() {
                    buf.clear();
                    self.cochains.apply(*m, &mut buf);
                    for (m2, c) in buf.drain(..) {
                        if let Some(i) = dst.index_of(m2) {
                            trip.push((i, j, c));
                        }
                    }
                }
                Arc::new(SparseMatrix::from_triplets(dst.len(), src.len(), trip).expect("indices come from the bases"))
            })
            .clone()
    }

    /// Matrix of `∂: Λ^{p,q} → Λ^{p+1,q}`.
    pub fn del_matrix(&self, p: usize, q: usize) -> Arc<SparseMatrix> {
        self.operator_matrix(p, q, true)
    }

    /// Matrix of `∂̄: Λ^{p,q} → Λ^{p,q+1}`.
    pub fn delbar_matrix(&self, p: usize, q: usize) -> Arc<SparseMatrix> {
        self.operator_matrix(p, q, false)
    }

    /// `(d x, ∂ x, ∂̄ x)`.
    pub fn differential(&self, x: &Form) -> (Form, Form, Form) {
        let n = self.n;
        let mut d = Form::zero(n);
        let mut del = Form::zero(n);
        let mut delbar = Form::zero(n);
        let mut buf = Vec::new();
        for (m, c) in x.terms() {
            let (p, _) = bidegree_of(m, n);
            buf.clear();
            self.cochains.apply(m, &mut buf);
            for (m2, c2) in buf.drain(..) {
                let v = &c2 * c;
                if bidegree_of(m2, n).0 > p {
                    del.add_term(m2, v.clone());
                } else {
                    delbar.add_term(m2, v.clone());
                }
                d.add_term(m2, v);
            }
        }
        (d, del, delbar)
    }

    pub fn del(&self, x: &Form) -> Form {
        self.differential(x).1
    }

    pub fn delbar(&self, x: &Form) -> Form {
        self.differential(x).2
    }

    /// Coordinates of a `(p,q)`-form in [`Self::basis`]; `None` if the
    /// form has components in other bidegrees.
    pub fn coordinates(&self, x: &Form, p: usize, q: usize) -> Option<Vec<GaussianRational>> {
        let b = self.basis(p, q);
        let mut v = vec![GaussianRational::default(); b.len()];
        for (m, c) in x.terms() {
            v[b.index_of(m)?] = c.clone();
        }
        Some(v)
    }

    /// The `(p,q)`-form with the given coordinates.
    pub fn form_from_coordinates(&self, p: usize, q: usize, v: &[GaussianRational]) -> Form {
        let b = self.basis(p, q);
        Form::from_terms(self.n, b.masks.iter().zip(v).map(|(m, c)| (*m, c.clone())))
    }

    /// Betti numbers of the underlying real Lie algebra.
    pub fn de_rham_betti(&self, exec: Exec) -> Vec<usize> {
        self.cochains.betti(exec)
    }

    /// Model-file text; parsing it back yields an equal model.
    pub fn to_model_file(&self) -> String {
        let mut s = format!("model \"{}\" dim {}\n", self.name, self.n);
        for (k, f) in self.d.iter().enumerate() {
            s.push_str(&format!("d {} = {}\n", k + 1, f.to_model_syntax()));
        }
        s
    }

    /// Sign-corrected conjugate of a monomial in this model's dimension.
    pub fn conj_monomial(&self, m: Mask) -> (Mask, i8) {
        conj_mask(m, self.n)
    }
}

fn lex_key(mask: Mask) -> Vec<u32> {
    let mut v = Vec::new();
    let mut r = mask;
    while r != 0 {
        v.push(r.trailing_zeros());
        r &= r - 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    /// Iwasawa manifold: d ω^3 = ω^{12}.
    fn iwasawa() -> ComplexModel {
        let z = Form::zero(3);
        let d3 = Form::from_indices(3, &[1, 2], g(1)).unwrap();
        ComplexModel::new("iwasawa", 3, vec![z.clone(), z, d3]).unwrap()
    }

    #[test]
    fn iwasawa_betti() {
        assert_eq!(iwasawa().de_rham_betti(Exec::Sequential), vec![1, 4, 8, 10, 8, 4, 1]);
    }

    #[test]
    fn operator_identity() {
        let m = iwasawa();
        let f = Form::from_indices(3, &[3, -3], g(1)).unwrap();
        let (d, del, delbar) = m.differential(&f);
        assert_eq!(d, del.add(&delbar));
        assert_eq!(del, Form::from_indices(3, &[1, 2, -3], g(1)).unwrap());
        assert_eq!(delbar, Form::from_indices(3, &[3, -1, -2], g(-1)).unwrap());
    }

    #[test]
    fn rejects_bad_structures() {
        let z = Form::zero(2);
        let bad = Form::from_indices(2, &[-1, -2], g(1)).unwrap();
        assert_eq!(ComplexModel::new("x", 2, vec![z.clone(), bad]).unwrap_err(), ModelError::NotIntegrable(2));
        // d ω^2 = ω^{12} on dim 2 with d ω^1 = ω^{1 2̄} breaks d^2 = 0.
        let d1 = Form::from_indices(2, &[1, -2], g(1)).unwrap();
        let d2 = Form::from_indices(2, &[1, 2], g(1)).unwrap();
        assert!(matches!(ComplexModel::new("x", 2, vec![d1, d2]), Err(ModelError::NotNilpotentSquare(_))));
    }

    #[test]
    fn basis_layout() {
        let m = iwasawa();
        let b = m.basis(1, 1);
        assert_eq!(b.len(), 9);
        assert_eq!(crate::exterior::indices_of(b.masks[1], 3), vec![1, -2]);
        assert_eq!(m.del_matrix(3, 0).rows(), 0);
    }
}
