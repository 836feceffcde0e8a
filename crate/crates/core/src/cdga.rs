//! Bigraded slices of free graded-commutative algebras with a pair of
//! derivations `∂`, `∂̄` of bidegrees `(1,0)` and `(0,1)`.
//!
//! Odd generators anticommute and square to zero; even generators are
//! central polynomial variables. Monomials are exponent vectors in
//! declaration order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::fss::{in_x_coords, in_y_coords, DoubleComplex, FssError};
use crate::linalg::{GaussianRational as G, LinalgError, Rational, SparseMatrix};
use crate::model::{Cursor, ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub p: usize,
    pub q: usize,
    pub odd: bool,
}

pub type Monomial = Vec<u32>;

/// A finite linear combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, G>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: G) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &G)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> G {
        self.terms.get(m).cloned().unwrap_or_else(G::zero)
    }

    fn add_term(&mut self, m: Monomial, c: G) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(G::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&G::from_int(-1)))
    }

    pub fn scale(&self, c: &G) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdgaError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("generator '{0}': degree p+q must be positive")]
    ZeroDegree(String),
    #[error("generator '{name}': declared {declared} but p+q is {parity}")]
    Parity { name: String, declared: &'static str, parity: &'static str },
    #[error("{op} {name} has bidegree {found:?}, expected {expected:?}")]
    Inconsistent { op: &'static str, name: String, expected: (usize, usize), found: (usize, usize) },
    #[error("{0} is nonzero")]
    NotDifferential(String),
    #[error("polynomial is not homogeneous of bidegree {0:?}")]
    NotInSlice((usize, usize)),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Fss(#[from] FssError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    Del,
    Delbar,
}

impl Which {
    fn label(self) -> &'static str {
        match self {
            Which::Del => "del",
            Which::Delbar => "delbar",
        }
    }

    fn shift(self) -> (usize, usize) {
        match self {
            Which::Del => (1, 0),
            Which::Delbar => (0, 1),
        }
    }
}

/// Ordered monomial basis of one bidegree slice.
#[derive(Debug, Clone)]
pub struct SliceBasis {
    pub p: usize,
    pub q: usize,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl SliceBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

type SliceKey = (usize, usize);

#[derive(Default, Debug)]
struct Caches {
    bases: HashMap<SliceKey, Arc<SliceBasis>>,
    mats: HashMap<(Which, SliceKey), Arc<SparseMatrix>>,
}

/// A bigraded model: generators with `∂` and `∂̄` on each.
#[derive(Debug)]
pub struct CdgaModel {
    name: String,
    gens: Vec<Generator>,
    del: Vec<Poly>,
    delbar: Vec<Poly>,
    inconsistencies: Vec<CdgaError>,
    cache: Mutex<Caches>,
}

impl Clone for CdgaModel {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            gens: self.gens.clone(),
            del: self.del.clone(),
            delbar: self.delbar.clone(),
            inconsistencies: self.inconsistencies.clone(),
            cache: Mutex::default(),
        }
    }
}

impl CdgaModel {
    /// Validate parities and the relations `∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0` on
    /// generators. Generator images of the wrong bidegree are recorded in
    /// [`CdgaModel::inconsistencies`]; slice matrices touching them fail.
    pub fn new(name: impl Into<String>, gens: Vec<Generator>, del: Vec<Poly>, delbar: Vec<Poly>) -> Result<Self, CdgaError> {
        for g in &gens {
            if g.p + g.q == 0 {
                return Err(CdgaError::ZeroDegree(g.name.clone()));
            }
            if ((g.p + g.q) % 2 == 1) != g.odd {
                let (declared, parity) = if g.odd { ("odd", "even") } else { ("even", "odd") };
                return Err(CdgaError::Parity { name: g.name.clone(), declared, parity });
            }
        }
        let mut m = Self { name: name.into(), gens, del, delbar, inconsistencies: Vec::new(), cache: Mutex::default() };
        for (i, g) in m.gens.iter().enumerate() {
            for which in [Which::Del, Which::Delbar] {
                let (dp, dq) = which.shift();
                let expected = (g.p + dp, g.q + dq);
                for mono in m.image(which, i).terms.keys() {
                    let found = m.bidegree(mono);
                    if found != expected {
                        m.inconsistencies.push(CdgaError::Inconsistent { op: which.label(), name: g.name.clone(), expected, found });
                        break;
                    }
                }
            }
        }
        for (i, g) in m.gens.iter().enumerate() {
            let x = m.generator(i);
            let dd = m.apply(Which::Del, &m.apply(Which::Del, &x));
            let bb = m.apply(Which::Delbar, &m.apply(Which::Delbar, &x));
            let mix = m.apply(Which::Del, &m.apply(Which::Delbar, &x)).add(&m.apply(Which::Delbar, &m.apply(Which::Del, &x)));
            for (label, v) in [("del del", dd), ("delbar delbar", bb), ("del delbar + delbar del", mix)] {
                if !v.is_zero() {
                    return Err(CdgaError::NotDifferential(format!("{label} {}", g.name)));
                }
            }
        }
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Generator differentials whose bidegree does not match.
    pub fn inconsistencies(&self) -> &[CdgaError] {
        &self.inconsistencies
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    fn image(&self, which: Which, i: usize) -> &Poly {
        match which {
            Which::Del => &self.del[i],
            Which::Delbar => &self.delbar[i],
        }
    }

    pub fn one(&self) -> Poly {
        Poly::monomial(vec![0; self.gens.len()], G::one())
    }

    pub fn generator(&self, i: usize) -> Poly {
        let mut m = vec![0; self.gens.len()];
        m[i] = 1;
        Poly::monomial(m, G::one())
    }

    pub fn bidegree(&self, m: &[u32]) -> (usize, usize) {
        m.iter().zip(&self.gens).fold((0, 0), |(p, q), (&e, g)| (p + e as usize * g.p, q + e as usize * g.q))
    }

    fn odd_count(&self, m: &[u32]) -> usize {
        m.iter().zip(&self.gens).filter(|(&e, g)| g.odd && e > 0).count()
    }

    /// Product of two canonical monomials. The sign counts pairs of odd
    /// factors `i` of `b` and `j` of `a` with `i < j`.
    fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(Monomial, bool)> {
        let mut neg = false;
        let mut odd_b_before = 0usize;
        let mut out = vec![0; a.len()];
        for (j, g) in self.gens.iter().enumerate() {
            if g.odd {
                if a[j] > 0 && b[j] > 0 {
                    return None;
                }
                if a[j] > 0 && odd_b_before % 2 == 1 {
                    neg = !neg;
                }
            }
            out[j] = a[j] + b[j];
            if g.odd && b[j] > 0 {
                odd_b_before += 1;
            }
        }
        Some((out, neg))
    }

    pub fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some((m, neg)) = self.mul_monomials(a, b) {
                    let c = ca * cb;
                    r.add_term(m, if neg { -c } else { c });
                }
            }
        }
        r
    }

    pub fn pow(&self, x: &Poly, k: u32) -> Poly {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Apply `∂` or `∂̄` by the graded Leibniz rule.
    pub fn apply(&self, which: Which, x: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &x.terms {
            out = out.add(&self.apply_monomial(which, m).scale(c));
        }
        out
    }

    fn apply_monomial(&self, which: Which, m: &[u32]) -> Poly {
        let k = self.gens.len();
        let mut out = Poly::zero();
        for i in 0..k {
            let e = m[i];
            if e == 0 || self.image(which, i).is_zero() {
                continue;
            }
            let mut prefix = vec![0; k];
            prefix[..i].copy_from_slice(&m[..i]);
            let mut suffix = vec![0; k];
            suffix[i + 1..].copy_from_slice(&m[i + 1..]);
            let mut lower = vec![0; k];
            lower[i] = e - 1;
            let d_factor = self.mul(&Poly::monomial(lower, G::from_int(e.into())), self.image(which, i));
            let sign = if self.odd_count(&prefix) % 2 == 1 { G::from_int(-1) } else { G::one() };
            let pre = Poly::monomial(prefix, sign);
            let term = self.mul(&self.mul(&pre, &d_factor), &Poly::monomial(suffix, G::one()));
            out = out.add(&term);
        }
        out
    }

    /// All monomials of bidegree `(p,q)`.
    pub fn slice_basis(&self, p: usize, q: usize) -> Arc<SliceBasis> {
        if let Some(b) = self.cache.lock().expect("cache lock").bases.get(&(p, q)) {
            return b.clone();
        }
        let mut monomials = Vec::new();
        let mut cur = vec![0u32; self.gens.len()];
        self.enumerate(0, p, q, &mut cur, &mut monomials);
        monomials.sort();
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let b = Arc::new(SliceBasis { p, q, monomials, index });
        self.cache.lock().expect("cache lock").bases.insert((p, q), b.clone());
        b
    }

    fn enumerate(&self, i: usize, p: usize, q: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.gens.len() {
            if p == 0 && q == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let g = &self.gens[i];
        let bound = |rem: usize, step: usize| rem.checked_div(step).unwrap_or(usize::MAX);
        let max = if g.odd { 1 } else { bound(p, g.p).min(bound(q, g.q)) };
        for e in 0..=max {
            if e * g.p > p || e * g.q > q {
                break;
            }
            cur[i] = e as u32;
            self.enumerate(i + 1, p - e * g.p, q - e * g.q, cur, out);
        }
        cur[i] = 0;
    }

    /// Matrix of `∂` or `∂̄` from slice `(p,q)` to its target slice.
    pub fn slice_matrix(&self, which: Which, p: usize, q: usize) -> Result<Arc<SparseMatrix>, CdgaError> {
        if let Some(m) = self.cache.lock().expect("cache lock").mats.get(&(which, (p, q))) {
            return Ok(m.clone());
        }
        let (dp, dq) = which.shift();
        let src = self.slice_basis(p, q);
        let dst = self.slice_basis(p + dp, q + dq);
        let mut trip = Vec::new();
        for (j, m) in src.monomials.iter().enumerate() {
            for (t, c) in &self.apply_monomial(which, m).terms {
                let i = match dst.index_of(t) {
                    Some(i) => i,
                    None => return Err(self.culprit(which, m).unwrap_or(CdgaError::NotInSlice((p + dp, q + dq)))),
                };
                trip.push((i, j, c.clone()));
            }
        }
        let mat = Arc::new(SparseMatrix::from_triplets(dst.len(), src.len(), trip)?);
        self.cache.lock().expect("cache lock").mats.insert((which, (p, q)), mat.clone());
        Ok(mat)
    }

    fn culprit(&self, which: Which, m: &[u32]) -> Option<CdgaError> {
        self.inconsistencies
            .iter()
            .find(|e| matches!(e, CdgaError::Inconsistent { op, name, .. } if *op == which.label() && self.index_of(name).is_some_and(|i| m[i] > 0)))
            .cloned()
    }

    /// Coordinates of a homogeneous polynomial in its slice basis.
    pub fn coordinates(&self, x: &Poly, p: usize, q: usize) -> Result<Vec<G>, CdgaError> {
        let b = self.slice_basis(p, q);
        let mut v = vec![G::zero(); b.len()];
        for (m, c) in &x.terms {
            let i = b.index_of(m).ok_or(CdgaError::NotInSlice((p, q)))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn format(&self, x: &Poly) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .terms
            .iter()
            .map(|(m, c)| {
                let factors: Vec<String> = m
                    .iter()
                    .zip(&self.gens)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
                    .collect();
                if factors.is_empty() {
                    c.to_pair_string()
                } else {
                    format!("{} {}", c.to_pair_string(), factors.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// The model in the text format read by [`parse_cdga`].
    pub fn to_cdga_file(&self) -> String {
        let mut s = format!("cdga \"{}\"\n", self.name);
        for g in &self.gens {
            s += &format!("gen {} ({},{}) {}\n", g.name, g.p, g.q, if g.odd { "odd" } else { "even" });
        }
        for (i, g) in self.gens.iter().enumerate() {
            if !self.del[i].is_zero() {
                s += &format!("del {} = {}\n", g.name, self.format(&self.del[i]));
            }
            if !self.delbar[i].is_zero() {
                s += &format!("delbar {} = {}\n", g.name, self.format(&self.delbar[i]));
            }
        }
        s
    }

    /// Parse a polynomial in this model's generators.
    pub fn parse_poly(&self, text: &str) -> Result<Poly, ParseErrorKind> {
        let mut cur = Cursor::new(text);
        let v = PolyReader { model: self, lets: &BTreeMap::new() }.sum(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.unexpected("end of polynomial"));
        }
        Ok(v)
    }
}

impl fmt::Display for CdgaModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cdga_file())
    }
}

/// Reads `poly := term (± term)*`, `term := factor (['*'] factor)*`,
/// `factor := atom ['^' n]`, `atom := n['/'n] | (re,im) | (poly) | name`.
struct PolyReader<'a> {
    model: &'a CdgaModel,
    lets: &'a BTreeMap<String, Poly>,
}

impl PolyReader<'_> {
    fn sum(&self, cur: &mut Cursor) -> Result<Poly, ParseErrorKind> {
        let neg = cur.eat(b'-');
        let mut acc = self.term(cur)?;
        if neg {
            acc = acc.scale(&G::from_int(-1));
        }
        loop {
            if cur.eat(b'+') {
                acc = acc.add(&self.term(cur)?);
            } else if cur.eat(b'-') {
                acc = acc.sub(&self.term(cur)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, cur: &mut Cursor) -> Result<Poly, ParseErrorKind> {
        let mut acc = self.factor(cur)?;
        loop {
            let explicit = cur.eat(b'*');
            match cur.peek() {
                Some(c) if explicit || c == b'(' || c == b'_' || c.is_ascii_alphanumeric() => {
                    acc = self.model.mul(&acc, &self.factor(cur)?);
                }
                _ if explicit => return Err(cur.unexpected("a factor")),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&self, cur: &mut Cursor) -> Result<Poly, ParseErrorKind> {
        let base = self.atom(cur)?;
        if cur.eat(b'^') {
            let k = cur.natural().and_then(|n| n.to_u32()).ok_or_else(|| cur.unexpected("an exponent"))?;
            return Ok(self.model.pow(&base, k));
        }
        Ok(base)
    }

    fn atom(&self, cur: &mut Cursor) -> Result<Poly, ParseErrorKind> {
        if let Some(n) = cur.natural() {
            let mut v = Rational::from_integer(n);
            if cur.eat(b'/') {
                let d = cur.natural().ok_or_else(|| cur.unexpected("a denominator"))?;
                if d.is_zero() {
                    return Err(ParseErrorKind::DivisionByZero);
                }
                v /= Rational::from_integer(d);
            }
            return Ok(self.model.one().scale(&G::from_real(v)));
        }
        if cur.eat(b'(') {
            let inner = self.sum(cur)?;
            if cur.eat(b',') {
                let re = self.constant(&inner).ok_or_else(|| ParseErrorKind::Syntax("real part must be a number".into()))?;
                let im_poly = self.sum(cur)?;
                let im = self.constant(&im_poly).ok_or_else(|| ParseErrorKind::Syntax("imaginary part must be a number".into()))?;
                cur.expect(b')')?;
                return Ok(self.model.one().scale(&G::new(re.re().clone(), im.re().clone())));
            }
            cur.expect(b')')?;
            return Ok(inner);
        }
        if let Some(name) = cur.ident() {
            if let Some(p) = self.lets.get(&name) {
                return Ok(p.clone());
            }
            if let Some(i) = self.model.index_of(&name) {
                return Ok(self.model.generator(i));
            }
            return Err(ParseErrorKind::Syntax(format!("unknown generator '{name}'")));
        }
        Err(cur.unexpected("a number, generator or '('"))
    }

    /// The value of a real constant polynomial.
    fn constant(&self, p: &Poly) -> Option<G> {
        let zero = vec![0; self.model.gens.len()];
        match p.terms.len() {
            0 => Some(G::zero()),
            1 => p.terms.get(&zero).filter(|c| c.is_real()).cloned(),
            _ => None,
        }
    }
}

fn perr(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parse a CDGA file:
///
/// ```text
/// cdga "name"
/// gen <name> (<p>,<q>) odd|even
/// let <name> = <polynomial>
/// del <gen> = <polynomial>
/// delbar <gen> = <polynomial>
/// ```
///
/// `#` starts a comment. Generators must be declared before use; missing
/// differentials are zero.
pub fn parse_cdga(text: &str) -> Result<CdgaModel, CdgaError> {
    let mut name: Option<String> = None;
    let mut gens: Vec<Generator> = Vec::new();
    let mut pending: Vec<(usize, Which, String, String)> = Vec::new();
    let mut lets: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(body);
        let kw = cur.ident().ok_or_else(|| perr(line, cur.unexpected("a keyword")))?;
        match kw.as_str() {
            "cdga" => {
                name = Some(cur.quoted().map_err(|k| perr(line, k))?);
            }
            "gen" => {
                let g = cur.ident().ok_or_else(|| perr(line, cur.unexpected("a generator name")))?;
                if gens.iter().any(|x| x.name == g) {
                    return Err(perr(line, ParseErrorKind::Syntax(format!("generator '{g}' declared twice"))).into());
                }
                let mut read = || -> Result<(usize, usize, bool), ParseErrorKind> {
                    cur.expect(b'(')?;
                    let p = cur.natural().and_then(|n| n.to_usize()).ok_or_else(|| cur.unexpected("p"))?;
                    cur.expect(b',')?;
                    let q = cur.natural().and_then(|n| n.to_usize()).ok_or_else(|| cur.unexpected("q"))?;
                    cur.expect(b')')?;
                    let odd = match cur.ident().as_deref() {
                        Some("odd") => true,
                        Some("even") => false,
                        _ => return Err(ParseErrorKind::Syntax("expected 'odd' or 'even'".into())),
                    };
                    if !cur.at_end() {
                        return Err(cur.unexpected("end of line"));
                    }
                    Ok((p, q, odd))
                };
                let (p, q, odd) = read().map_err(|k| perr(line, k))?;
                gens.push(Generator { name: g, p, q, odd });
            }
            "let" | "del" | "delbar" => {
                let target = cur.ident().ok_or_else(|| perr(line, cur.unexpected("a name")))?;
                cur.expect(b'=').map_err(|k| perr(line, k))?;
                let rest = body[body.find('=').expect("'=' was read") + 1..].to_string();
                match kw.as_str() {
                    "let" => lets.push((line, target, rest)),
                    "del" => pending.push((line, Which::Del, target, rest)),
                    _ => pending.push((line, Which::Delbar, target, rest)),
                }
            }
            other => return Err(perr(line, ParseErrorKind::Syntax(format!("unknown keyword '{other}'"))).into()),
        }
    }
    let name = name.ok_or_else(|| perr(1, ParseErrorKind::Syntax("missing 'cdga \"name\"' header".into())))?;
    let k = gens.len();
    let scratch = CdgaModel {
        name: name.clone(),
        gens: gens.clone(),
        del: vec![Poly::zero(); k],
        delbar: vec![Poly::zero(); k],
        inconsistencies: Vec::new(),
        cache: Mutex::default(),
    };
    let mut defs: BTreeMap<String, Poly> = BTreeMap::new();
    let read = |line: usize, text: &str, defs: &BTreeMap<String, Poly>| -> Result<Poly, ParseError> {
        let mut cur = Cursor::new(text);
        let v = PolyReader { model: &scratch, lets: defs }.sum(&mut cur).map_err(|k| perr(line, k))?;
        if !cur.at_end() {
            return Err(perr(line, cur.unexpected("end of line")));
        }
        Ok(v)
    };
    for (line, n, text) in &lets {
        if scratch.index_of(n).is_some() {
            return Err(perr(*line, ParseErrorKind::Syntax(format!("'{n}' is a generator"))).into());
        }
        let v = read(*line, text, &defs)?;
        defs.insert(n.clone(), v);
    }
    let mut del = vec![Poly::zero(); k];
    let mut delbar = vec![Poly::zero(); k];
    let mut seen = Vec::new();
    for (line, which, g, text) in &pending {
        let i = scratch.index_of(g).ok_or_else(|| perr(*line, ParseErrorKind::Syntax(format!("unknown generator '{g}'"))))?;
        if seen.contains(&(*which, i)) {
            return Err(perr(*line, ParseErrorKind::Syntax(format!("{} {g} given twice", which.label()))).into());
        }
        seen.push((*which, i));
        let v = read(*line, text, &defs)?;
        match which {
            Which::Del => del[i] = v,
            Which::Delbar => delbar[i] = v,
        }
    }
    CdgaModel::new(name, gens, del, delbar)
}

/// The bigraded model of SO(9) with the `∂̄ w_{8,7}` line left as a
/// placeholder.
const PITTIE_SO9_TEMPLATE: &str = "\
cdga \"pittie-so9\"
gen w21 (2,1) odd
gen w43 (4,3) odd
gen w65 (6,5) odd
gen w87 (8,7) odd
gen v1 (1,1) even
gen v2 (1,1) even
gen u1 (0,1) odd
gen u2 (0,1) odd
let f = v1^2 + v2^2
let g = v1^2*v2^2
delbar w43 = f^2
delbar w65 = f*g
delbar w87 = @W87@
del u1 = v1
del u2 = v2
";

/// The displayed value of `∂̄ w_{8,7}`.
pub const PITTIE_W87_DISPLAYED: &str = "f^2";

/// The SO(9) model with `∂̄ w_{8,7} = f²` as displayed. That image has
/// bidegree `(4,4)` rather than `(8,8)`, so the model reports one
/// inconsistency; none of the slices used by [`verify_so9_d2`] contain
/// `w_{8,7}`.
pub fn pittie_so9() -> CdgaModel {
    pittie_so9_with(PITTIE_W87_DISPLAYED).expect("the embedded model parses")
}

/// The SO(9) model with a chosen `∂̄ w_{8,7}`, which may use `f` and `g`.
pub fn pittie_so9_with(delbar_w87: &str) -> Result<CdgaModel, CdgaError> {
    parse_cdga(&PITTIE_SO9_TEMPLATE.replace("@W87@", delbar_w87))
}

/// The model as a double complex over its slices.
impl DoubleComplex for CdgaModel {
    fn label(&self) -> String {
        self.name.clone()
    }

    fn block_dim(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 {
            return 0;
        }
        self.slice_basis(p as usize, q as usize).len()
    }

    fn del_block(&self, p: i64, q: i64) -> Result<Arc<SparseMatrix>, FssError> {
        self.block(Which::Del, p, q)
    }

    fn delbar_block(&self, p: i64, q: i64) -> Result<Arc<SparseMatrix>, FssError> {
        self.block(Which::Delbar, p, q)
    }

    fn extent(&self) -> Option<usize> {
        None
    }
}

impl CdgaModel {
    fn block(&self, which: Which, p: i64, q: i64) -> Result<Arc<SparseMatrix>, FssError> {
        let (dp, dq) = which.shift();
        if p < 0 || q < 0 {
            let rows = self.block_dim(p + dp as i64, q + dq as i64);
            return Ok(Arc::new(SparseMatrix::zeros(rows, 0)));
        }
        self.slice_matrix(which, p as usize, q as usize).map_err(|e| FssError::Operator(e.to_string()))
    }
}

/// One check of the SO(9) report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct So9Report {
    pub checks: Vec<Check>,
    /// Dimensions of the slices `(6,8)`, `(7,7)`, `(8,6)`, `(7,8)`, `(8,7)`.
    pub slice_dims: Vec<((usize, usize), usize)>,
    pub inconsistencies: Vec<String>,
}

impl So9Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `d_2: E_2^{6,8} → E_2^{8,7}` is nonzero on `fξη`, with
/// `ξ = u₁v₁ + u₂v₂` and `η = u₁v₁v₂²`:
///
/// 1. `∂̄(fξη) = 0` and `∂(fξη) + ∂̄(w_{6,5}ξ − w_{4,3}η) = 0`, so `fξη`
///    lies in `X_2^{6,8}`;
/// 2. `∂(w_{6,5}ξ − w_{4,3}η) = w_{4,3}g − w_{6,5}f`;
/// 3. `w_{4,3}g − w_{6,5}f` is not in `Y_2^{8,7}`.
pub fn verify_so9_d2(m: &CdgaModel) -> Result<So9Report, CdgaError> {
    let p = |s: &str| m.parse_poly(s).map_err(|k| CdgaError::Parse(perr(0, k)));
    let f = p("v1^2 + v2^2")?;
    let g = p("v1^2*v2^2")?;
    let xi = p("u1*v1 + u2*v2")?;
    let eta = p("u1*v1*v2^2")?;
    let (w43, w65) = (p("w43")?, p("w65")?);
    let fxe = m.mul(&m.mul(&f, &xi), &eta);
    let zeta = m.mul(&w65, &xi).sub(&m.mul(&w43, &eta));
    let target = m.mul(&w43, &g).sub(&m.mul(&w65, &f));

    let closed = m.apply(Which::Delbar, &fxe);
    let residual = m.apply(Which::Del, &fxe).add(&m.apply(Which::Delbar, &zeta));
    let in_x = in_x_coords(m, 2, 6, 8, &m.coordinates(&fxe, 6, 8)?)?;
    let c1 = Check {
        label: "f xi eta lies in X_2^{6,8}",
        passed: closed.is_zero() && residual.is_zero() && in_x,
        detail: format!("delbar(f xi eta) = {}; residual = {}; engine X_2 membership = {in_x}", m.format(&closed), m.format(&residual)),
    };

    let diff = m.apply(Which::Del, &zeta).sub(&target);
    let c2 = Check {
        label: "del(w65 xi - w43 eta) = w43 g - w65 f",
        passed: diff.is_zero(),
        detail: format!("difference = {}", m.format(&diff)),
    };

    let in_y = in_y_coords(m, 2, 8, 7, &m.coordinates(&target, 8, 7)?)?;
    let c3 = Check {
        label: "w43 g - w65 f is not in Y_2^{8,7}",
        passed: !in_y,
        detail: format!("Y_2^{{8,7}} from slices (8,6), (7,7) with constraint in (7,8); membership = {in_y}"),
    };
    let slice_dims = [(6, 8), (7, 7), (8, 6), (7, 8), (8, 7)].iter().map(|&(a, b)| ((a, b), m.slice_basis(a, b).len())).collect();
    Ok(So9Report { checks: vec![c1, c2, c3], slice_dims, inconsistencies: m.inconsistencies().iter().map(|e| e.to_string()).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_slices() {
        let m = pittie_so9();
        let names = |p, q| -> Vec<String> {
            m.slice_basis(p, q).monomials.iter().map(|x| m.format(&Poly::monomial(x.clone(), G::one()))).collect()
        };
        assert_eq!(names(0, 1).len(), 2);
        assert_eq!(names(1, 1).len(), 2);
        assert!(m.slice_matrix(Which::Delbar, 0, 1).unwrap().is_zero());
        assert_eq!(crate::linalg::rank(&m.slice_matrix(Which::Del, 0, 1).unwrap()), 2);
    }

    #[test]
    fn leibniz_examples() {
        let m = pittie_so9();
        let p = |s: &str| m.parse_poly(s).unwrap();
        assert_eq!(m.apply(Which::Del, &p("u1*v1 + u2*v2")), p("v1^2 + v2^2"));
        assert_eq!(m.apply(Which::Del, &p("u1*v1*v2^2")), p("v1^2*v2^2"));
        assert_eq!(m.apply(Which::Del, &p("u1*u2")), p("v1*u2 - u1*v2"));
        assert!(m.apply(Which::Delbar, &p("(v1^2+v2^2)*(u1*v1 + u2*v2)*u1*v1*v2^2")).is_zero());
        assert_eq!(p("u2*u1"), p("-u1*u2"));
        assert!(p("u1*u1").is_zero());
    }

    #[test]
    fn displayed_w87_is_flagged() {
        let m = pittie_so9();
        assert_eq!(m.inconsistencies().len(), 1);
        assert!(pittie_so9_with("g^2").unwrap().inconsistencies().is_empty());
        assert!(m.slice_matrix(Which::Delbar, 8, 7).is_err());
    }

    #[test]
    fn d2_report() {
        let r = verify_so9_d2(&pittie_so9()).unwrap();
        assert!(r.passed(), "{r:?}");
        let alt = verify_so9_d2(&pittie_so9_with("g^2").unwrap()).unwrap();
        assert!(alt.passed());
    }

    #[test]
    fn file_round_trip() {
        let m = pittie_so9_with("g^2").unwrap();
        let again = parse_cdga(&m.to_cdga_file()).unwrap();
        assert_eq!(again.to_cdga_file(), m.to_cdga_file());
        assert!(parse_cdga("cdga \"x\"\ngen a (1,1) odd\n").is_err());
        assert!(matches!(parse_cdga("cdga \"x\"\ngen a (0,1) odd\ndel a = a\n"), Err(CdgaError::NotDifferential(_))));
    }
}
