//! Reader for model files.
//!
//! ```text
//! model "family-I" dim 4
//! param eps:bit nu:bit a b delta:sign
//! d 1 = 0
//! d 2 = (eps,0) w[1,-1]
//! ```
//!
//! `w[i,j]` is `ω^i ∧ ω^j`, a negative index meaning the conjugate.
//! Anything after `#` is a comment.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exterior::{Form, MAX_DIM};
use crate::linalg::{GaussianRational, Rational};

use super::{ComplexModel, Cursor, ModelError, ParseError, ParseErrorKind, Scope};

/// Restriction on the values a parameter may take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Rational,
    /// 0 or 1.
    Bit,
    /// 1 or -1.
    Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: String,
    pub kind: ParamKind,
}

#[derive(Clone, Debug)]
pub struct ParsedModel {
    pub model: ComplexModel,
    pub params: Vec<ParamSpec>,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parse a model file, substituting `bindings` for declared parameters.
/// Bindings for names the file does not declare are ignored.
pub fn parse_model(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<ParsedModel, ParseError> {
    let mut header: Option<(String, usize, usize)> = None;
    let mut params: Vec<ParamSpec> = Vec::new();
    let mut declared: Vec<String> = Vec::new();
    let mut diffs: BTreeMap<usize, (usize, Form)> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = strip_comment(raw);
        let mut cur = Cursor::new(body);
        if cur.at_end() {
            continue;
        }
        let Some(word) = cur.ident() else {
            return Err(err(line, cur.unexpected("a keyword")));
        };
        match (word.as_str(), &header) {
            ("model", None) => {
                let name = cur.quoted().map_err(|k| err(line, k))?;
                cur.keyword("dim").map_err(|k| err(line, k))?;
                let n = cur.integer().ok_or_else(|| err(line, ParseErrorKind::Syntax("expected a dimension".into())))?;
                if n < 1 || n as usize > MAX_DIM {
                    return Err(err(line, ParseErrorKind::BadDimension));
                }
                header = Some((name, n as usize, line));
            }
            ("model", Some(_)) => return Err(err(line, ParseErrorKind::Syntax("second model header".into()))),
            (_, None) => return Err(err(line, ParseErrorKind::Syntax("file must start with a model header".into()))),
            ("param", Some(_)) => {
                while !cur.at_end() {
                    let name = cur.ident().ok_or_else(|| err(line, cur.unexpected("a parameter name")))?;
                    let kind = if cur.eat(b':') {
                        match cur.ident().as_deref() {
                            Some("bit") => ParamKind::Bit,
                            Some("sign") => ParamKind::Sign,
                            Some("rat") => ParamKind::Rational,
                            _ => return Err(err(line, ParseErrorKind::Syntax("parameter kind must be bit, sign or rat".into()))),
                        }
                    } else {
                        ParamKind::Rational
                    };
                    if let Some(v) = bindings.get(&name) {
                        check_kind(&name, kind, v).map_err(|k| err(line, k))?;
                    }
                    declared.push(name.clone());
                    params.push(ParamSpec { name, kind });
                }
            }
            ("d", Some((_, n, _))) => {
                let n = *n;
                let k = cur.integer().ok_or_else(|| err(line, cur.unexpected("a generator index")))?;
                if k < 1 || k as usize > n {
                    return Err(err(line, ParseErrorKind::Syntax(format!("generator index {k} outside 1..{n}"))));
                }
                let k = k as usize;
                cur.expect(b'=').map_err(|e| err(line, e))?;
                let scope = Scope { declared: &declared, bound: bindings };
                let f = form_expr(&mut cur, n, &scope).map_err(|e| err(line, e))?;
                if !cur.at_end() {
                    return Err(err(line, cur.unexpected("'+' or end of line")));
                }
                if f.terms().any(|(m, _)| m.count_ones() != 2) {
                    return Err(err(line, ParseErrorKind::NotTwoForm(k)));
                }
                if diffs.insert(k, (line, f)).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateDifferential(k)));
                }
            }
            (other, Some(_)) => return Err(err(line, ParseErrorKind::Syntax(format!("unknown keyword '{other}'")))),
        }
    }

    let Some((name, n, header_line)) = header else {
        return Err(err(1, ParseErrorKind::Syntax("missing model header".into())));
    };
    let mut forms = Vec::with_capacity(n);
    for k in 1..=n {
        match diffs.get(&k) {
            Some((_, f)) => forms.push(f.clone()),
            None => return Err(err(header_line, ParseErrorKind::MissingDifferential(k))),
        }
    }
    let line_of = |k: usize| diffs.get(&k).map_or(header_line, |(l, _)| *l);
    let model = ComplexModel::new(name, n, forms).map_err(|e| match e {
        ModelError::NotIntegrable(k) => err(line_of(k), ParseErrorKind::NotIntegrable(k)),
        ModelError::NotNilpotentSquare(k) => err(line_of(k), ParseErrorKind::NotNilpotentSquare(k)),
        ModelError::NotTwoForm(k) => err(line_of(k), ParseErrorKind::NotTwoForm(k)),
        ModelError::BadDimension(_) | ModelError::WrongCount { .. } => err(header_line, ParseErrorKind::BadDimension),
    })?;
    Ok(ParsedModel { model, params })
}

fn check_kind(name: &str, kind: ParamKind, v: &Rational) -> Result<(), ParseErrorKind> {
    let ok = match kind {
        ParamKind::Rational => true,
        ParamKind::Bit => v.is_zero() || v.is_one(),
        ParamKind::Sign => v.is_one() || (-v).is_one(),
    };
    if ok {
        return Ok(());
    }
    let expected = match kind {
        ParamKind::Bit => "0 or 1",
        _ => "1 or -1",
    };
    Err(ParseErrorKind::InvalidParameterValue { name: name.into(), expected: expected.into(), value: v.to_string() })
}

/// `0`, or a signed sum of `(re,im) w[...]` terms; a bare `w[...]` has coefficient 1.
fn form_expr(cur: &mut Cursor, n: usize, scope: &Scope) -> Result<Form, ParseErrorKind> {
    let mut f = Form::zero(n);
    if cur.peek() == Some(b'0') {
        cur.integer();
        return Ok(f);
    }
    let mut negate = cur.eat(b'-');
    loop {
        let c = if cur.peek() == Some(b'w') { GaussianRational::from_int(1) } else { cur.complex(scope)? };
        let idx = cur.monomial_indices()?;
        let c = if negate { -c } else { c };
        let term = Form::from_indices(n, &idx, c).ok_or(ParseErrorKind::BadMonomial)?;
        f = f.add(&term);
        if cur.eat(b'+') {
            negate = false;
        } else if cur.eat(b'-') {
            negate = true;
        } else {
            return Ok(f);
        }
    }
}

/// Parse a standalone form such as `(0,1) w[-1,-2] + (-1,0) w[-2,-4]` in
/// dimension `n`. Coefficients must be numeric.
pub fn parse_form(text: &str, n: usize) -> Result<Form, ParseErrorKind> {
    let declared = Vec::new();
    let bound = BTreeMap::new();
    let mut cur = Cursor::new(text);
    let f = form_expr(&mut cur, n, &Scope { declared: &declared, bound: &bound })?;
    if !cur.at_end() {
        return Err(cur.unexpected("'+' or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    const SAMPLE: &str = "model \"t\" dim 3  # comment\nparam s:sign a\n\nd 1 = 0\nd 2 = 0\nd 3 = (a,0) w[1,2] + (0,s) w[1,-1]\n";

    fn bind(pairs: &[(&str, i64)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), rat(*v, 1))).collect()
    }

    #[test]
    fn parses_with_params() {
        let p = parse_model(SAMPLE, &bind(&[("s", -1), ("a", 2)])).unwrap();
        assert_eq!(p.params.len(), 2);
        let d3 = p.model.d_omega(3);
        assert_eq!(d3.len(), 2);
        let text = p.model.to_model_file();
        let again = parse_model(&text, &BTreeMap::new()).unwrap();
        assert_eq!(again.model, p.model);
    }

    #[test]
    fn error_lines() {
        let e = parse_model(SAMPLE, &bind(&[("s", 1)])).unwrap_err();
        assert_eq!(e, ParseError { line: 6, kind: ParseErrorKind::UnboundParameter("a".into()) });
        let e = parse_model(SAMPLE, &bind(&[("s", 2), ("a", 1)])).unwrap_err();
        assert_eq!(e.line, 2);
        let bad = "model \"x\" dim 2\nd 1 = 0\nd 2 = (1,0) w[-1,-2]\n";
        assert_eq!(parse_model(bad, &BTreeMap::new()).unwrap_err(), err(3, ParseErrorKind::NotIntegrable(2)));
        let bad = "model \"x\" dim 2\nd 1 = (1,0) w[1,-2]\nd 2 = (1,0) w[1,2]\n";
        assert!(matches!(parse_model(bad, &BTreeMap::new()).unwrap_err().kind, ParseErrorKind::NotNilpotentSquare(_)));
        let bad = "model \"x\" dim 2\nd 1 = 0\nd 2 = (1,0) w[1,2\n";
        assert!(matches!(parse_model(bad, &BTreeMap::new()).unwrap_err(), ParseError { line: 3, kind: ParseErrorKind::Syntax(_) }));
    }

    #[test]
    fn standalone_form() {
        let f = parse_form("(0,1) w[-1,-2] - (1,0) w[-2,-4]", 4).unwrap();
        assert_eq!(f.bidegrees(), vec![(0, 2)]);
        assert!(parse_form("(1,0) w[1,1]", 4).is_err());
    }
}
