//! Recursive-descent reader for the small text formats.
//!
//! Coefficient expressions are sums, differences, products and quotients
//! of integers and named parameters, with unary minus and parentheses.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{GaussianRational, Rational};

use super::ParseErrorKind;

/// How names in expressions resolve.
pub(crate) struct Scope<'a> {
    pub declared: &'a [String],
    pub bound: &'a BTreeMap<String, Rational>,
}

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(s: &'a str) -> Self {
        Self { src: s.as_bytes(), pos: 0 }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<(), ParseErrorKind> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{}'", c as char)))
        }
    }

    pub fn unexpected(&mut self, wanted: &str) -> ParseErrorKind {
        let found = match self.peek() {
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                format!("'{}'", rest.chars().take(12).collect::<String>())
            }
            None => "end of line".to_string(),
        };
        ParseErrorKind::Syntax(format!("expected {wanted}, found {found}"))
    }

    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let ok = c == b'_' || c.is_ascii_alphabetic() || (self.pos > start && c.is_ascii_digit());
            if !ok {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    pub fn integer(&mut self) -> Option<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    pub fn natural(&mut self) -> Option<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    /// Double-quoted string without escapes.
    pub fn quoted(&mut self) -> Result<String, ParseErrorKind> {
        self.expect(b'"')?;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != b'"' {
            self.pos += 1;
        }
        if self.pos == self.src.len() {
            return Err(ParseErrorKind::Syntax("unterminated string".into()));
        }
        let s = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        self.pos += 1;
        Ok(s)
    }

    pub fn keyword(&mut self, kw: &str) -> Result<(), ParseErrorKind> {
        match self.ident() {
            Some(w) if w == kw => Ok(()),
            _ => Err(ParseErrorKind::Syntax(format!("expected '{kw}'"))),
        }
    }

    pub fn expr(&mut self, scope: &Scope) -> Result<Rational, ParseErrorKind> {
        let mut acc = self.product(scope)?;
        loop {
            if self.eat(b'+') {
                acc += self.product(scope)?;
            } else if self.eat(b'-') {
                acc -= self.product(scope)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, scope: &Scope) -> Result<Rational, ParseErrorKind> {
        let mut acc = self.unary(scope)?;
        loop {
            if self.eat(b'*') {
                acc *= self.unary(scope)?;
            } else if self.eat(b'/') {
                let d = self.unary(scope)?;
                if d.is_zero() {
                    return Err(ParseErrorKind::DivisionByZero);
                }
                acc /= d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, scope: &Scope) -> Result<Rational, ParseErrorKind> {
        if self.eat(b'-') {
            return Ok(-self.unary(scope)?);
        }
        if self.eat(b'(') {
            let v = self.expr(scope)?;
            self.expect(b')')?;
            return Ok(v);
        }
        if let Some(n) = self.natural() {
            return Ok(Rational::from_integer(n));
        }
        if let Some(name) = self.ident() {
            if !scope.declared.contains(&name) {
                return Err(ParseErrorKind::UnknownParameter(name));
            }
            return scope.bound.get(&name).cloned().ok_or(ParseErrorKind::UnboundParameter(name));
        }
        Err(self.unexpected("a number, parameter or '('"))
    }

    /// `(<expr>,<expr>)`.
    pub fn complex(&mut self, scope: &Scope) -> Result<GaussianRational, ParseErrorKind> {
        self.expect(b'(')?;
        let re = self.expr(scope)?;
        self.expect(b',')?;
        let im = self.expr(scope)?;
        self.expect(b')')?;
        Ok(GaussianRational::new(re, im))
    }

    /// `w[i,j,...]` with signed 1-based indices, possibly empty.
    pub fn monomial_indices(&mut self) -> Result<Vec<i64>, ParseErrorKind> {
        match self.ident() {
            Some(w) if w == "w" => {}
            _ => return Err(self.unexpected("'w['")),
        }
        self.expect(b'[')?;
        let mut idx = Vec::new();
        if self.eat(b']') {
            return Ok(idx);
        }
        loop {
            idx.push(self.integer().ok_or_else(|| self.unexpected("an index"))?);
            if self.eat(b']') {
                return Ok(idx);
            }
            self.expect(b',')?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn eval(s: &str, bound: &[(&str, Rational)]) -> Result<Rational, ParseErrorKind> {
        let declared: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let bound: BTreeMap<String, Rational> = bound.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        let scope = Scope { declared: &declared, bound: &bound };
        let mut c = Cursor::new(s);
        let v = c.expr(&scope)?;
        if !c.at_end() {
            return Err(c.unexpected("end"));
        }
        Ok(v)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(eval("1/2 + 3*-2", &[]).unwrap(), rat(-11, 2));
        assert_eq!(eval("-(a*b) + 2*a", &[("a", rat(1, 3)), ("b", rat(3, 1))]).unwrap(), rat(-1, 3));
    }

    #[test]
    fn name_errors() {
        assert_eq!(eval("a", &[]), Err(ParseErrorKind::UnboundParameter("a".into())));
        assert_eq!(eval("zz", &[]), Err(ParseErrorKind::UnknownParameter("zz".into())));
        assert_eq!(eval("1/(1-1)", &[]), Err(ParseErrorKind::DivisionByZero));
        assert!(matches!(eval("1 +", &[]), Err(ParseErrorKind::Syntax(_))));
    }
}
