//! The two families of complex structures on 8-dimensional nilpotent Lie
//! algebras with one-dimensional center.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exterior::Form;
use crate::linalg::{rat, GaussianRational as G, Rational};
use crate::model::{parse_model, ComplexModel};

use super::CatalogError;

pub const FAMILY_I_TEMPLATE: &str = "\
model \"family-I\" dim 4
param eps:bit nu:bit a b delta:sign
d 1 = 0
d 2 = (eps,0) w[1,-1]
d 3 = (1,0) w[1,4] + (1,0) w[1,-4] + (a,0) w[2,-1] + (0,delta*eps*b) w[1,-2]
d 4 = (0,nu) w[1,-1] + (b,0) w[2,-2] + (0,delta) w[1,-3] - (0,delta) w[3,-1]
";

pub const FAMILY_II_TEMPLATE: &str = "\
model \"family-II\" dim 4
param eps:bit mu:bit nu:bit a b
d 1 = 0
d 2 = (1,0) w[1,4] + (1,0) w[1,-4]
d 3 = (a,0) w[1,-1] + (eps,0) w[1,2] + (eps,0) w[1,-2] - (eps,0) w[2,-1] + (0,mu) w[2,4] + (0,mu) w[2,-4]
d 4 = (0,nu) w[1,-1] - (mu,0) w[2,-2] + (0,b) w[1,-2] - (0,b) w[2,-1] + (0,1) w[1,-3] - (0,1) w[3,-1]
";

/// Parameters `(ε, ν, a, b, δ)` of Family I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyI {
    pub eps: u8,
    pub nu: u8,
    pub a: Rational,
    pub b: Rational,
    pub delta: i8,
}

/// Parameters `(ε, μ, ν, a, b)` of Family II.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyII {
    pub eps: u8,
    pub mu: u8,
    pub nu: u8,
    pub a: Rational,
    pub b: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyTuple {
    I(FamilyI),
    II(FamilyII),
}

fn bit(name: &str, v: u8) -> Result<(), CatalogError> {
    if v > 1 {
        return Err(CatalogError::InvalidTuple(format!("{name} must be 0 or 1, got {v}")));
    }
    Ok(())
}

fn bind(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

impl FamilyI {
    pub fn new(eps: u8, nu: u8, a: Rational, b: Rational, delta: i8) -> Self {
        Self { eps, nu, a, b, delta }
    }

    /// Integer shorthand: `(eps, nu, a, b, delta)` with `a = a_num/a_den`
    /// and `b = b_num/b_den`.
    pub fn ints(eps: u8, nu: u8, a: (i64, i64), b: (i64, i64), delta: i8) -> Self {
        Self::new(eps, nu, rat(a.0, a.1), rat(b.0, b.1), delta)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        bit("eps", self.eps)?;
        bit("nu", self.nu)?;
        if self.delta != 1 && self.delta != -1 {
            return Err(CatalogError::InvalidTuple(format!("delta must be 1 or -1, got {}", self.delta)));
        }
        if self.a.is_zero() && self.b.is_zero() {
            return Err(CatalogError::InvalidTuple("(a,b) must not be (0,0)".into()));
        }
        Ok(())
    }

    /// Whether `(ε, ν, a, b)` is one of the normal forms of the
    /// classification, with `a ≥ 0`.
    pub fn is_classified(&self) -> bool {
        if self.validate().is_err() || self.a.is_negative() {
            return false;
        }
        let (one, zero) = (Rational::one(), Rational::zero());
        let (a, b) = (&self.a, &self.b);
        match (self.eps, self.nu) {
            (0, 0) => (a.is_zero() && b == &one) || (a == &one && (b.is_zero() || b == &one)),
            (0, 1) => (a.is_zero() && b.abs() == one) || a == &one,
            (1, 0) => (a.is_zero() && b == &one) || (a == &one && b >= &zero),
            _ => true,
        }
    }

    pub fn bindings(&self) -> BTreeMap<String, Rational> {
        bind(&[
            ("eps", Rational::from_integer(self.eps.into())),
            ("nu", Rational::from_integer(self.nu.into())),
            ("a", self.a.clone()),
            ("b", self.b.clone()),
            ("delta", Rational::from_integer(self.delta.into())),
        ])
    }

    pub fn model(&self) -> Result<ComplexModel, CatalogError> {
        self.validate()?;
        let parsed = parse_model(FAMILY_I_TEMPLATE, &self.bindings())?;
        Ok(parsed.model.with_name(format!("family-I{self}")))
    }

    /// `Θ(δ, ν, a, b)`.
    pub fn theta(&self) -> Rational {
        theta(self.delta, self.nu, &self.a, &self.b)
    }

    /// The `(1,1)`-form `γ` with `∂ω^{3̄4̄} + ∂̄γ = 0`, defined when `ε = 1`
    /// and `ab ≠ 0`.
    pub fn gamma_34(&self) -> Option<Form> {
        if self.eps != 1 || self.a.is_zero() || self.b.is_zero() {
            return None;
        }
        let (a, b) = (&self.a, &self.b);
        let d = Rational::from_integer(self.delta.into());
        let dnb = Rational::from_integer((2 * i64::from(self.delta) * i64::from(self.nu)).into()) * b;
        let (a2, b2) = (a * a, b * b);
        let two = rat(2, 1);
        let c23 = G::new(Rational::zero(), &d * (-&a2 + &b2 + &dnb) / (&two * b));
        let s = (&a2 - &b2 + &dnb) / &two;
        let c32 = G::from_real(-&s / a);
        let c41 = G::from_real(-&s / b);
        let c34 = G::new(Rational::zero(), -&d * (&a2 + &b2 - &dnb) / (&two * a * b));
        let terms = [(vec![2, -3], c23), (vec![3, -2], c32), (vec![4, -1], c41), (vec![3, -4], c34), (vec![4, -3], G::from_int(-1))];
        Some(
            terms
                .iter()
                .fold(Form::zero(4), |acc, (idx, c)| acc.add(&Form::from_indices(4, idx, c.clone()).expect("indices are in range"))),
        )
    }
}

impl FamilyII {
    pub fn new(eps: u8, mu: u8, nu: u8, a: Rational, b: Rational) -> Self {
        Self { eps, mu, nu, a, b }
    }

    pub fn ints(eps: u8, mu: u8, nu: u8, a: (i64, i64), b: (i64, i64)) -> Self {
        Self::new(eps, mu, nu, rat(a.0, a.1), rat(b.0, b.1))
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        bit("eps", self.eps)?;
        bit("mu", self.mu)?;
        bit("nu", self.nu)
    }

    pub fn is_classified(&self) -> bool {
        if self.validate().is_err() {
            return false;
        }
        let (a, b) = (&self.a, &self.b);
        match (self.eps, self.mu, self.nu) {
            (1, 1, 0) | (1, 0, 1) => true,
            (1, 0, 0) => a.is_zero() || a.is_one(),
            (0, 1, 0) => (a.is_zero() || a.is_one()) && b.is_zero(),
            _ => false,
        }
    }

    pub fn bindings(&self) -> BTreeMap<String, Rational> {
        bind(&[
            ("eps", Rational::from_integer(self.eps.into())),
            ("mu", Rational::from_integer(self.mu.into())),
            ("nu", Rational::from_integer(self.nu.into())),
            ("a", self.a.clone()),
            ("b", self.b.clone()),
        ])
    }

    pub fn model(&self) -> Result<ComplexModel, CatalogError> {
        self.validate()?;
        let parsed = parse_model(FAMILY_II_TEMPLATE, &self.bindings())?;
        Ok(parsed.model.with_name(format!("family-II{self}")))
    }

    /// The `(1,1)`-form `γ` with `∂(ω^{1̄3̄} - iω^{3̄4̄}) + ∂̄γ = 0`, defined
    /// when `ε = μ = 1`.
    pub fn gamma_13_34(&self) -> Option<Form> {
        if self.eps != 1 || self.mu != 1 {
            return None;
        }
        let terms = [
            (vec![1, -2], G::new(Rational::zero(), rat(3, 2) * &self.a)),
            (vec![1, -3], G::from_ratios(1, 2, 0, 1)),
            (vec![3, -1], G::from_ratios(1, 2, 0, 1)),
            (vec![3, -4], G::from_ratios(0, 1, 1, 2)),
            (vec![4, -3], G::i()),
        ];
        Some(
            terms
                .iter()
                .fold(Form::zero(4), |acc, (idx, c)| acc.add(&Form::from_indices(4, idx, c.clone()).expect("indices are in range"))),
        )
    }
}

impl FamilyTuple {
    pub fn validate(&self) -> Result<(), CatalogError> {
        match self {
            Self::I(t) => t.validate(),
            Self::II(t) => t.validate(),
        }
    }

    pub fn model(&self) -> Result<ComplexModel, CatalogError> {
        match self {
            Self::I(t) => t.model(),
            Self::II(t) => t.model(),
        }
    }

    pub fn is_classified(&self) -> bool {
        match self {
            Self::I(t) => t.is_classified(),
            Self::II(t) => t.is_classified(),
        }
    }
}

impl fmt::Display for FamilyI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.eps, self.nu, self.a, self.b, self.delta)
    }
}

impl fmt::Display for FamilyII {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.eps, self.mu, self.nu, self.a, self.b)
    }
}

impl fmt::Display for FamilyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::I(t) => write!(f, "I{t}"),
            Self::II(t) => write!(f, "II{t}"),
        }
    }
}

/// `((a-b)^2 - 2δνb)((a+b)^2 - 2δνb)`.
pub fn theta(delta: i8, nu: u8, a: &Rational, b: &Rational) -> Rational {
    let shift = Rational::from_integer((2 * i64::from(delta) * i64::from(nu)).into()) * b;
    let minus = (a - b) * (a - b) - &shift;
    let plus = (a + b) * (a + b) - &shift;
    minus * plus
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, idx: &[i64], c: G) -> Form {
        Form::from_indices(n, idx, c).unwrap()
    }

    #[test]
    fn family_i_matches_equations() {
        let t = FamilyI::ints(1, 1, (2, 1), (3, 1), -1);
        let m = t.model().unwrap();
        let one = G::from_int(1);
        assert!(m.d_omega(1).is_zero());
        assert_eq!(*m.d_omega(2), w(4, &[1, -1], one.clone()));
        // dω³ = ω^{14} + ω^{14̄} + a ω^{21̄} + iδεb ω^{12̄}
        let d3 = w(4, &[1, 4], one.clone()).add(&w(4, &[1, -4], one.clone())).add(&w(4, &[2, -1], G::from_int(2))).add(&w(
            4,
            &[1, -2],
            G::from_ratios(0, 1, -3, 1),
        ));
        assert_eq!(*m.d_omega(3), d3);
        // dω⁴ = iν ω^{11̄} + b ω^{22̄} + iδ(ω^{13̄} - ω^{31̄})
        let d4 = w(4, &[1, -1], G::i()).add(&w(4, &[2, -2], G::from_int(3))).add(&w(4, &[1, -3], -G::i())).add(&w(4, &[3, -1], G::i()));
        assert_eq!(*m.d_omega(4), d4);
    }

    #[test]
    fn family_ii_matches_equations() {
        let t = FamilyII::ints(1, 1, 0, (1, 2), (2, 1));
        let m = t.model().unwrap();
        let one = G::from_int(1);
        assert_eq!(*m.d_omega(2), w(4, &[1, 4], one.clone()).add(&w(4, &[1, -4], one.clone())));
        let d3 = w(4, &[1, -1], G::from_ratios(1, 2, 0, 1))
            .add(&w(4, &[1, 2], one.clone()))
            .add(&w(4, &[1, -2], one.clone()))
            .add(&w(4, &[2, -1], -one.clone()))
            .add(&w(4, &[2, 4], G::i()))
            .add(&w(4, &[2, -4], G::i()));
        assert_eq!(*m.d_omega(3), d3);
        let d4 = w(4, &[2, -2], -one)
            .add(&w(4, &[1, -2], G::from_ratios(0, 1, 2, 1)))
            .add(&w(4, &[2, -1], G::from_ratios(0, 1, -2, 1)))
            .add(&w(4, &[1, -3], G::i()))
            .add(&w(4, &[3, -1], -G::i()));
        assert_eq!(*m.d_omega(4), d4);
        let no_mu = FamilyII::ints(1, 0, 0, (0, 1), (1, 1)).model().unwrap();
        assert!(no_mu.d_omega(3).coeff(Form::from_indices(4, &[2, 4], G::from_int(1)).unwrap().terms().next().unwrap().0).is_zero());
    }

    #[test]
    fn tuple_validation() {
        assert!(FamilyI::ints(0, 0, (0, 1), (0, 1), 1).model().is_err());
        assert!(FamilyI::ints(2, 0, (1, 1), (0, 1), 1).model().is_err());
        assert!(FamilyI::ints(0, 0, (1, 1), (0, 1), 1).is_classified());
        assert!(!FamilyI::ints(0, 0, (2, 1), (0, 1), 1).is_classified());
        assert!(FamilyI::ints(1, 0, (1, 1), (-1, 2), 1).model().is_ok());
        assert!(!FamilyI::ints(1, 0, (1, 1), (-1, 2), 1).is_classified());
        assert!(FamilyII::ints(1, 0, 0, (1, 1), (5, 1),).is_classified());
        assert!(!FamilyII::ints(0, 0, 0, (1, 1), (0, 1)).is_classified());
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(1, 1, &rat(1, 1), &rat(1, 1)), rat(-4, 1));
        assert_eq!(theta(1, 1, &rat(4, 1), &rat(2, 1)), rat(0, 1));
        let (a, b) = (rat(3, 7), rat(-2, 5));
        let d = &a * &a - &b * &b;
        assert_eq!(theta(-1, 0, &a, &b), &d * &d);
    }

    #[test]
    fn gamma_forms_solve_the_zigzag() {
        let one = G::from_int(1);
        for t in [FamilyI::ints(1, 1, (1, 1), (1, 1), 1), FamilyI::ints(1, 0, (1, 1), (1, 2), -1), FamilyI::ints(1, 1, (2, 1), (-3, 1), -1)]
        {
            let m = t.model().unwrap();
            let lhs = m.del(&w(4, &[-3, -4], one.clone())).add(&m.delbar(&t.gamma_34().unwrap()));
            assert!(lhs.is_zero(), "{t}");
        }
        let t = FamilyI::ints(1, 1, (1, 1), (1, 1), 1);
        let expected =
            w(4, &[2, -3], G::i()).sub(&w(4, &[3, -2], one.clone())).sub(&w(4, &[4, -1], one.clone())).sub(&w(4, &[4, -3], one.clone()));
        assert_eq!(t.gamma_34().unwrap(), expected);
        for t in [FamilyII::ints(1, 1, 0, (0, 1), (0, 1)), FamilyII::ints(1, 1, 0, (2, 3), (-5, 2))] {
            let m = t.model().unwrap();
            let x = w(4, &[-1, -3], one.clone()).sub(&w(4, &[-3, -4], G::i()));
            assert!(m.del(&x).add(&m.delbar(&t.gamma_13_34().unwrap())).is_zero(), "{t}");
        }
    }
}
