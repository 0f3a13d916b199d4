//! Planar 1-forms `A dx + B dy` and their text format.

mod parse;

use std::fmt;

use thiserror::Error;

use crate::arith::Elem;
use crate::poly::{bivariate_gcd, MultiPoly, Vars};

pub use parse::{parse_form_coefficients, parse_poly, parse_rational_function, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("both coefficients are zero")]
    ZeroForm,
    #[error("coefficients share the nonconstant factor {0}")]
    CoprimalityViolation(MultiPoly),
}

/// `A dx + B dy` with `A, B` rational polynomials in `x, y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarOneForm {
    pub a: MultiPoly,
    pub b: MultiPoly,
}

impl PlanarOneForm {
    /// A validated form: not zero, coprime coefficients.
    pub fn new(a: MultiPoly, b: MultiPoly) -> Result<Self, FormError> {
        let f = Self::new_unchecked(a, b);
        if f.a.is_zero() && f.b.is_zero() {
            return Err(FormError::ZeroForm);
        }
        let g = f.common_factor();
        if !g.is_constant() {
            return Err(FormError::CoprimalityViolation(g));
        }
        Ok(f)
    }

    pub fn new_unchecked(a: MultiPoly, b: MultiPoly) -> Self {
        assert_eq!(a.vars(), &Vars::xy());
        assert_eq!(b.vars(), &Vars::xy());
        PlanarOneForm { a, b }
    }

    pub fn parse(text: &str) -> Result<Self, FormError> {
        let (a, b) = parse_form_coefficients(text)?;
        Self::new(a, b)
    }

    pub fn parse_unchecked(text: &str) -> Result<Self, FormError> {
        let (a, b) = parse_form_coefficients(text)?;
        Ok(Self::new_unchecked(a, b))
    }

    /// The form `B dx - A dy` annihilating the vector field `A d/dx + B d/dy`.
    pub fn from_vector_field(a: &MultiPoly, b: &MultiPoly) -> Self {
        Self::new_unchecked(b.clone(), a.neg())
    }

    /// The vector field `(-B, A)` whose associated form is this one.
    pub fn vector_field(&self) -> (MultiPoly, MultiPoly) {
        (self.b.neg(), self.a.clone())
    }

    /// Normalized gcd of the two coefficients.
    pub fn common_factor(&self) -> MultiPoly {
        bivariate_gcd(&self.a, &self.b)
    }

    /// Divides out the common factor of the coefficients, returning it too.
    pub fn reduced(&self) -> (Self, MultiPoly) {
        let g = self.common_factor();
        if g.is_constant() {
            return (self.clone(), g);
        }
        let div = |p: &MultiPoly| {
            crate::arith::over_q(p.div_exact(&g)).expect("gcd divides both coefficients")
        };
        (Self::new_unchecked(div(&self.a), div(&self.b)), g)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Whether `other = c * self` for a nonzero constant `c`.
    pub fn is_proportional(&self, other: &PlanarOneForm) -> bool {
        let pick = |f: &PlanarOneForm| {
            f.a.leading().or_else(|| f.b.leading()).map(|(e, c)| (e.clone(), c.clone()))
        };
        let (Some((e, c)), false) = (pick(self), other.is_zero()) else {
            return false;
        };
        let from_a = self.a.leading().is_some();
        let oc = if from_a { other.a.coeff(&e) } else { other.b.coeff(&e) };
        if oc.is_zero() {
            return false;
        }
        let t = self.a.tower().join(other.a.tower()).expect("incompatible towers");
        let ratio = t.div(&oc, &c).expect("leading coefficient is invertible");
        self.a.scale(&ratio) == other.a && self.b.scale(&ratio) == other.b
    }

    /// Swaps the roles of `x` and `y`: `A dx + B dy` becomes
    /// `B(y, x) dx + A(y, x) dy`.
    pub fn swap(&self) -> Self {
        let sw = |p: &MultiPoly| {
            let terms = p.terms().map(|(e, c)| (vec![e[1], e[0]], c.clone()));
            MultiPoly::from_terms(p.vars(), p.tower(), terms)
        };
        Self::new_unchecked(sw(&self.b), sw(&self.a))
    }

    /// Multiplies both coefficients by a constant.
    pub fn scale(&self, c: &Elem) -> Self {
        Self::new_unchecked(self.a.scale(c), self.b.scale(c))
    }
}

impl fmt::Display for PlanarOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let f = PlanarOneForm::parse("(x*y+y^2+5*x^3*y) dx + (-x^2-x*y+y^3) dy").unwrap();
        assert_eq!(f.to_string(), "(5*x^3*y + x*y + y^2) dx + (-x^2 - x*y + y^3) dy");
        let g = PlanarOneForm::parse("(y) dx - (x) dy").unwrap();
        assert_eq!(g.to_string(), "(y) dx + (-x) dy");
        match PlanarOneForm::parse("(x) dx + (2*x) dy") {
            Err(FormError::CoprimalityViolation(g)) => assert_eq!(g.to_string(), "x"),
            other => panic!("{other:?}"),
        }
        assert_eq!(PlanarOneForm::parse("(0) dx"), Err(FormError::ZeroForm));
    }

    #[test]
    fn swapping() {
        let f = PlanarOneForm::parse("(y) dx - (x) dy").unwrap();
        assert_eq!(f.swap().to_string(), "(-y) dx + (x) dy");
        assert!(f.swap().is_proportional(&f));
        let d = PlanarOneForm::parse("dx").unwrap();
        assert_eq!(d.swap(), PlanarOneForm::parse("dy").unwrap());
        let e1 = PlanarOneForm::parse("(x*y+y^2+5*x^3*y) dx + (-x^2-x*y+y^3) dy").unwrap();
        assert_eq!(e1.swap(), PlanarOneForm::parse("(-y^2-x*y+x^3) dx + (x*y+x^2+5*x*y^3) dy").unwrap());
        assert_eq!(e1.swap().swap(), e1);
    }

    #[test]
    fn proportionality() {
        let f = PlanarOneForm::parse("(y) dx - (x) dy").unwrap();
        let g = PlanarOneForm::parse("(-2*y) dx + (2*x) dy").unwrap();
        assert!(f.is_proportional(&g));
        let h = PlanarOneForm::parse("(y) dx + (x) dy").unwrap();
        assert!(!f.is_proportional(&h));
    }

    #[test]
    fn vector_field_convention() {
        let x = parse_poly("x", &Vars::xy()).unwrap();
        let y = parse_poly("y", &Vars::xy()).unwrap();
        let f = PlanarOneForm::from_vector_field(&x, &y);
        assert_eq!(f.to_string(), "(y) dx + (-x) dy");
        assert_eq!(f.vector_field(), (x, y));
    }
}
