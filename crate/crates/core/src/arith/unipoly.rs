use std::fmt;

use super::dense;
use super::{ArithError, Elem, Tower};

/// Univariate polynomial over a tower, coefficients low to high.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    pub tower: Tower,
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn new(tower: Tower, mut coeffs: Vec<Elem>) -> Self {
        dense::trim(&mut coeffs);
        UniPoly { tower, coeffs }
    }

    pub fn from_ints(tower: Tower, cs: &[i64]) -> Self {
        Self::new(tower, cs.iter().map(|&n| Elem::from_int(n)).collect())
    }

    pub fn zero(tower: Tower) -> Self {
        UniPoly { tower, coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn with(&self, coeffs: Vec<Elem>) -> Self {
        UniPoly { tower: self.tower.clone(), coeffs }
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        self.with(dense::add(&self.tower, &self.coeffs, &o.coeffs))
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.with(dense::sub(&self.tower, &self.coeffs, &o.coeffs))
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        self.with(dense::mul(&self.tower, &self.coeffs, &o.coeffs))
    }

    pub fn scale(&self, c: &Elem) -> UniPoly {
        self.with(dense::scale(&self.tower, &self.coeffs, c))
    }

    pub fn divrem(&self, o: &UniPoly) -> Result<(UniPoly, UniPoly), ArithError> {
        let (q, r) = dense::divrem(&self.tower, &self.coeffs, &o.coeffs)?;
        Ok((self.with(q), self.with(r)))
    }

    pub fn monic(&self) -> Result<UniPoly, ArithError> {
        Ok(self.with(dense::monic(&self.tower, &self.coeffs)?))
    }

    pub fn gcd(&self, o: &UniPoly) -> Result<UniPoly, ArithError> {
        Ok(self.with(dense::gcd(&self.tower, &self.coeffs, &o.coeffs)?))
    }

    pub fn derivative(&self) -> UniPoly {
        self.with(dense::derivative(&self.tower, &self.coeffs))
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        dense::eval(&self.tower, &self.coeffs, x)
    }

    /// Monic squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Result<UniPoly, ArithError> {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative())?;
        let (q, _) = self.divrem(&g)?;
        q.monic()
    }

    /// Printed with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_term(""),
                1 => c.to_term(var),
                _ => c.to_term(&format!("{var}^{i}")),
            });
        dense::join_terms(terms)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("y"))
    }
}
