use std::fmt;

use num_rational::BigRational;

use super::{ArithError, Elem, Tower};

/// An element together with the tower it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    pub tower: Tower,
    pub elem: Elem,
}

impl Scalar {
    pub fn new(tower: Tower, elem: Elem) -> Self {
        Scalar { tower, elem }
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar { tower: Tower::rationals(), elem: Elem::Rat(q) }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { tower: Tower::rationals(), elem: Elem::from_int(n) }
    }

    fn joined(&self, other: &Scalar) -> Tower {
        self.tower
            .join(&other.tower)
            .expect("scalars from incompatible towers")
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let t = self.joined(other);
        let elem = t.add(&self.elem, &other.elem);
        Scalar { tower: t, elem }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        let t = self.joined(other);
        let elem = t.sub(&self.elem, &other.elem);
        Scalar { tower: t, elem }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let t = self.joined(other);
        let elem = t.mul(&self.elem, &other.elem);
        Scalar { tower: t, elem }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { tower: self.tower.clone(), elem: self.elem.neg() }
    }

    pub fn inverse(&self) -> Result<Scalar, ArithError> {
        let elem = self.tower.inv(&self.elem)?;
        Ok(Scalar { tower: self.tower.clone(), elem })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Zero test that may split the tower.
    pub fn is_zero(&self) -> Result<bool, ArithError> {
        self.tower.is_zero(&self.elem)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.elem.fmt(f)
    }
}
