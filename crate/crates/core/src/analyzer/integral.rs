//! Direct checks of first integrals and invariant curves.

use crate::poly::MultiPoly;

/// Whether `f1/f2` is constant along the field `a d/dx + b d/dy`.
pub fn verify_first_integral(a: &MultiPoly, b: &MultiPoly, f1: &MultiPoly, f2: &MultiPoly) -> bool {
    let wronskian = |i| f1.partial(i).mul(f2).sub(&f1.mul(&f2.partial(i)));
    a.mul(&wronskian(0)).add(&b.mul(&wronskian(1))).is_zero()
}

/// The cofactor `k` with `X(h) = k*h`, if `h` is invariant.
pub fn invariant_curve_check(a: &MultiPoly, b: &MultiPoly, h: &MultiPoly) -> Option<MultiPoly> {
    assert!(!h.is_zero(), "invariant curve must be nonzero");
    let xh = a.mul(&h.partial(0)).add(&b.mul(&h.partial(1)));
    xh.div_exact(h).ok().flatten()
}
