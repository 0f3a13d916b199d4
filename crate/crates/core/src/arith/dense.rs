//! Dense univariate polynomial kernels over a tower, shared by [`UniPoly`]
//! and by inversion inside the tower itself. Coefficients are stored low to
//! high with no trailing zeros.
//!
//! [`UniPoly`]: super::UniPoly

use super::{ArithError, Elem, Tower};

pub(crate) fn trim(p: &mut Vec<Elem>) {
    while p.last().is_some_and(Elem::is_zero) {
        p.pop();
    }
}

pub(crate) fn add(t: &Tower, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let zero = Elem::zero();
    let mut out: Vec<Elem> = (0..n)
        .map(|i| t.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[Elem]) -> Vec<Elem> {
    a.iter().map(Elem::neg).collect()
}

pub(crate) fn sub(t: &Tower, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    add(t, a, &neg(b))
}

pub(crate) fn scale(t: &Tower, a: &[Elem], c: &Elem) -> Vec<Elem> {
    let mut out: Vec<Elem> = a.iter().map(|x| t.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(t: &Tower, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = t.add(&out[i + j], &t.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division. Inverting the leading coefficient of `b` may split.
pub(crate) fn divrem(
    t: &Tower,
    a: &[Elem],
    b: &[Elem],
) -> Result<(Vec<Elem>, Vec<Elem>), ArithError> {
    let lc = b.last().ok_or(ArithError::DivisionByZero)?;
    let lc_inv = t.inv(lc)?;
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![Elem::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = t.mul(r.last().unwrap(), &lc_inv);
        for (i, bi) in b.iter().enumerate().take(db) {
            r[k + i] = t.sub(&r[k + i], &t.mul(&c, bi));
        }
        r.pop();
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    Ok((q, r))
}

pub(crate) fn monic(t: &Tower, a: &[Elem]) -> Result<Vec<Elem>, ArithError> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lc) if lc.is_one() => Ok(a.to_vec()),
        Some(lc) => {
            let inv = t.inv(lc)?;
            let mut out: Vec<Elem> = a.iter().map(|x| t.mul(x, &inv)).collect();
            // the leading coefficient is exactly one now
            *out.last_mut().unwrap() = Elem::one();
            trim(&mut out);
            Ok(out)
        }
    }
}

/// Monic gcd; zero when both inputs are zero.
pub(crate) fn gcd(t: &Tower, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>, ArithError> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = divrem(t, &r0, &r1)?;
        r0 = r1;
        r1 = r;
    }
    monic(t, &r0)
}

pub(crate) fn derivative(t: &Tower, a: &[Elem]) -> Vec<Elem> {
    let mut out: Vec<Elem> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| t.mul(c, &Elem::from_int(i as i64)))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn eval(t: &Tower, a: &[Elem], x: &Elem) -> Elem {
    a.iter()
        .rev()
        .fold(Elem::zero(), |acc, c| t.add(&t.mul(&acc, x), c))
}

/// One printed summand: sign plus body without sign.
pub(crate) struct Term {
    pub negative: bool,
    pub body: String,
}

pub(crate) fn join_terms(terms: impl IntoIterator<Item = Term>) -> String {
    let mut out = String::new();
    for (i, term) in terms.into_iter().enumerate() {
        match (i, term.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&term.body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
