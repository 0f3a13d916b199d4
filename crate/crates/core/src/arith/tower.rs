use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::{self, Term};
use super::{fmt_rational, rational_roots, ArithError};

/// Canonical representative of an element of a tower.
///
/// `Alg(l, cs)` is the polynomial `sum cs[i] * tl^i` in the generator of level
/// `l` (1-based), with every coefficient living strictly below level `l`,
/// at least two coefficients, a nonzero last coefficient and fewer
/// coefficients than the degree of the level's modulus. An element that does
/// not involve `tl` is stored at its own lower level, so representatives are
/// unique and structural equality is equality in the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Alg(usize, Vec<Elem>),
}

impl Elem {
    pub fn zero() -> Self {
        Elem::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Elem::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Elem::Rat(BigRational::from_integer(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Elem::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Elem::Rat(q) if q.is_one())
    }

    /// Highest generator this element involves (0 for rationals).
    pub fn level(&self) -> usize {
        match self {
            Elem::Rat(_) => 0,
            Elem::Alg(l, _) => *l,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Rat(q) => Some(q),
            Elem::Alg(..) => None,
        }
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Rat(q) => Elem::Rat(-q),
            Elem::Alg(l, cs) => Elem::Alg(*l, cs.iter().map(Elem::neg).collect()),
        }
    }

    /// Builds the canonical element `sum cs[i] * t_level^i` from coefficients
    /// that are already reduced below `level`.
    pub(crate) fn from_coeffs(level: usize, mut cs: Vec<Elem>) -> Elem {
        dense::trim(&mut cs);
        match cs.len() {
            0 => Elem::zero(),
            1 => cs.pop().unwrap(),
            _ => Elem::Alg(level, cs),
        }
    }

    /// Coefficients as a polynomial in the generator of `level`, which must
    /// be at least `self.level()`.
    pub(crate) fn coeffs_at(&self, level: usize) -> Vec<Elem> {
        match self {
            Elem::Alg(l, cs) if *l == level => cs.clone(),
            e if e.is_zero() => Vec::new(),
            e => vec![e.clone()],
        }
    }

    /// Printed form as a summand next to `monomial` (empty for constants).
    pub(crate) fn to_term(&self, monomial: &str) -> Term {
        match self {
            Elem::Rat(q) => {
                let a = q.abs();
                let body = if monomial.is_empty() {
                    fmt_rational(&a)
                } else if a.is_one() {
                    monomial.to_string()
                } else {
                    format!("{}*{}", fmt_rational(&a), monomial)
                };
                Term { negative: q.is_negative(), body }
            }
            Elem::Alg(l, cs) if cs.iter().filter(|c| !c.is_zero()).count() == 1 => {
                let i = cs.len() - 1;
                let mut inner = if i == 1 { format!("t{l}") } else { format!("t{l}^{i}") };
                if !monomial.is_empty() {
                    inner = format!("{inner}*{monomial}");
                }
                cs[i].to_term(&inner)
            }
            Elem::Alg(..) => {
                let body = if monomial.is_empty() {
                    format!("({self})")
                } else {
                    format!("({self})*{monomial}")
                };
                Term { negative: false, body }
            }
        }
    }
}

impl From<BigRational> for Elem {
    fn from(q: BigRational) -> Self {
        Elem::Rat(q)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(q) => f.write_str(&fmt_rational(q)),
            Elem::Alg(l, cs) => {
                let terms = cs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(
                    |(i, c)| match i {
                        0 => c.to_term(""),
                        1 => c.to_term(&format!("t{l}")),
                        _ => c.to_term(&format!("t{l}^{i}")),
                    },
                );
                f.write_str(&dense::join_terms(terms))
            }
        }
    }
}

/// A proper monic factor of the modulus at `level`, discovered while
/// inverting a zero divisor. Coefficients live below `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub level: usize,
    pub factor: Vec<Elem>,
}

/// A tower of simple extensions `Q = K0 < K1 < ... < Kd` with
/// `Kl = K(l-1)[tl] / (ml)`. The trivial tower is the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tower {
    moduli: Arc<Vec<Vec<Elem>>>,
}

impl Tower {
    pub fn rationals() -> Self {
        Self::default()
    }

    pub fn depth(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Monic modulus of generator `level` (1-based), low to high.
    pub fn modulus(&self, level: usize) -> &[Elem] {
        &self.moduli[level - 1]
    }

    pub fn degree(&self, level: usize) -> usize {
        self.moduli[level - 1].len() - 1
    }

    /// Adjoins a root of `modulus`, a monic polynomial of positive degree
    /// over this tower. Squarefreeness is the caller's responsibility.
    pub fn extend(&self, modulus: Vec<Elem>) -> Tower {
        assert!(modulus.len() >= 2, "modulus must have positive degree");
        assert!(modulus.last().unwrap().is_one(), "modulus must be monic");
        assert!(
            modulus.iter().all(|c| c.level() <= self.depth()),
            "modulus coefficients must live in the base tower"
        );
        let mut moduli = (*self.moduli).clone();
        moduli.push(modulus);
        Tower { moduli: Arc::new(moduli) }
    }

    /// Drops every level above `depth`.
    pub fn truncate(&self, depth: usize) -> Tower {
        Tower { moduli: Arc::new(self.moduli[..depth].to_vec()) }
    }

    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.depth() <= other.depth()
            && (Arc::ptr_eq(&self.moduli, &other.moduli)
                || self.moduli[..] == other.moduli[..self.depth()])
    }

    /// The smaller tower containing both, if one extends the other.
    pub fn join(&self, other: &Tower) -> Option<Tower> {
        if self.is_prefix_of(other) {
            Some(other.clone())
        } else if other.is_prefix_of(self) {
            Some(self.clone())
        } else {
            None
        }
    }

    /// The generator of `level` as an element.
    pub fn generator(&self, level: usize) -> Elem {
        self.reduce_poly(level, vec![Elem::zero(), Elem::one()])
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la > lb {
                    let mut cs = a.coeffs_at(la);
                    cs[0] = self.add(&cs[0], b);
                    Elem::from_coeffs(la, cs)
                } else if lb > la {
                    self.add(b, a)
                } else {
                    Elem::from_coeffs(la, dense::add(self, &a.coeffs_at(la), &b.coeffs_at(la)))
                }
            }
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &b.neg())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ if a.is_zero() || b.is_zero() => Elem::zero(),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la > lb {
                    let cs = a.coeffs_at(la).iter().map(|c| self.mul(c, b)).collect();
                    Elem::from_coeffs(la, cs)
                } else if lb > la {
                    self.mul(b, a)
                } else {
                    self.reduce_poly(la, dense::mul(self, &a.coeffs_at(la), &b.coeffs_at(la)))
                }
            }
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u32) -> Elem {
        let mut base = a.clone();
        let mut acc = Elem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against the
    /// modulus. A nontrivial gcd is reported as a split.
    pub fn inv(&self, a: &Elem) -> Result<Elem, ArithError> {
        let (level, cs) = match a {
            Elem::Rat(q) if q.is_zero() => return Err(ArithError::DivisionByZero),
            Elem::Rat(q) => return Ok(Elem::Rat(q.recip())),
            Elem::Alg(l, cs) => (*l, cs),
        };
        let mut r0 = self.modulus(level).to_vec();
        let mut r1 = cs.clone();
        let mut s0: Vec<Elem> = Vec::new();
        let mut s1 = vec![Elem::one()];
        // invariant: s_i * a == r_i modulo the modulus
        loop {
            if r1.len() == 1 {
                let c = self.inv(&r1[0])?;
                return Ok(self.reduce_poly(level, dense::scale(self, &s1, &c)));
            }
            let (q, r) = dense::divrem(self, &r0, &r1)?;
            let s2 = dense::sub(self, &s0, &dense::mul(self, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                let factor = dense::monic(self, &r0)?;
                return Err(ArithError::ZeroDivisorEncountered(Split { level, factor }));
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Zero test under dynamic evaluation: a nonzero representative is either
    /// a unit (`Ok(false)`) or a zero divisor (split).
    pub fn is_zero(&self, a: &Elem) -> Result<bool, ArithError> {
        match a {
            e if e.is_zero() => Ok(true),
            Elem::Rat(_) => Ok(false),
            e => self.inv(e).map(|_| false),
        }
    }

    /// Reduces `sum cs[i] * t_level^i` (coefficients below `level`) modulo
    /// the monic modulus of `level`.
    pub(crate) fn reduce_poly(&self, level: usize, mut cs: Vec<Elem>) -> Elem {
        let m = self.modulus(level);
        let n = m.len() - 1;
        dense::trim(&mut cs);
        while cs.len() > n {
            let k = cs.len() - 1;
            let c = cs.pop().unwrap();
            for (i, mi) in m.iter().enumerate().take(n) {
                cs[k - n + i] = self.sub(&cs[k - n + i], &self.mul(&c, mi));
            }
            dense::trim(&mut cs);
        }
        Elem::from_coeffs(level, cs)
    }

    /// Re-reduces an element of a tower with the same shape (for instance
    /// the parent of a split) into this one.
    pub fn specialize(&self, e: &Elem) -> Elem {
        match e {
            Elem::Rat(_) => e.clone(),
            Elem::Alg(l, cs) => {
                let cs = cs.iter().map(|c| self.specialize(c)).collect();
                self.reduce_poly(*l, cs)
            }
        }
    }

    /// The two towers obtained by replacing the modulus at `split.level` by
    /// the discovered factor and by its cofactor. Higher levels are carried
    /// over with their moduli re-reduced.
    pub fn split(&self, split: &Split) -> (Tower, Tower) {
        let level = split.level;
        let m = self.modulus(level);
        let base = self.truncate(level - 1);
        let (cofactor, rem) =
            dense::divrem(&base, m, &split.factor).expect("division by a monic factor");
        assert!(rem.is_empty(), "split factor does not divide the modulus");
        let rebuild = |modulus: Vec<Elem>| {
            let mut t = base.extend(modulus);
            for l in level + 1..=self.depth() {
                let m = self.modulus(l).iter().map(|c| t.specialize(c)).collect();
                t = t.extend(m);
            }
            t
        };
        (rebuild(split.factor.clone()), rebuild(cofactor))
    }

    /// Coordinates of `e` in the monomial basis of `K_level` over Q.
    fn flatten(&self, e: &Elem, level: usize) -> Vec<BigRational> {
        if level == 0 {
            return vec![e.as_rational().cloned().expect("rational at level 0")];
        }
        let n = self.degree(level);
        let cs = e.coeffs_at(level);
        (0..n)
            .flat_map(|i| self.flatten(cs.get(i).unwrap_or(&Elem::zero()), level - 1))
            .collect()
    }

    /// Minimal polynomial over Q of multiplication by `e`, low to high.
    pub fn minimal_polynomial(&self, e: &Elem) -> Vec<BigRational> {
        let level = e.level();
        // reduced rows: (pivot, row, combination of powers producing the row)
        let mut basis: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
        let mut power = Elem::one();
        for k in 0.. {
            let mut v = self.flatten(&power, level);
            let mut combo = vec![BigRational::zero(); k + 1];
            combo[k] = BigRational::one();
            for (pivot, row, rc) in &basis {
                if v[*pivot].is_zero() {
                    continue;
                }
                let f = &v[*pivot] / &row[*pivot];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
                for (x, y) in combo.iter_mut().zip(rc) {
                    *x -= &f * y;
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return combo,
                Some(p) => basis.push((p, v, combo)),
            }
            power = self.mul(&power, e);
        }
        unreachable!()
    }

    /// Whether `e` is a rational number on this branch. A value that is
    /// rational at some roots of the moduli but not at others forces a split.
    pub fn rational_value(&self, e: &Elem) -> Result<Option<BigRational>, ArithError> {
        if let Elem::Rat(q) = e {
            return Ok(Some(q.clone()));
        }
        for c in rational_roots(&self.minimal_polynomial(e)) {
            // e - c is never structurally zero here, so this is a unit test
            self.inv(&self.sub(e, &Elem::Rat(c)))?;
        }
        Ok(None)
    }

    /// Moduli printed as polynomials in their generators.
    pub fn describe(&self) -> Vec<String> {
        (1..=self.depth())
            .map(|l| {
                let m = self.modulus(l);
                let terms = m.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(
                    |(i, c)| match i {
                        0 => c.to_term(""),
                        1 => c.to_term(&format!("t{l}")),
                        _ => c.to_term(&format!("t{l}^{i}")),
                    },
                );
                dense::join_terms(terms)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Elem {
        Elem::from_int(n)
    }

    fn sqrt2() -> (Tower, Elem) {
        let t = Tower::rationals().extend(vec![r(-2), r(0), r(1)]);
        let g = t.generator(1);
        (t, g)
    }

    #[test]
    fn generator_squares_to_two() {
        let (t, g) = sqrt2();
        assert_eq!(t.mul(&g, &g), r(2));
        assert_eq!(g.to_string(), "t1");
    }

    #[test]
    fn inverse_of_generator_mod_t2_minus_2() {
        let (t, g) = sqrt2();
        let inv = t.inv(&g).unwrap();
        // t/2
        assert_eq!(inv, Elem::Alg(1, vec![r(0), Elem::Rat(BigRational::new(1.into(), 2.into()))]));
        assert_eq!(t.mul(&inv, &g), Elem::one());
    }

    #[test]
    fn rational_inverse() {
        let t = Tower::rationals();
        let two_thirds = Elem::Rat(BigRational::new(2.into(), 3.into()));
        assert_eq!(t.inv(&two_thirds).unwrap(), Elem::Rat(BigRational::new(3.into(), 2.into())));
        assert_eq!(t.inv(&Elem::zero()), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn zero_divisor_reports_factor() {
        let t = Tower::rationals().extend(vec![r(-1), r(0), r(1)]);
        let a = t.sub(&t.generator(1), &r(1));
        match t.inv(&a) {
            Err(ArithError::ZeroDivisorEncountered(s)) => {
                assert_eq!(s.level, 1);
                assert_eq!(s.factor, vec![r(-1), r(1)]);
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn split_partitions_the_modulus() {
        // (t - 1)(t^2 - 2) = t^3 - t^2 - 2t + 2
        let t = Tower::rationals().extend(vec![r(2), r(-2), r(-1), r(1)]);
        let a = t.sub(&t.generator(1), &r(1));
        let s = t.inv(&a).unwrap_err().split().cloned().unwrap();
        let (left, right) = t.split(&s);
        let mut moduli = [left.modulus(1).to_vec(), right.modulus(1).to_vec()];
        moduli.sort_by_key(Vec::len);
        assert_eq!(moduli[0], vec![r(-1), r(1)]);
        assert_eq!(moduli[1], vec![r(-2), r(0), r(1)]);
        let q = Tower::rationals();
        let product = dense::mul(&q, &moduli[0], &moduli[1]);
        assert_eq!(product, t.modulus(1));
        assert_eq!(dense::gcd(&q, &moduli[0], &moduli[1]).unwrap(), vec![r(1)]);
        // on the linear branch t collapses to the rational 1
        let lin = if left.degree(1) == 1 { &left } else { &right };
        assert_eq!(lin.generator(1), r(1));
    }

    #[test]
    fn two_level_tower_arithmetic() {
        // t1 = sqrt 2, t2^2 = t1
        let (t, g1) = sqrt2();
        let t = t.extend(vec![g1.neg(), r(0), r(1)]);
        let g2 = t.generator(2);
        let fourth = t.pow(&g2, 4);
        assert_eq!(fourth, r(2));
        let inv = t.inv(&g2).unwrap();
        assert_eq!(t.mul(&inv, &g2), r(1));
    }

    #[test]
    fn rational_value_detects_membership() {
        let (t, g) = sqrt2();
        assert_eq!(t.rational_value(&t.mul(&g, &g)).unwrap(), Some(BigRational::from_integer(2.into())));
        assert_eq!(t.rational_value(&g).unwrap(), None);
        // t in Q[t]/((t-1)(t^2-2)) is rational at one root only
        let t = Tower::rationals().extend(vec![r(2), r(-2), r(-1), r(1)]);
        assert!(t.rational_value(&t.generator(1)).is_err());
    }

    #[test]
    fn minimal_polynomial_of_sqrt2_plus_one() {
        let (t, g) = sqrt2();
        let e = t.add(&g, &r(1));
        // (x - 1)^2 - 2 = x^2 - 2x - 1
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(t.minimal_polynomial(&e), vec![q(-1), q(-2), q(1)]);
    }
}
