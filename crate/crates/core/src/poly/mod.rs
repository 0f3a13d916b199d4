//! Sparse multivariate polynomials over a tower.

mod gcd;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{join_terms, ArithError, Elem, Tower};

pub use gcd::bivariate_gcd;

/// Ordered variable names. The order fixes both the exponent layout and the
/// printing order (lex, first variable highest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new(names: &[&str]) -> Self {
        Vars(names.iter().map(|s| s.to_string()).collect())
    }

    /// The planar coordinates `x, y`.
    pub fn xy() -> Self {
        Self::new(&["x", "y"])
    }

    /// Homogeneous coordinates `X0, X1, Y0, Y1` of a Hirzebruch surface.
    pub fn hirzebruch() -> Self {
        Self::new(&["X0", "X1", "Y0", "Y1"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

/// Bidegree `(d1, d2)` of a bihomogeneous polynomial in `X0, X1, Y0, Y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Bidegree {
    pub d1: i64,
    pub d2: i64,
}

pub type Exps = Vec<u32>;

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vars,
    tower: Tower,
    terms: BTreeMap<Exps, Elem>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: &Vars, tower: &Tower) -> Self {
        MultiPoly { vars: vars.clone(), tower: tower.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, tower: &Tower, c: Elem) -> Self {
        Self::monomial(vars, tower, vec![0; vars.len()], c)
    }

    pub fn from_int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, &Tower::rationals(), Elem::from_int(n))
    }

    pub fn monomial(vars: &Vars, tower: &Tower, exps: Exps, c: Elem) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars, tower);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(vars: &Vars, tower: &Tower, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, tower, e, Elem::one())
    }

    pub fn from_terms(
        vars: &Vars,
        tower: &Tower,
        terms: impl IntoIterator<Item = (Exps, Elem)>,
    ) -> Self {
        let mut p = Self::zero(vars, tower);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Exps, c: &Elem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.tower.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Same polynomial read in a tower that refines or extends this one.
    /// Coefficients are re-reduced, so terms may vanish after a split.
    pub fn lift(&self, tower: &Tower) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), tower.specialize(c)));
        Self::from_terms(&self.vars, tower, terms)
    }

    /// Reinterprets the exponent slots under different names.
    pub fn with_vars(&self, vars: &Vars) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MultiPoly { vars: vars.clone(), ..self.clone() }
    }

    /// Terms in canonical (descending lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &Elem)> + '_ {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Elem {
        self.terms.get(e).cloned().unwrap_or_else(Elem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Leading term in canonical order.
    pub fn leading(&self) -> Option<(&Exps, &Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Least total degree of a term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Largest `k` with `v_i^k` dividing the polynomial (0 for zero).
    pub fn valuation_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    fn same_ring(&self, o: &MultiPoly) -> Tower {
        assert_eq!(self.vars, o.vars, "polynomials over different variables");
        self.tower.join(&o.tower).expect("polynomials over incompatible towers")
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let tower = self.same_ring(o);
        let mut p = MultiPoly { vars: self.vars.clone(), tower, terms: self.terms.clone() };
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c);
        }
        p
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        MultiPoly { terms, ..self.clone() }
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let tower = self.same_ring(o);
        let mut p = Self::zero(&self.vars, &tower);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = tower.mul(c1, c2);
                p.add_term(e, &c);
            }
        }
        p
    }

    pub fn scale(&self, c: &Elem) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), self.tower.mul(x, c)));
        Self::from_terms(&self.vars, &self.tower, terms)
    }

    pub fn scale_int(&self, n: i64) -> MultiPoly {
        self.scale(&Elem::from_int(n))
    }

    pub fn pow(&self, mut k: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.vars, &self.tower, Elem::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn mul_monomial(&self, m: &[u32]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        MultiPoly { terms, ..self.clone() }
    }

    /// Multiplies by `v_i^k`.
    pub fn mul_var_pow(&self, i: usize, k: u32) -> MultiPoly {
        let mut m = vec![0; self.vars.len()];
        m[i] = k;
        self.mul_monomial(&m)
    }

    pub fn div_monomial(&self, m: &[u32]) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let q: Option<Exps> = e.iter().zip(m).map(|(a, b)| a.checked_sub(*b)).collect();
            terms.insert(q?, c.clone());
        }
        Some(MultiPoly { terms, ..self.clone() })
    }

    /// Divides by `v_i^k` if it divides.
    pub fn div_var_pow(&self, i: usize, k: u32) -> Option<MultiPoly> {
        let mut m = vec![0; self.vars.len()];
        m[i] = k;
        self.div_monomial(&m)
    }

    /// `q` with `v_i * q == self`, if the variable divides.
    pub fn var_divide(&self, i: usize) -> Option<MultiPoly> {
        self.div_var_pow(i, 1)
    }

    pub fn partial(&self, i: usize) -> MultiPoly {
        let terms = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e = e.clone();
            let k = e[i];
            e[i] -= 1;
            (e, self.tower.mul(c, &Elem::from_int(k as i64)))
        });
        Self::from_terms(&self.vars, &self.tower, terms)
    }

    /// Substitutes polynomials for every variable. `images[i]` replaces
    /// variable `i`; all images share variables and a compatible tower.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len());
        let target = images[0].vars.clone();
        let tower = images.iter().fold(self.tower.clone(), |t, p| {
            t.join(&p.tower).expect("incompatible towers")
        });
        // cache powers of each image
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant(&target, &tower, Elem::one()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target, &tower);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, &tower, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Replaces variable `i` by the constant `c`, keeping the variable slot.
    pub fn eval_var(&self, i: usize, c: &Elem) -> MultiPoly {
        let mut out = Self::zero(&self.vars, &self.tower);
        for (e, x) in &self.terms {
            let mut e = e.clone();
            let k = std::mem::take(&mut e[i]);
            out.add_term(e, &self.tower.mul(x, &self.tower.pow(c, k)));
        }
        out
    }

    /// Substitutes `v_i -> v_i + c`.
    pub fn shift(&self, i: usize, c: &Elem) -> MultiPoly {
        if c.is_zero() {
            return self.clone();
        }
        let images: Vec<MultiPoly> = (0..self.vars.len())
            .map(|j| {
                let v = MultiPoly::var(&self.vars, &self.tower, j);
                if j == i {
                    v.add(&MultiPoly::constant(&self.vars, &self.tower, c.clone()))
                } else {
                    v
                }
            })
            .collect();
        self.compose(&images)
    }

    /// Sum of the terms of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == k)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        MultiPoly { terms, ..self.clone() }
    }

    /// Coefficients as a dense univariate polynomial in variable `i`, for a
    /// polynomial that involves no other variable.
    pub fn to_dense(&self, i: usize) -> Vec<Elem> {
        let mut out = vec![Elem::zero(); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            assert!(
                e.iter().enumerate().all(|(j, &k)| j == i || k == 0),
                "polynomial is not univariate"
            );
            out[e[i] as usize] = c.clone();
        }
        while out.last().is_some_and(Elem::is_zero) {
            out.pop();
        }
        out
    }

    /// Bidegree with respect to `deg X0 = deg X1 = (1, 0)`, `deg Y0 = (0, 1)`
    /// and `deg Y1 = (-delta, 1)`; `None` unless bihomogeneous. The zero
    /// polynomial has no bidegree.
    pub fn bidegree(&self, delta: u32) -> Option<Bidegree> {
        assert_eq!(self.vars.len(), 4, "bidegree needs X0, X1, Y0, Y1");
        let mut degs = self.terms.keys().map(|e| Bidegree {
            d1: e[0] as i64 + e[1] as i64 - delta as i64 * e[3] as i64,
            d2: e[2] as i64 + e[3] as i64,
        });
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Exponent pairs of a bivariate polynomial.
    pub fn support(&self) -> BTreeSet<(u32, u32)> {
        assert_eq!(self.vars.len(), 2);
        self.terms.keys().map(|e| (e[0], e[1])).collect()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide. Uses
    /// division by leading terms; inverting the divisor's leading coefficient
    /// may split the tower.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<Option<MultiPoly>, ArithError> {
        let tower = self.same_ring(d);
        let (dl, dc) = d.leading().ok_or(ArithError::DivisionByZero)?;
        let inv = tower.inv(dc)?;
        let mut r = self.clone();
        r.tower = tower.clone();
        let mut q = MultiPoly::zero(&self.vars, &tower);
        while let Some((rl, rc)) = r.leading() {
            let Some(m) = rl.iter().zip(dl).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Exps>>()
            else {
                return Ok(None);
            };
            let c = tower.mul(rc, &inv);
            let t = MultiPoly::monomial(&self.vars, &tower, m, c);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Ok(Some(q))
    }

    /// Zero-tests every coefficient so that on the resulting branch each
    /// stored coefficient is a unit. Fails with the first split found.
    pub fn check_units(&self) -> Result<(), ArithError> {
        for c in self.terms.values() {
            self.tower.is_zero(c)?;
        }
        Ok(())
    }

    /// Whether every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    /// Rational coefficients scaled to coprime integers with a positive
    /// leading coefficient. Panics on non-rational coefficients.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let rats: Vec<&BigRational> = self
            .terms
            .values()
            .map(|c| c.as_rational().expect("primitive part needs rational coefficients"))
            .collect();
        let den = rats.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let num = rats
            .iter()
            .fold(BigInt::zero(), |g, q| g.gcd(&(q.numer() * (&den / q.denom()))));
        let mut factor = BigRational::new(den, num);
        if self.leading().unwrap().1.as_rational().unwrap().is_negative() {
            factor = -factor;
        }
        self.scale(&Elem::Rat(factor))
    }

    /// Monomial string such as `X0^3*X1*Y1`; empty for the unit monomial.
    pub(crate) fn monomial_string(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let v = &self.vars.names()[i];
                if k == 1 {
                    v.clone()
                } else {
                    format!("{v}^{k}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().map(|(e, c)| c.to_term(&self.monomial_string(e)));
        f.write_str(&join_terms(terms))
    }
}

/// Substitutes rational functions with monomial denominators into `p`.
/// `bindings[i] = (num, den)` replaces variable `i` of `p` by `num / den`,
/// where `den` is an exponent vector over the target variables. Returns the
/// reduced fraction: the denominator is a monomial and the numerator is not
/// divisible by any variable occurring in it.
pub fn subst_fraction(p: &MultiPoly, bindings: &[(MultiPoly, Exps)]) -> (MultiPoly, Exps) {
    assert_eq!(bindings.len(), p.vars.len());
    let target = bindings[0].0.vars.clone();
    let n = target.len();
    let term_den = |e: &Exps| -> Exps {
        let mut d = vec![0; n];
        for (i, &k) in e.iter().enumerate() {
            for (dj, bj) in d.iter_mut().zip(&bindings[i].1) {
                *dj += k * bj;
            }
        }
        d
    };
    let mut den = vec![0u32; n];
    for e in p.terms.keys() {
        for (a, b) in den.iter_mut().zip(term_den(e)) {
            *a = (*a).max(b);
        }
    }
    let mut num = MultiPoly::zero(&target, &p.tower);
    for (e, c) in &p.terms {
        let single = MultiPoly::monomial(&p.vars, &p.tower, e.clone(), c.clone());
        let images: Vec<MultiPoly> = bindings.iter().map(|(b, _)| b.clone()).collect();
        let td = term_den(e);
        let fill: Exps = den.iter().zip(&td).map(|(a, b)| a - b).collect();
        num = num.add(&single.compose(&images).mul_monomial(&fill));
    }
    if num.is_zero() {
        return (num, vec![0; n]);
    }
    let common: Exps = (0..n).map(|i| den[i].min(num.valuation_in(i))).collect();
    let num = num.div_monomial(&common).unwrap();
    let den = den.iter().zip(&common).map(|(a, b)| a - b).collect();
    (num, den)
}
