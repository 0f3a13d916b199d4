//! Bivariate gcd over Q by primitive polynomial remainder sequences, with
//! `y` as the main variable and coefficients in `Q[x]`.

use crate::arith::{over_q, Elem, Tower, UniPoly};

use super::{MultiPoly, Vars};

/// A polynomial in `y` with coefficients in `Q[x]`, low degree first.
type Py = Vec<UniPoly>;

fn q() -> Tower {
    Tower::rationals()
}

fn to_py(p: &MultiPoly) -> Py {
    let mut out = vec![UniPoly::zero(q()); p.degree_in(1) as usize + 1];
    for (e, c) in p.terms() {
        let mut cs = out[e[1] as usize].coeffs().to_vec();
        if cs.len() <= e[0] as usize {
            cs.resize(e[0] as usize + 1, Elem::zero());
        }
        cs[e[0] as usize] = c.clone();
        out[e[1] as usize] = UniPoly::new(q(), cs);
    }
    trim(&mut out);
    out
}

fn from_py(p: &Py, vars: &Vars) -> MultiPoly {
    let terms = p.iter().enumerate().flat_map(|(j, c)| {
        c.coeffs()
            .iter()
            .enumerate()
            .map(move |(i, x)| (vec![i as u32, j as u32], x.clone()))
    });
    MultiPoly::from_terms(vars, &q(), terms)
}

fn trim(p: &mut Py) {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
}

fn content(p: &Py) -> UniPoly {
    p.iter()
        .fold(UniPoly::zero(q()), |g, c| over_q(g.gcd(c)))
}

fn div_by(p: &Py, c: &UniPoly) -> Py {
    p.iter()
        .map(|x| {
            let (quo, rem) = over_q(x.divrem(c));
            debug_assert!(rem.is_zero());
            quo
        })
        .collect()
}

fn primitive(p: &Py) -> Py {
    if p.is_empty() {
        return Vec::new();
    }
    div_by(p, &content(p))
}

/// Pseudo-remainder of `a` by `b` in `y`.
fn prem(a: &Py, b: &Py) -> Py {
    let lb = b.last().unwrap();
    let db = b.len() - 1;
    let mut r = a.clone();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        let mut next: Py = r.iter().map(|c| c.mul(lb)).collect();
        for (i, bi) in b.iter().enumerate() {
            next[k + i] = next[k + i].sub(&bi.mul(&lr));
        }
        trim(&mut next);
        r = next;
    }
    r
}

/// Whether the gcd `h` of `p` and `r` has degree zero in variable `i`.
/// If `c` keeps the leading coefficient of `p` in `v_i` nonzero, then `h`
/// at `v_o = c` keeps its degree in `v_i` and divides both specializations.
fn free_of(p: &MultiPoly, r: &MultiPoly, i: usize) -> bool {
    let o = 1 - i;
    let n = p.degree_in(i);
    if n == 0 || r.degree_in(i) == 0 {
        return true;
    }
    (0..6i64).map(Elem::from_int).any(|c| {
        let ps = p.eval_var(o, &c);
        if ps.degree_in(i) != n {
            return false;
        }
        let rs = r.eval_var(o, &c);
        let g = over_q(UniPoly::new(q(), ps.to_dense(i)).gcd(&UniPoly::new(q(), rs.to_dense(i))));
        g.degree() == Some(0)
    })
}

fn coprime_by_specialization(p: &MultiPoly, r: &MultiPoly) -> bool {
    free_of(p, r, 0) && free_of(p, r, 1)
}

/// Greatest common divisor of two rational bivariate polynomials, normalized
/// to coprime integer coefficients with a positive leading coefficient. The
/// gcd of two zero polynomials is zero.
pub fn bivariate_gcd(p: &MultiPoly, r: &MultiPoly) -> MultiPoly {
    assert_eq!(p.vars().len(), 2, "bivariate_gcd needs two variables");
    assert!(p.is_rational() && r.is_rational(), "bivariate_gcd works over Q");
    let vars = p.vars().clone();
    let (a, b) = (to_py(p), to_py(r));
    if a.is_empty() || b.is_empty() {
        return from_py(if a.is_empty() { &b } else { &a }, &vars).primitive();
    }
    if coprime_by_specialization(p, r) {
        return MultiPoly::from_int(&vars, 1);
    }
    prs_gcd(a, b, &vars)
}

fn prs_gcd(a: Py, b: Py, vars: &Vars) -> MultiPoly {
    let cont = over_q(content(&a).gcd(&content(&b)));
    let (mut a, mut b) = (primitive(&a), primitive(&b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = std::mem::replace(&mut b, primitive(&r));
    }
    let g: Py = if a.len() == 1 { vec![UniPoly::from_ints(q(), &[1])] } else { a };
    let g: Py = g.iter().map(|c| c.mul(&cont)).collect();
    from_py(&g, vars).primitive()
}
