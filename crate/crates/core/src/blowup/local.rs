use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{rat_sqrt_exact, rational_roots, ArithError, Elem, Tower, UniPoly};
use crate::poly::MultiPoly;

use super::{BlowupError, LocalForm, PointClass};

/// First nonvanishing jet `a_m dx + b_m dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    pub m: u32,
    pub a: MultiPoly,
    pub b: MultiPoly,
}

/// Whether some coefficient is a unit. `Ok(false)` only when there are no
/// coefficients at all; if every one of them is a zero divisor the first
/// split is returned.
pub(crate) fn any_unit<'a>(t: &Tower, cs: impl IntoIterator<Item = &'a Elem>) -> Result<bool, ArithError> {
    let mut split = None;
    for c in cs {
        match t.is_zero(c) {
            Ok(false) => return Ok(true),
            Ok(true) => {}
            Err(e) => {
                split.get_or_insert(e);
            }
        }
    }
    match split {
        Some(e) => Err(e),
        None => Ok(false),
    }
}

fn coeffs(p: &MultiPoly) -> impl Iterator<Item = &Elem> {
    p.terms().map(|(_, c)| c)
}

pub fn jet_multiplicity(form: &LocalForm) -> Result<Jet, BlowupError> {
    let t = form.tower();
    let degrees: BTreeSet<u32> = form
        .a
        .terms()
        .chain(form.b.terms())
        .map(|(e, _)| e.iter().sum())
        .collect();
    for k in degrees {
        let (a, b) = (form.a.homogeneous_part(k), form.b.homogeneous_part(k));
        if any_unit(t, coeffs(&a).chain(coeffs(&b)))? {
            return Ok(Jet { m: k, a, b });
        }
    }
    panic!("jet of the zero form")
}

fn singular_jet(form: &LocalForm) -> Result<Jet, BlowupError> {
    let jet = jet_multiplicity(form)?;
    if jet.m == 0 {
        return Err(BlowupError::NotSingular);
    }
    Ok(jet)
}

fn var(p: &MultiPoly, i: usize) -> MultiPoly {
    MultiPoly::var(p.vars(), p.tower(), i)
}

pub(crate) fn jet_is_radial(t: &Tower, jet: &Jet) -> Result<bool, BlowupError> {
    let d = var(&jet.a, 0).mul(&jet.a).add(&var(&jet.b, 1).mul(&jet.b));
    Ok(!any_unit(t, coeffs(&d))?)
}

/// Whether `x a_m + y b_m` vanishes identically.
pub fn is_terminal_dicritical(form: &LocalForm) -> Result<bool, BlowupError> {
    let jet = singular_jet(form)?;
    jet_is_radial(form.tower(), &jet)
}

/// Whether the roots of `l^2 - trace l + det` have a positive rational
/// quotient. With `s = trace^2 / det` the quotient `r` satisfies
/// `s = r + 2 + 1/r`, so `r` is a positive rational exactly when `s` is a
/// rational number with `s >= 4` and `s (s - 4)` a rational square.
pub fn ratio_is_positive_rational(
    tower: &Tower,
    trace: &Elem,
    det: &Elem,
) -> Result<bool, BlowupError> {
    if tower.is_zero(det)? {
        return Err(BlowupError::ZeroDeterminant);
    }
    let s = tower.div(&tower.mul(trace, trace), det)?;
    let Some(s) = tower.rational_value(&s)? else {
        return Ok(false);
    };
    let four = BigRational::from_integer(4.into());
    Ok(s >= four && rat_sqrt_exact(&(&s * (&s - &four))).is_some())
}

/// Linear coefficient of `x` or `y` in a homogeneous linear polynomial.
fn lin(p: &MultiPoly, i: usize) -> Elem {
    let mut e = vec![0, 0];
    e[i] = 1;
    p.coeff(&e)
}

/// Whether the origin is a simple singularity: multiplicity one and a linear
/// part whose eigenvalues are not in positive rational ratio (or a
/// saddle-node with exactly one zero eigenvalue).
pub fn is_simple(form: &LocalForm) -> Result<bool, BlowupError> {
    let jet = singular_jet(form)?;
    if jet.m != 1 {
        return Ok(false);
    }
    simple_linear_part(form.tower(), &jet)
}

pub(crate) fn simple_linear_part(t: &Tower, jet: &Jet) -> Result<bool, BlowupError> {
    let (ax, ay) = (lin(&jet.a, 0), lin(&jet.a, 1));
    let (bx, by) = (lin(&jet.b, 0), lin(&jet.b, 1));
    // matrix [[bx, by], [-ax, -ay]]
    let trace = t.sub(&bx, &ay);
    let det = t.sub(&t.mul(&by, &ax), &t.mul(&bx, &ay));
    if t.is_zero(&det)? {
        return Ok(!t.is_zero(&trace)?);
    }
    Ok(!ratio_is_positive_rational(t, &trace, &det)?)
}

/// Local results at a singular point: multiplicity, flags and the two
/// charts of the blowup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupCharts {
    pub multiplicity: u32,
    pub dicritical: bool,
    /// `x = x, y = x y`; the exceptional divisor is `x = 0`.
    pub chart1: LocalForm,
    /// `x = x y, y = y`; the exceptional divisor is `y = 0`.
    pub chart2: LocalForm,
}

/// Strict transforms in the two standard charts, divided by `x^e` (resp.
/// `y^e`) with `e = m + 1` at a terminal dicritical point and `e = m`
/// otherwise.
pub fn blowup_charts(form: &LocalForm) -> Result<BlowupCharts, BlowupError> {
    let jet = singular_jet(form)?;
    let dicritical = jet_is_radial(form.tower(), &jet)?;
    Ok(charts_for(form, jet.m, dicritical))
}

pub(crate) fn charts_for(form: &LocalForm, m: u32, dicritical: bool) -> BlowupCharts {
    let e = if dicritical { m + 1 } else { m };
    let (x, y) = (var(&form.a, 0), var(&form.a, 1));
    let xy = x.mul(&y);

    let a1 = form.a.compose(&[x.clone(), xy.clone()]);
    let b1 = form.b.compose(&[x.clone(), xy.clone()]);
    let c1a = a1.add(&y.mul(&b1)).div_var_pow(0, e).expect("x^e divides the chart-1 dx part");
    let c1b = x.mul(&b1).div_var_pow(0, e).expect("x^e divides the chart-1 dy part");

    let a2 = form.a.compose(&[xy.clone(), y.clone()]);
    let b2 = form.b.compose(&[xy, y.clone()]);
    let c2a = y.mul(&a2).div_var_pow(1, e).expect("y^e divides the chart-2 dx part");
    let c2b = x.mul(&a2).add(&b2).div_var_pow(1, e).expect("y^e divides the chart-2 dy part");

    assert!(
        c1a.var_divide(0).is_none() || c1b.var_divide(0).is_none(),
        "strict transform still divisible by the exceptional coordinate"
    );
    BlowupCharts {
        multiplicity: m,
        dicritical,
        chart1: LocalForm { a: c1a, b: c1b },
        chart2: LocalForm { a: c2a, b: c2b },
    }
}

/// A coordinate axis through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    /// The line `x = 0`, parametrized by `y`.
    X,
    /// The line `y = 0`, parametrized by `x`.
    Y,
}

/// A root of a squarefree polynomial: either an element of the current
/// tower or a root of a monic factor that has to be adjoined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RootSpec {
    Known(Elem),
    Algebraic(Vec<Elem>),
}

impl RootSpec {
    pub(crate) fn from_factor(t: &Tower, f: Vec<Elem>) -> RootSpec {
        if f.len() == 2 {
            // monic linear factor y + c
            RootSpec::Known(t.specialize(&f[0]).neg())
        } else {
            RootSpec::Algebraic(f)
        }
    }
}

/// Restriction of `p` to the axis as a dense polynomial in the parameter.
fn on_axis(p: &MultiPoly, axis: Axis) -> Vec<Elem> {
    let (zero_var, param) = match axis {
        Axis::X => (0, 1),
        Axis::Y => (1, 0),
    };
    p.eval_var(zero_var, &Elem::zero()).to_dense(param)
}

/// Roots on the axis, zero first, then rational roots in increasing order,
/// then one algebraic class for what is left.
pub(crate) fn axis_roots(form: &LocalForm, axis: Axis) -> Result<Vec<RootSpec>, BlowupError> {
    let t = form.tower().clone();
    let pa = UniPoly::new(t.clone(), on_axis(&form.a, axis));
    let pb = UniPoly::new(t.clone(), on_axis(&form.b, axis));
    if pa.is_zero() && pb.is_zero() {
        return Err(BlowupError::InfiniteSingularLocus);
    }
    let g = pa.gcd(&pb)?;
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut g = g.squarefree_part()?.into_coeffs();
    let mut roots = Vec::new();
    if t.is_zero(&g[0])? {
        roots.push(RootSpec::Known(Elem::zero()));
        g.remove(0);
    }
    if g.len() >= 2 && g.iter().all(|c| c.as_rational().is_some()) {
        let q: Vec<BigRational> = g.iter().map(|c| c.as_rational().unwrap().clone()).collect();
        for r in rational_roots(&q) {
            let lin = UniPoly::new(t.clone(), vec![Elem::Rat(-&r), Elem::one()]);
            let (quo, _) = UniPoly::new(t.clone(), g).divrem(&lin)?;
            g = quo.into_coeffs();
            roots.push(RootSpec::Known(Elem::Rat(r)));
        }
    }
    if g.len() >= 2 {
        roots.push(RootSpec::from_factor(&t, g));
    }
    Ok(roots)
}

/// Common zeros of the two coefficients on an axis, one class per root of
/// the squarefree gcd (irrational roots share one class over an extended
/// tower).
pub fn singular_points_on_axis(form: &LocalForm, axis: Axis) -> Result<Vec<PointClass>, BlowupError> {
    let t = form.tower();
    let place = |c: Elem| match axis {
        Axis::X => (Elem::zero(), c),
        Axis::Y => (c, Elem::zero()),
    };
    Ok(axis_roots(form, axis)?
        .into_iter()
        .map(|r| match r {
            RootSpec::Known(c) => {
                let (x, y) = place(c);
                PointClass { tower: t.clone(), x, y }
            }
            RootSpec::Algebraic(m) => {
                let ext = t.extend(m);
                let (x, y) = place(ext.generator(ext.depth()));
                PointClass { tower: ext, x, y }
            }
        })
        .collect())
}
