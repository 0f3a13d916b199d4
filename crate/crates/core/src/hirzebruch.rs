//! Extension of planar 1-forms to foliations on Hirzebruch surfaces.
//!
//! Coordinates are `X0, X1, Y0, Y1` with `deg X0 = deg X1 = (1, 0)`,
//! `deg Y0 = (0, 1)` and `deg Y1 = (-delta, 1)`. The affine plane is the chart
//! `U00` with `x = X1/X0` and `y = X0^delta Y1/Y0`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{Elem, Tower};
use crate::form::{FormError, PlanarOneForm};
use crate::poly::{subst_fraction, Bidegree, MultiPoly, Vars};

const X0: usize = 0;
const X1: usize = 1;
const Y0: usize = 2;
const Y1: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("internal consistency check failed: {0}")]
    InvariantViolation(String),
}

/// `A0 dX0 + A1 dX1 + B0 dY0 + B1 dY1` on the Hirzebruch surface of index
/// `delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedOneForm {
    pub delta: u32,
    pub a0: MultiPoly,
    pub a1: MultiPoly,
    pub b0: MultiPoly,
    pub b1: MultiPoly,
    pub d1: i64,
    pub d2: i64,
}

/// One of the four affine charts `U_ij`: `i = 0` means `X0 != 0` and `i = 1`
/// means `X1 != 0`; `j` plays the same role for `Y0, Y1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChartId {
    U00,
    U01,
    U10,
    U11,
}

impl ChartId {
    pub const ALL: [ChartId; 4] = [ChartId::U00, ChartId::U01, ChartId::U10, ChartId::U11];

    pub fn indices(self) -> (u8, u8) {
        match self {
            ChartId::U00 => (0, 0),
            ChartId::U01 => (0, 1),
            ChartId::U10 => (1, 0),
            ChartId::U11 => (1, 1),
        }
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.indices();
        write!(f, "U{i}{j}")
    }
}

impl FromStr for ChartId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim_start_matches(['U', 'u']) {
            "00" => Ok(ChartId::U00),
            "01" => Ok(ChartId::U01),
            "10" => Ok(ChartId::U10),
            "11" => Ok(ChartId::U11),
            _ => Err(format!("unknown chart '{s}', expected one of 00, 01, 10, 11")),
        }
    }
}

/// Runs the extension algorithm for a coprime nonzero planar form.
pub fn extend(delta: u32, form: &PlanarOneForm) -> Result<BigradedOneForm, ExtendError> {
    if form.is_zero() {
        return Err(FormError::ZeroForm.into());
    }
    let g = form.common_factor();
    if !g.is_constant() {
        return Err(FormError::CoprimalityViolation(g).into());
    }
    let v = Vars::hirzebruch();
    let q = Tower::rationals();
    let var = |i| MultiPoly::var(&v, &q, i);

    // (1) x = X1/X0, y = X0^delta Y1/Y0 as reduced fractions
    let bindings = vec![
        (var(X1), vec![1, 0, 0, 0]),
        (var(Y1).mul_var_pow(X0, delta), vec![0, 0, 1, 0]),
    ];
    let (mut a1, da) = subst_fraction(&form.a, &bindings);
    let (mut b1, db) = subst_fraction(&form.b, &bindings);
    let (alpha1, alpha2) = (da[X0] as i64, da[Y0] as i64);
    let (beta1, beta2) = (db[X0] as i64, db[Y0] as i64);

    // (2), (3) balance the denominators
    let m1 = alpha1 - beta1 + 1 + delta as i64;
    if m1 > 0 {
        b1 = b1.mul_var_pow(X0, m1 as u32);
    } else {
        a1 = a1.mul_var_pow(X0, (-m1) as u32);
    }
    let m2 = alpha2 - beta2 - 1;
    if m2 > 0 {
        b1 = b1.mul_var_pow(Y0, m2 as u32);
    } else {
        a1 = a1.mul_var_pow(Y0, (-m2) as u32);
    }

    // (4) make Y0 divide B1
    if b1.var_divide(Y0).is_none() {
        a1 = a1.mul_var_pow(Y0, 1);
        b1 = b1.mul_var_pow(Y0, 1);
    }

    // (5) make X0 divide delta Y1 B1 - X1 A1
    let dy1 = var(Y1).scale_int(delta as i64);
    let euler = |a1: &MultiPoly, b1: &MultiPoly| dy1.mul(b1).sub(&var(X1).mul(a1));
    if euler(&a1, &b1).var_divide(X0).is_none() {
        a1 = a1.mul_var_pow(X0, 1);
        b1 = b1.mul_var_pow(X0, 1);
    }

    // (6)
    let mut a0 = euler(&a1, &b1).var_divide(X0).expect("X0 divides after step 5");
    let mut b0 = var(Y1).mul(&b1).var_divide(Y0).expect("Y0 divides B1").neg();

    // When A or B vanishes the four outputs can still share X0 or Y0.
    for i in [X0, Y0] {
        let k = [&a0, &a1, &b0, &b1]
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.valuation_in(i))
            .min()
            .unwrap_or(0);
        if k > 0 {
            log::debug!("removing common factor {}^{k}", v.names()[i]);
            for p in [&mut a0, &mut a1, &mut b0, &mut b1] {
                *p = p.div_var_pow(i, k).unwrap();
            }
        }
    }

    let (d1, d2) = if let Some(bd) = b1.bidegree(delta) {
        (bd.d1 - 2, bd.d2 - 1)
    } else if let Some(bd) = a1.bidegree(delta) {
        (bd.d1 + delta as i64 - 1, bd.d2 - 2)
    } else {
        return Err(ExtendError::InvariantViolation("A1 and B1 are not bihomogeneous".into()));
    };
    let out = BigradedOneForm { delta, a0, a1, b0, b1, d1, d2 };
    let report = verify_invariants(&out);
    if !(report.bidegrees && report.euler) {
        return Err(ExtendError::InvariantViolation(format!("{report:?}")));
    }
    Ok(out)
}

/// Outcome of checking the three conditions a bigraded form must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub bidegrees: bool,
    pub euler: bool,
    pub no_common_factor: bool,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.bidegrees && self.euler && self.no_common_factor
    }
}

impl BigradedOneForm {
    /// Expected bidegrees of `A0, A1, B0, B1`.
    pub fn expected_bidegrees(&self) -> [Bidegree; 4] {
        let (d1, d2, dl) = (self.d1, self.d2, self.delta as i64);
        let a = Bidegree { d1: d1 - dl + 1, d2: d2 + 2 };
        [a, a, Bidegree { d1: d1 - dl + 2, d2: d2 + 1 }, Bidegree { d1: d1 + 2, d2: d2 + 1 }]
    }

    pub fn polys(&self) -> [&MultiPoly; 4] {
        [&self.a0, &self.a1, &self.b0, &self.b1]
    }

    /// `X0 A0 + X1 A1 - delta Y1 B1` and `Y0 B0 + Y1 B1`.
    pub fn euler_residues(&self) -> (MultiPoly, MultiPoly) {
        let v = Vars::hirzebruch();
        let t = self.a0.tower().clone();
        let var = |i| MultiPoly::var(&v, &t, i);
        let r1 = var(X0)
            .mul(&self.a0)
            .add(&var(X1).mul(&self.a1))
            .sub(&var(Y1).mul(&self.b1).scale_int(self.delta as i64));
        let r2 = var(Y0).mul(&self.b0).add(&var(Y1).mul(&self.b1));
        (r1, r2)
    }

    /// Restriction to a chart before removing common factors.
    pub fn chart_form_raw(&self, chart: ChartId) -> PlanarOneForm {
        let xy = Vars::xy();
        let t = self.a0.tower().clone();
        let x = MultiPoly::var(&xy, &t, 0);
        let y = MultiPoly::var(&xy, &t, 1);
        let one = MultiPoly::constant(&xy, &t, Elem::one());
        // images of X0, X1, Y0, Y1 and the coefficients paired with dx, dy
        let (images, a, b) = match chart {
            ChartId::U00 => ([one.clone(), x, one, y], &self.a1, &self.b1),
            ChartId::U01 => ([one.clone(), x, y, one], &self.a1, &self.b0),
            ChartId::U10 => ([x, one.clone(), one, y], &self.a0, &self.b1),
            ChartId::U11 => ([x, one.clone(), y, one], &self.a0, &self.b0),
        };
        PlanarOneForm::new_unchecked(a.compose(&images), b.compose(&images))
    }

    /// The planar form of the foliation on `chart` in its local coordinates,
    /// with any common factor of the coefficients removed.
    pub fn chart_restrict(&self, chart: ChartId) -> PlanarOneForm {
        let (f, g) = self.chart_form_raw(chart).reduced();
        if !g.is_constant() {
            log::debug!("chart {chart}: removed common factor {g}");
        }
        f
    }
}

/// Checks bidegrees, the two Euler identities and the absence of a common
/// factor (no shared `X0` or `Y0`, and coprime chart restrictions).
pub fn verify_invariants(form: &BigradedOneForm) -> InvariantReport {
    let bidegrees = form
        .polys()
        .iter()
        .zip(form.expected_bidegrees())
        .all(|(p, want)| p.is_zero() || p.bidegree(form.delta) == Some(want));
    let (r1, r2) = form.euler_residues();
    let euler = r1.is_zero() && r2.is_zero();
    let shares = |i: usize| form.polys().iter().all(|p| p.var_divide(i).is_some());
    let no_common_factor = !shares(X0)
        && !shares(Y0)
        && ChartId::ALL
            .iter()
            .all(|&c| form.chart_form_raw(c).common_factor().is_constant());
    InvariantReport { bidegrees, euler, no_common_factor }
}

/// Same as [`BigradedOneForm::chart_restrict`].
pub fn chart_restrict(form: &BigradedOneForm, chart: ChartId) -> PlanarOneForm {
    form.chart_restrict(chart)
}

impl fmt::Display for BigradedOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A0 = {}", self.a0)?;
        writeln!(f, "A1 = {}", self.a1)?;
        writeln!(f, "B0 = {}", self.b0)?;
        write!(f, "B1 = {}", self.b1)
    }
}
