//! Local analysis of singular points of planar foliations: jets, the
//! terminal-dicritical and simple tests, point blowups and full reduction
//! trees.
//!
//! Everything here works over a [`Tower`], and any zero test may split it.
//! Splits surface as [`BlowupError::Arith`] and are resolved by whoever
//! created the split level.

mod local;
mod tree;

use std::fmt;

use thiserror::Error;

use crate::arith::{ArithError, Elem, Split, Tower};
use crate::form::PlanarOneForm;
use crate::poly::{MultiPoly, Vars};

pub use local::{
    blowup_charts, is_simple, is_terminal_dicritical, jet_multiplicity, ratio_is_positive_rational,
    singular_points_on_axis, Axis, BlowupCharts, Jet,
};
pub use tree::{
    is_dicritical, is_dicritical_branches, reduce, BlowupNode, BlowupTree, ChartStep,
    DEFAULT_MAX_DEPTH,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("the point is not a singularity")]
    NotSingular,
    #[error("zero determinant")]
    ZeroDeterminant,
    #[error("both coefficients vanish along the axis")]
    InfiniteSingularLocus,
    #[error("reduction undecided: depth limit {max_depth} reached without a dicritical point")]
    Undecided { max_depth: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl BlowupError {
    pub(crate) fn split(&self) -> Option<&Split> {
        match self {
            BlowupError::Arith(e) => e.split(),
            _ => None,
        }
    }
}

/// `A dx + B dy` near the origin, with coefficients over a tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalForm {
    pub a: MultiPoly,
    pub b: MultiPoly,
}

impl LocalForm {
    pub fn new(a: MultiPoly, b: MultiPoly) -> Self {
        assert_eq!(a.vars(), &Vars::xy());
        assert_eq!(b.vars(), &Vars::xy());
        let t = a.tower().join(b.tower()).expect("coefficients over incompatible towers");
        LocalForm { a: a.lift(&t), b: b.lift(&t) }
    }

    pub fn tower(&self) -> &Tower {
        self.a.tower()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The same form read over a refined or extended tower.
    pub fn lift(&self, t: &Tower) -> Self {
        LocalForm { a: self.a.lift(t), b: self.b.lift(t) }
    }

    /// Translates the point `(x0, y0)` to the origin.
    pub fn translate(&self, x0: &Elem, y0: &Elem) -> Self {
        let s = |p: &MultiPoly| p.shift(0, x0).shift(1, y0);
        LocalForm { a: s(&self.a), b: s(&self.b) }
    }
}

impl From<&PlanarOneForm> for LocalForm {
    fn from(f: &PlanarOneForm) -> Self {
        LocalForm::new(f.a.clone(), f.b.clone())
    }
}

impl fmt::Display for LocalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy", self.a, self.b)
    }
}

/// A point of the plane, possibly with algebraic coordinates. When the tower
/// has reducible moduli the class stands for several conjugacy classes at
/// once; predicates are evaluated per branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointClass {
    pub tower: Tower,
    pub x: Elem,
    pub y: Elem,
}

impl PointClass {
    pub fn origin() -> Self {
        PointClass { tower: Tower::rationals(), x: Elem::zero(), y: Elem::zero() }
    }

    pub fn rational(x: Elem, y: Elem) -> Self {
        PointClass { tower: Tower::rationals(), x, y }
    }

    /// The same point read over a refined tower.
    pub fn lift(&self, t: &Tower) -> Self {
        PointClass { tower: t.clone(), x: t.specialize(&self.x), y: t.specialize(&self.y) }
    }

    pub fn coordinates(&self) -> (String, String) {
        (self.x.to_string(), self.y.to_string())
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)?;
        let moduli = self.tower.describe();
        if !moduli.is_empty() {
            write!(f, " where ")?;
            for (i, m) in moduli.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{m} = 0")?;
            }
        }
        Ok(())
    }
}

/// Runs `f` over `tower`, re-running it over both halves whenever it fails
/// with a split at a level above `owned` (levels this caller introduced).
/// Splits at lower levels are passed on.
pub(crate) fn on_branches<T>(
    tower: &Tower,
    owned: usize,
    f: &mut impl FnMut(&Tower) -> Result<T, BlowupError>,
) -> Result<Vec<(Tower, T)>, BlowupError> {
    let mut out = Vec::new();
    let mut work = vec![tower.clone()];
    while let Some(t) = work.pop() {
        match f(&t) {
            Ok(v) => out.push((t, v)),
            Err(e) => match e.split() {
                Some(s) if s.level > owned => {
                    let (l, r) = t.split(s);
                    work.push(r);
                    work.push(l);
                }
                _ => return Err(e),
            },
        }
    }
    Ok(out)
}
