//! Exponent supports of generic invariant curves and the regions that
//! must contain them.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{delta1, guard, swap_form, AnalysisError, Bounds};
use crate::form::{FormError, PlanarOneForm};
use crate::poly::{bivariate_gcd, MultiPoly};

/// Support and extreme degrees of `alpha*f1 + beta*f2` for generic
/// `alpha, beta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericCurve {
    pub support: BTreeSet<(u32, u32)>,
    pub d_x0: u32,
    pub d_y0: u32,
    pub d_x: u32,
    pub d_y: u32,
}

impl GenericCurve {
    pub fn from_support(support: BTreeSet<(u32, u32)>) -> Self {
        let axis = |pick: fn(&(u32, u32)) -> Option<u32>| support.iter().filter_map(pick).max().unwrap_or(0);
        GenericCurve {
            d_x0: axis(|&(i, j)| (j == 0).then_some(i)),
            d_y0: axis(|&(i, j)| (i == 0).then_some(j)),
            d_x: axis(|&(i, _)| Some(i)),
            d_y: axis(|&(_, j)| Some(j)),
            support,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.support.iter().map(|&(i, j)| i + j).max().unwrap_or(0)
    }
}

/// The generic member of the pencil spanned by `f1` and `f2`. A coefficient
/// of `alpha*f1 + beta*f2` vanishes for generic `alpha, beta` only if it
/// vanishes in both, so the support is the union of the two supports.
pub fn generic_curve(f1: &MultiPoly, f2: &MultiPoly) -> Result<GenericCurve, AnalysisError> {
    if f1.is_constant() && f2.is_constant() {
        return Err(AnalysisError::DegenerateField("the integral is constant".into()));
    }
    let g = bivariate_gcd(f1, f2);
    if !g.is_constant() {
        return Err(FormError::CoprimalityViolation(g).into());
    }
    let support = f1
        .support()
        .into_iter()
        .chain(f2.support())
        .collect();
    Ok(GenericCurve::from_support(support))
}

/// Ceiling of the largest nonnegative slope `(i - d_x0)/j` over the support
/// points with `j > 0`; zero when there is none.
pub fn delta1_from_support(g: &GenericCurve) -> Result<u32, AnalysisError> {
    if g.d_y == 0 {
        return Err(AnalysisError::DegenerateField("the generic curve does not involve y".into()));
    }
    Ok(g.support
        .iter()
        .filter(|&&(i, j)| j > 0 && i >= g.d_x0)
        .map(|&(i, j)| (i - g.d_x0).div_ceil(j))
        .max()
        .unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionSpec {
    pub delta1: u32,
    pub delta1_prime: u32,
    pub d_x0: u32,
    pub d_y0: u32,
}

impl RegionSpec {
    pub fn contains(&self, (u, v): (u32, u32)) -> bool {
        u64::from(u) <= u64::from(self.d_x0) + u64::from(self.delta1) * u64::from(v)
            && u64::from(v) <= u64::from(self.d_y0) + u64::from(self.delta1_prime) * u64::from(u)
    }

    /// Textual form of the region.
    pub fn describe(&self) -> String {
        let side = |d: u32, k: u32, var: &str| match (d, k) {
            (0, 0) => "0".to_string(),
            (0, 1) => var.to_string(),
            (0, k) => format!("{k}*{var}"),
            (d, 0) => d.to_string(),
            (d, 1) => format!("{d} + {var}"),
            (d, k) => format!("{d} + {k}*{var}"),
        };
        format!(
            "{{u <= {}, v <= {}}}",
            side(self.d_x0, self.delta1, "v"),
            side(self.d_y0, self.delta1_prime, "u")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub contains: bool,
    pub violations: Vec<(u32, u32)>,
}

pub fn region_contains(spec: &RegionSpec, g: &GenericCurve) -> RegionReport {
    let violations: Vec<_> = g.support.iter().copied().filter(|&p| !spec.contains(p)).collect();
    RegionReport { contains: violations.is_empty(), violations }
}

/// Upper bound for the degree of a primitive rational first integral,
/// available when one of the two `delta1` values vanishes.
pub fn degree_bound(spec: &RegionSpec) -> Option<u32> {
    if spec.delta1 == 0 {
        Some((1 + spec.delta1_prime) * spec.d_x0 + spec.d_y0)
    } else if spec.delta1_prime == 0 {
        Some((1 + spec.delta1) * spec.d_y0 + spec.d_x0)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub delta1: Option<u32>,
    pub delta1_prime: Option<u32>,
    /// The cone `{u <= delta1*v, v <= delta1'*u}` when both values were found.
    pub cone: Option<String>,
    /// Integrals `(a + x*y*H1)/(b + x*y*H2)` are impossible.
    pub xy_type_excluded: bool,
}

/// Computes `delta1` for the field and for its variable swap, and the cone
/// that contains the Newton polygon of integrals with generic curve through
/// the origin.
pub fn cone_test(form: &PlanarOneForm, bounds: Bounds) -> Result<ConeReport, AnalysisError> {
    if form.a.is_zero() {
        return Err(AnalysisError::DegenerateField(
            "the form is proportional to dy (swapped field parallel to d/dy)".into(),
        ));
    }
    guard(form)?;
    let d1 = delta1(form, bounds)?;
    let d1p = delta1(&swap_form(form), bounds)?;
    let cone = match (d1, d1p) {
        (Some(a), Some(b)) => Some(RegionSpec { delta1: a, delta1_prime: b, d_x0: 0, d_y0: 0 }.describe()),
        _ => None,
    };
    Ok(ConeReport {
        delta1: d1,
        delta1_prime: d1p,
        cone,
        xy_type_excluded: d1 == Some(0) || d1p == Some(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::parse_poly;
    use crate::poly::Vars;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &Vars::xy()).unwrap()
    }

    fn support(pts: &[(u32, u32)]) -> GenericCurve {
        GenericCurve::from_support(pts.iter().copied().collect())
    }

    #[test]
    fn generic_curves() {
        let g = generic_curve(&p("y"), &p("x")).unwrap();
        assert_eq!(g.support, [(0, 1), (1, 0)].into_iter().collect());
        assert_eq!((g.d_x0, g.d_y0), (1, 1));
        let g = generic_curve(&p("x^2+y"), &p("1")).unwrap();
        assert_eq!(g.support, [(2, 0), (0, 1), (0, 0)].into_iter().collect());
        assert_eq!((g.d_x0, g.d_y0, g.d_x, g.d_y), (2, 1, 2, 1));
        let g = generic_curve(&p("x*y+1"), &p("x+y")).unwrap();
        assert_eq!(g.support.len(), 4);
        assert!(generic_curve(&p("x*y"), &p("x^2")).is_err());
        assert!(generic_curve(&p("2"), &p("3")).is_err());
    }

    #[test]
    fn delta1_from_slopes() {
        assert_eq!(delta1_from_support(&support(&[(0, 1), (1, 0)])).unwrap(), 0);
        assert_eq!(delta1_from_support(&support(&[(3, 1), (1, 0)])).unwrap(), 2);
        assert_eq!(delta1_from_support(&support(&[(4, 3), (1, 0)])).unwrap(), 1);
        assert_eq!(delta1_from_support(&support(&[(3, 2), (0, 1)])).unwrap(), 2);
        assert!(delta1_from_support(&support(&[(3, 0)])).is_err());
    }

    #[test]
    fn regions() {
        let spec = |a, b, c, d| RegionSpec { delta1: a, delta1_prime: b, d_x0: c, d_y0: d };
        assert!(region_contains(&spec(0, 0, 1, 1), &support(&[(1, 0), (0, 1)])).contains);
        let r = region_contains(&spec(0, 0, 0, 0), &support(&[(1, 1)]));
        assert_eq!(r, RegionReport { contains: false, violations: vec![(1, 1)] });
        assert!(region_contains(&spec(1, 1, 0, 0), &support(&[(1, 1), (2, 2)])).contains);
        assert_eq!(degree_bound(&spec(0, 0, 1, 1)), Some(2));
        assert_eq!(degree_bound(&spec(1, 0, 2, 3)), Some(8));
        assert_eq!(degree_bound(&spec(2, 3, 1, 1)), None);
        assert_eq!(spec(0, 0, 0, 0).describe(), "{u <= 0, v <= 0}");
        assert_eq!(spec(2, 1, 0, 0).describe(), "{u <= 2*v, v <= u}");
    }
}
