//! Decision layer: the `delta1` sweep, the census of dicritical points on the
//! line `X0 = 0`, non-integrability verdicts, and the support-based tools
//! for fields with a known first integral.

mod integral;
mod newton;

use serde::Serialize;
use thiserror::Error;

use crate::blowup::{
    is_dicritical_branches, singular_points_on_axis, Axis, BlowupError, BlowupTree, LocalForm,
    PointClass, DEFAULT_MAX_DEPTH,
};
use crate::form::{FormError, PlanarOneForm};
use crate::hirzebruch::{extend, ChartId, ExtendError};

pub use integral::{invariant_curve_check, verify_first_integral};
pub use newton::{
    cone_test, degree_bound, delta1_from_support, generic_curve, region_contains, ConeReport,
    GenericCurve, RegionReport, RegionSpec,
};

pub const DEFAULT_MAX_DELTA: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("degenerate field: {0}")]
    DegenerateField(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("analysis undecided at delta = {delta} in chart {chart}: depth limit {max_depth} reached")]
    Undecided { delta: u32, chart: ChartId, max_depth: usize },
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
}

/// Search bounds shared by every analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_delta: u32,
    pub max_depth: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_delta: DEFAULT_MAX_DELTA, max_depth: DEFAULT_MAX_DEPTH }
    }
}

/// Rejects forms proportional to `dx`, whose vector field is a multiple of
/// `d/dy`.
fn guard(form: &PlanarOneForm) -> Result<(), AnalysisError> {
    if form.is_zero() {
        return Err(FormError::ZeroForm.into());
    }
    if form.b.is_zero() {
        return Err(AnalysisError::DegenerateField(
            "the form is proportional to dx (vector field parallel to d/dy)".into(),
        ));
    }
    let g = form.common_factor();
    if !g.is_constant() {
        return Err(FormError::CoprimalityViolation(g).into());
    }
    Ok(())
}

/// One singular point on the line `x = 0` of a chart, with its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub delta: u32,
    pub chart: ChartId,
    /// Printed `y` coordinate on the line `x = 0`.
    pub point: String,
    /// Moduli of the generators used by the coordinate.
    pub tower: Vec<String>,
    pub origin: bool,
    pub dicritical: bool,
    #[serde(skip)]
    pub tree: Option<BlowupTree>,
}

/// Singular points of the chart forms on the line `X0 = 0`, which is covered
/// by the lines `x = 0` of `U10` and `U11`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub delta: u32,
    pub u10: Vec<CensusEntry>,
    pub u11: Vec<CensusEntry>,
}

impl Census {
    fn origin(entries: &[CensusEntry]) -> Option<&CensusEntry> {
        entries.iter().find(|e| e.origin)
    }

    pub fn u10_origin_dicritical(&self) -> bool {
        Self::origin(&self.u10).is_some_and(|e| e.dicritical)
    }

    pub fn u11_origin_dicritical(&self) -> bool {
        Self::origin(&self.u11).is_some_and(|e| e.dicritical)
    }
}

fn chart_form(form: &PlanarOneForm, delta: u32, chart: ChartId) -> Result<LocalForm, AnalysisError> {
    let ext = extend(delta, form)?;
    Ok(LocalForm::from(&ext.chart_restrict(chart)))
}

fn undecided(delta: u32, chart: ChartId) -> impl Fn(BlowupError) -> AnalysisError {
    move |e| match e {
        BlowupError::Undecided { max_depth } => AnalysisError::Undecided { delta, chart, max_depth },
        e => AnalysisError::Blowup(e),
    }
}

/// Dicriticality of the origin of the chart form.
fn origin_entries(
    local: &LocalForm,
    delta: u32,
    chart: ChartId,
    bounds: Bounds,
) -> Result<Vec<CensusEntry>, AnalysisError> {
    point_entries(local, &PointClass::origin(), delta, chart, bounds)
}

fn point_entries(
    local: &LocalForm,
    point: &PointClass,
    delta: u32,
    chart: ChartId,
    bounds: Bounds,
) -> Result<Vec<CensusEntry>, AnalysisError> {
    let branches =
        is_dicritical_branches(local, point, bounds.max_depth).map_err(undecided(delta, chart))?;
    Ok(branches
        .into_iter()
        .map(|(t, dicritical, tree)| {
            let y = t.specialize(&point.y);
            CensusEntry {
                delta,
                chart,
                point: y.to_string(),
                tower: t.describe(),
                origin: y.is_zero(),
                dicritical,
                tree,
            }
        })
        .collect())
}

/// Whether the origin of `U10` is a dicritical singularity for this `delta`.
pub fn u10_origin_dicritical(
    form: &PlanarOneForm,
    delta: u32,
    bounds: Bounds,
) -> Result<CensusEntry, AnalysisError> {
    let local = chart_form(form, delta, ChartId::U10)?;
    let mut v = origin_entries(&local, delta, ChartId::U10, bounds)?;
    Ok(v.remove(0))
}

/// The least `delta <= max_delta` such that the origin of `U10` is not a
/// dicritical singularity; `None` if there is none in range.
pub fn delta1(form: &PlanarOneForm, bounds: Bounds) -> Result<Option<u32>, AnalysisError> {
    guard(form)?;
    for delta in 0..=bounds.max_delta {
        if !u10_origin_dicritical(form, delta, bounds)?.dicritical {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}

fn line_census(
    local: &LocalForm,
    delta: u32,
    chart: ChartId,
    bounds: Bounds,
) -> Result<Vec<CensusEntry>, AnalysisError> {
    let mut out = Vec::new();
    for p in singular_points_on_axis(local, Axis::X)? {
        out.extend(point_entries(local, &p, delta, chart, bounds)?);
    }
    Ok(out)
}

/// All singular points on `x = 0` in the charts `U10` and `U11` with their
/// dicritical flags.
pub fn dicritical_census_x0(
    form: &PlanarOneForm,
    delta: u32,
    bounds: Bounds,
) -> Result<Census, AnalysisError> {
    guard(form)?;
    let u10 = line_census(&chart_form(form, delta, ChartId::U10)?, delta, ChartId::U10, bounds)?;
    let u11 = line_census(&chart_form(form, delta, ChartId::U11)?, delta, ChartId::U11, bounds)?;
    Ok(Census { delta, u10, u11 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    NotIntegrable,
    Inconclusive,
}

/// Which of the three sufficient conditions for non-integrability fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// No `delta` makes the origin of `U10` non-dicritical.
    A,
    /// For some `delta > delta1` the origin of `U11` is not the unique
    /// dicritical point on `x = 0`.
    B,
    /// For some `delta > delta1` there is a dicritical point on `x = 0` in
    /// `U10`.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub delta: u32,
    pub chart: ChartId,
    pub point: String,
    pub tower: Vec<String>,
    pub dicritical: bool,
    /// Index into [`Verdict::trees`] of the reduction that decided the flag.
    pub tree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub rule: Option<Rule>,
    pub witness_delta: Option<u32>,
    pub delta1: Option<u32>,
    pub bounds: Bounds,
    pub evidence: Vec<Evidence>,
    pub trees: Vec<BlowupTree>,
    /// Set when rule (a) was concluded from a bounded search.
    pub non_rigorous: bool,
}

impl Verdict {
    fn record(&mut self, e: CensusEntry) {
        let tree = e.tree.map(|t| {
            self.trees.push(t);
            self.trees.len() - 1
        });
        self.evidence.push(Evidence {
            delta: e.delta,
            chart: e.chart,
            point: e.point,
            tower: e.tower,
            dicritical: e.dicritical,
            tree,
        });
    }
}

/// Applies the three non-integrability conditions within the bounds. Rule
/// (a) can only be suggested by a finite sweep, so it yields `Inconclusive`
/// unless `assume_exhaustive` is set, in which case the verdict is marked
/// non-rigorous.
pub fn check(
    form: &PlanarOneForm,
    bounds: Bounds,
    assume_exhaustive: bool,
) -> Result<Verdict, AnalysisError> {
    guard(form)?;
    let mut v = Verdict {
        kind: VerdictKind::Inconclusive,
        rule: None,
        witness_delta: None,
        delta1: None,
        bounds,
        evidence: Vec::new(),
        trees: Vec::new(),
        non_rigorous: false,
    };
    for delta in 0..=bounds.max_delta {
        let e = u10_origin_dicritical(form, delta, bounds)?;
        let dicritical = e.dicritical;
        v.record(e);
        if !dicritical {
            v.delta1 = Some(delta);
            break;
        }
    }
    let Some(d1) = v.delta1 else {
        if assume_exhaustive {
            v.kind = VerdictKind::NotIntegrable;
            v.rule = Some(Rule::A);
            v.non_rigorous = true;
        }
        return Ok(v);
    };
    for delta in d1 + 1..=bounds.max_delta {
        let census = dicritical_census_x0(form, delta, bounds)?;
        let rule_b = !census.u11_origin_dicritical()
            || census.u11.iter().any(|e| !e.origin && e.dicritical);
        let rule_c = census.u10.iter().any(|e| e.dicritical);
        let origin11 = Census::origin(&census.u11).is_some();
        for e in census.u10.into_iter().chain(census.u11) {
            v.record(e);
        }
        if !origin11 {
            v.evidence.push(Evidence {
                delta,
                chart: ChartId::U11,
                point: "0".into(),
                tower: Vec::new(),
                dicritical: false,
                tree: None,
            });
        }
        if rule_b || rule_c {
            assert!(delta > d1, "witness must exceed delta1");
            v.kind = VerdictKind::NotIntegrable;
            v.rule = Some(if rule_b { Rule::B } else { Rule::C });
            v.witness_delta = Some(delta);
            break;
        }
    }
    Ok(v)
}

/// `A dx + B dy` becomes `B(y, x) dx + A(y, x) dy`.
pub fn swap_form(form: &PlanarOneForm) -> PlanarOneForm {
    form.swap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> PlanarOneForm {
        PlanarOneForm::parse(s).unwrap()
    }

    #[test]
    fn radial_field() {
        let f = form("(y) dx - (x) dy");
        let b = Bounds { max_delta: 4, max_depth: 16 };
        assert_eq!(delta1(&f, b).unwrap(), Some(0));
        let v = check(&f, b, false).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        let c = dicritical_census_x0(&f, 2, b).unwrap();
        assert!(c.u11_origin_dicritical());
        assert!(c.u10.iter().all(|e| !e.dicritical));
    }

    #[test]
    fn rejects_dx() {
        let b = Bounds::default();
        assert!(matches!(delta1(&form("dx"), b), Err(AnalysisError::DegenerateField(_))));
        assert!(matches!(check(&form("(3) dx"), b, false), Err(AnalysisError::DegenerateField(_))));
    }
}
