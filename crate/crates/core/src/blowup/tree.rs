use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{Elem, Tower};

use super::local::{
    any_unit, axis_roots, charts_for, jet_is_radial, jet_multiplicity, simple_linear_part, Axis,
    RootSpec,
};
use super::{on_branches, BlowupError, LocalForm, PointClass};

pub const DEFAULT_MAX_DEPTH: usize = 64;

/// Which chart of the parent's blowup a node lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartStep {
    /// `x = x, y = x y`, exceptional divisor `x = 0`.
    Chart1,
    /// `x = x y, y = y`, exceptional divisor `y = 0`; only its origin is new.
    Chart2,
}

/// One singular point met during the reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    /// Chart of the parent's blowup holding this point (absent for roots).
    pub chart: Option<ChartStep>,
    /// Coordinates in that chart (or in the original plane for roots).
    pub coordinates: (String, String),
    /// Modulus of the generator introduced for this point, if any.
    pub modulus: Option<String>,
    /// All moduli of the tower the node is computed over.
    pub tower: Vec<String>,
    pub multiplicity: u32,
    pub terminal_dicritical: bool,
    pub simple: bool,
    /// Ancestors whose exceptional divisors (strict transforms) pass through
    /// this point.
    pub proximate_to: Vec<usize>,
    pub free: bool,
    /// Set when the node is ordinary but was not blown up because of the
    /// depth limit.
    pub cut: bool,
    pub children: Vec<usize>,
    /// The local form at the point, translated to the origin.
    pub form: String,
}

/// Reduction of one singular point by successive blowups, flattened in
/// depth-first order. Several roots appear when the starting point's tower
/// splits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupTree {
    pub truncated: bool,
    pub max_depth: usize,
    pub roots: Vec<usize>,
    pub nodes: Vec<BlowupNode>,
}

impl BlowupTree {
    /// Nodes that were (or would be) blown up: the ordinary singularities.
    pub fn centers(&self) -> impl Iterator<Item = &BlowupNode> {
        self.nodes.iter().filter(|n| !n.simple)
    }

    pub fn has_terminal_dicritical(&self) -> bool {
        self.nodes.iter().any(|n| n.terminal_dicritical)
    }

    /// `Some(true)` if a terminal dicritical point was found, `Some(false)` if
    /// the reduction finished without one, `None` when cut short.
    pub fn dicritical(&self) -> Option<bool> {
        if self.has_terminal_dicritical() {
            Some(true)
        } else if self.truncated {
            None
        } else {
            Some(false)
        }
    }
}

/// Labels of the exceptional curves lying on the coordinate axes of a chart.
#[derive(Debug, Clone, Copy)]
struct AxisLabels {
    x: Option<usize>,
    y: Option<usize>,
}

struct Candidate {
    chart: ChartStep,
    root: RootSpec,
}

struct Builder {
    max_depth: usize,
    stop_at_dicritical: bool,
    found: bool,
    nodes: Vec<BlowupNode>,
}

struct Site {
    parent: Option<usize>,
    depth: usize,
    chart: Option<ChartStep>,
    coordinates: (String, String),
    modulus: Option<String>,
    labels: AxisLabels,
}

impl Builder {
    fn node(&mut self, form: &LocalForm, site: Site) -> Result<usize, BlowupError> {
        let t = form.tower().clone();
        let jet = jet_multiplicity(form)?;
        if jet.m == 0 {
            return Err(BlowupError::NotSingular);
        }
        let dicritical = jet_is_radial(&t, &jet)?;
        let simple = jet.m == 1 && simple_linear_part(&t, &jet)?;
        let proximate_to: Vec<usize> =
            [site.labels.x, site.labels.y].into_iter().flatten().collect::<BTreeSet<_>>().into_iter().collect();
        let id = self.nodes.len();
        self.nodes.push(BlowupNode {
            id,
            parent: site.parent,
            depth: site.depth,
            chart: site.chart,
            coordinates: site.coordinates,
            modulus: site.modulus,
            tower: t.describe(),
            multiplicity: jet.m,
            terminal_dicritical: dicritical,
            simple,
            free: proximate_to.len() == 1,
            proximate_to,
            cut: false,
            children: Vec::new(),
            form: form.to_string(),
        });
        if dicritical {
            self.found = true;
        }
        if simple || (self.found && self.stop_at_dicritical) {
            return Ok(id);
        }
        if site.depth >= self.max_depth {
            self.nodes[id].cut = true;
            return Ok(id);
        }

        let charts = charts_for(form, jet.m, dicritical);
        let mut work: Vec<Candidate> = axis_roots(&charts.chart1, Axis::X)?
            .into_iter()
            .map(|root| Candidate { chart: ChartStep::Chart1, root })
            .collect();
        let c2 = &charts.chart2;
        let origin2 = [&c2.a, &c2.b].iter().map(|p| p.coeff(&[0, 0])).collect::<Vec<_>>();
        if !any_unit(&t, origin2.iter())? {
            work.push(Candidate { chart: ChartStep::Chart2, root: RootSpec::Known(Elem::zero()) });
        }
        work.reverse();

        let mut children = Vec::new();
        while let Some(cand) = work.pop() {
            if self.found && self.stop_at_dicritical {
                break;
            }
            let mark = self.nodes.len();
            let (labels, base) = match cand.chart {
                ChartStep::Chart1 => (
                    AxisLabels { x: Some(id), y: if is_zero_root(&cand.root) { site.labels.y } else { None } },
                    &charts.chart1,
                ),
                ChartStep::Chart2 => (AxisLabels { x: site.labels.x, y: Some(id) }, &charts.chart2),
            };
            let (child_form, coordinate, modulus, level) = match &cand.root {
                RootSpec::Known(c) => (base.translate(&Elem::zero(), c), c.to_string(), None, None),
                RootSpec::Algebraic(m) => {
                    let ext = t.extend(m.clone());
                    let g = ext.generator(ext.depth());
                    let printed = ext.describe().pop();
                    (base.lift(&ext).translate(&Elem::zero(), &g), g.to_string(), printed, Some(ext.depth()))
                }
            };
            let coordinates = match cand.chart {
                ChartStep::Chart1 => ("0".to_string(), coordinate),
                ChartStep::Chart2 => ("0".to_string(), "0".to_string()),
            };
            let child_site = Site {
                parent: Some(id),
                depth: site.depth + 1,
                chart: Some(cand.chart),
                coordinates,
                modulus,
                labels,
            };
            match self.node(&child_form, child_site) {
                Ok(c) => children.push(c),
                Err(e) => match (e.split(), level, &cand.root) {
                    (Some(s), Some(l), RootSpec::Algebraic(m)) if s.level == l => {
                        // the adjoined factor splits: treat both parts separately
                        self.nodes.truncate(mark);
                        let factor = s.factor.clone();
                        let base_t = t.clone();
                        let cof = crate::arith::UniPoly::new(base_t.clone(), m.clone())
                            .divrem(&crate::arith::UniPoly::new(base_t.clone(), factor.clone()))?
                            .0
                            .into_coeffs();
                        work.push(Candidate { chart: cand.chart, root: RootSpec::from_factor(&base_t, cof) });
                        work.push(Candidate { chart: cand.chart, root: RootSpec::from_factor(&base_t, factor) });
                    }
                    _ => {
                        self.nodes.truncate(mark);
                        return Err(e);
                    }
                },
            }
        }
        self.nodes[id].children = children;
        Ok(id)
    }
}

fn is_zero_root(r: &RootSpec) -> bool {
    matches!(r, RootSpec::Known(c) if c.is_zero())
}

fn build(
    form: &LocalForm,
    max_depth: usize,
    stop_at_dicritical: bool,
) -> Result<BlowupTree, BlowupError> {
    let mut b = Builder { max_depth, stop_at_dicritical, found: false, nodes: Vec::new() };
    let branches = on_branches(form.tower(), 0, &mut |t: &Tower| {
        let f = form.lift(t);
        let site = Site {
            parent: None,
            depth: 0,
            chart: None,
            coordinates: ("0".into(), "0".into()),
            modulus: None,
            labels: AxisLabels { x: None, y: None },
        };
        let mark = b.nodes.len();
        b.node(&f, site).inspect_err(|_| b.nodes.truncate(mark))
    })?;
    let roots = branches.into_iter().map(|(_, id)| id).collect();
    let truncated = b.nodes.iter().any(|n| n.cut);
    Ok(BlowupTree { truncated, max_depth, roots, nodes: b.nodes })
}

/// Reduces the singularity at the origin. The tree is cut at `max_depth`
/// blowups; `truncated` records whether that happened.
pub fn reduce(form: &LocalForm, max_depth: usize) -> Result<BlowupTree, BlowupError> {
    build(form, max_depth, false)
}

/// Per-branch dicriticality of `point`, with the tree that decided it.
/// Nonsingular and simple points are not dicritical and get no tree.
pub fn is_dicritical_branches(
    form: &LocalForm,
    point: &PointClass,
    max_depth: usize,
) -> Result<Vec<(Tower, bool, Option<BlowupTree>)>, BlowupError> {
    let t = form.tower().join(&point.tower).expect("point and form over incompatible towers");
    let results = on_branches(&t, 0, &mut |t: &Tower| {
        let p = point.lift(t);
        let local = form.lift(t).translate(&p.x, &p.y);
        let jet = jet_multiplicity(&local)?;
        if jet.m == 0 || (jet.m == 1 && simple_linear_part(t, &jet)?) {
            return Ok((false, None));
        }
        let tree = build(&local, max_depth, true)?;
        match tree.dicritical() {
            Some(d) => Ok((d, Some(tree))),
            None => Err(BlowupError::Undecided { max_depth }),
        }
    })?;
    Ok(results.into_iter().map(|(t, (d, tree))| (t, d, tree)).collect())
}

/// Whether `point` is a dicritical singularity: an ordinary singular point
/// whose reduction meets a terminal dicritical point. For a class that
/// splits into several branches the answer is true if any branch is.
pub fn is_dicritical(form: &LocalForm, point: &PointClass, max_depth: usize) -> Result<bool, BlowupError> {
    Ok(is_dicritical_branches(form, point, max_depth)?.iter().any(|(_, d, _)| *d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{blowup_charts, is_terminal_dicritical};
    use crate::form::{parse_poly, PlanarOneForm};
    use crate::hirzebruch::{extend, ChartId};
    use crate::poly::{MultiPoly, Vars};
    use proptest::prelude::*;

    fn lf(text: &str) -> LocalForm {
        LocalForm::from(&PlanarOneForm::parse_unchecked(text).unwrap())
    }

    fn sqrt2() -> Tower {
        Tower::rationals().extend(vec![Elem::from_int(-2), Elem::zero(), Elem::one()])
    }

    #[test]
    fn radial_point_is_terminal() {
        let t = reduce(&lf("(y) dx - (x) dy"), 8).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert!(t.nodes[0].terminal_dicritical);
        assert_eq!(t.dicritical(), Some(true));
        assert!(!t.nodes[0].free);
    }

    #[test]
    fn saddle_is_not_dicritical() {
        let f = lf("(y) dx + (x) dy");
        assert!(!is_dicritical(&f, &PointClass::origin(), 8).unwrap());
        let branches = is_dicritical_branches(&f, &PointClass::origin(), 8).unwrap();
        assert!(branches[0].2.is_none());
    }

    #[test]
    fn chain_reaches_terminal_point() {
        for delta in 3..7usize {
            let w = PlanarOneForm::parse("(y+x*y) dx + (1+x*y^2+x^2) dy").unwrap();
            let local = LocalForm::from(&extend(delta as u32, &w).unwrap().chart_restrict(ChartId::U11));
            let tree = build(&local, 64, true).unwrap();
            let terminal: Vec<_> = tree.nodes.iter().filter(|n| n.terminal_dicritical).collect();
            assert_eq!(terminal.len(), 1);
            assert_eq!(terminal[0].depth, delta - 2);
            assert!(tree.nodes.iter().all(|n| n.depth == 0 || n.chart == Some(ChartStep::Chart1)));
        }
    }

    #[test]
    fn depth_limit_truncates() {
        let f = lf("(-5*y^4 - 2*x^2*y^4 - 2*x^4*y^3 + x^7*y) dx + (x^3*y^3 + x^5*y^2 - x^8) dy");
        let t = reduce(&f, 3).unwrap();
        assert!(t.truncated);
        assert!(t.nodes.iter().any(|n| n.cut));
        assert_eq!(t.dicritical(), None);
        assert_eq!(
            is_dicritical(&f, &PointClass::origin(), 3),
            Err(BlowupError::Undecided { max_depth: 3 })
        );
        let full = reduce(&f, 64).unwrap();
        assert!(!full.truncated);
        assert_eq!(full.centers().count(), 17);
    }

    #[test]
    fn algebraic_points() {
        // Radial at (0, c) for c^2 = 2.
        let f = lf("(y^2 - 2) dx - (2*x*y) dy");
        let t = sqrt2();
        let p = PointClass { tower: t.clone(), x: Elem::zero(), y: t.generator(1) };
        assert!(is_dicritical(&f, &p, 8).unwrap());
        let g = lf("(y^2 - 2) dx + (x*y) dy");
        assert!(!is_dicritical(&g, &p, 8).unwrap());
    }

    #[test]
    fn conjugates_agree() {
        // y = s with s^2 = 2 over Q(t), t^2 = 2.
        let t1 = sqrt2();
        let t2 = t1.extend(vec![Elem::from_int(-2), Elem::zero(), Elem::one()]);
        let p = PointClass { tower: t2.clone(), x: Elem::zero(), y: t2.generator(2) };
        for (text, expected) in [("(y^2 - 2) dx - (2*x*y) dy", true), ("(y^2 - 2) dx + (x*y) dy", false)] {
            let branches = is_dicritical_branches(&lf(text), &p, 8).unwrap();
            assert!(!branches.is_empty());
            assert!(branches.iter().all(|(_, d, _)| *d == expected));
        }
    }

    #[test]
    fn split_separates_conjugates() {
        // (y - t) dx - x dy at y = s: radial when s = t, nonsingular when s = -t.
        let t1 = sqrt2();
        let t2 = t1.extend(vec![Elem::from_int(-2), Elem::zero(), Elem::one()]);
        let v = Vars::xy();
        let y = MultiPoly::var(&v, &t1, 1);
        let a = y.sub(&MultiPoly::constant(&v, &t1, t1.generator(1)));
        let b = MultiPoly::var(&v, &t1, 0).neg();
        let f = LocalForm::new(a, b);
        let p = PointClass { tower: t2.clone(), x: Elem::zero(), y: t2.generator(2) };
        let branches = is_dicritical_branches(&f, &p, 8).unwrap();
        assert_eq!(branches.len(), 2);
        let flags: Vec<bool> = branches.iter().map(|(_, d, _)| *d).collect();
        assert!(flags.contains(&true) && flags.contains(&false));
        for (t, d, _) in &branches {
            let s = t.specialize(&t2.generator(2));
            let r = t.specialize(&t1.generator(1));
            assert_eq!(*d, t.is_zero(&t.sub(&s, &r)).unwrap());
        }
    }

    fn poly_strategy(min_deg: u32) -> impl Strategy<Value = MultiPoly> {
        let monomials: Vec<(u32, u32)> =
            (min_deg..=3).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
        let n = monomials.len();
        proptest::collection::vec(-3i64..=3, n).prop_map(move |cs| {
            let v = Vars::xy();
            let terms = monomials
                .iter()
                .zip(cs)
                .filter(|(_, c)| *c != 0)
                .map(|(&(i, j), c)| format!("({c})*x^{i}*y^{j}"))
                .collect::<Vec<_>>();
            if terms.is_empty() {
                MultiPoly::zero(&v, &Tower::rationals())
            } else {
                parse_poly(&terms.join(" + "), &v).unwrap()
            }
        })
    }

    /// Singular forms of degree at most 3; about half start with a radial jet.
    fn singular_form() -> impl Strategy<Value = LocalForm> {
        (poly_strategy(1), poly_strategy(1), poly_strategy(0), any::<bool>()).prop_filter_map(
            "zero or non-reduced form",
            |(a, b, h, radial)| {
                let v = Vars::xy();
                let (a, b) = if radial {
                    let h = h.homogeneous_part(0).add(&h.homogeneous_part(1));
                    let y = MultiPoly::var(&v, &Tower::rationals(), 1);
                    let x = MultiPoly::var(&v, &Tower::rationals(), 0);
                    let hi = |p: &MultiPoly| p.sub(&p.homogeneous_part(1)).sub(&p.homogeneous_part(0));
                    (y.mul(&h).add(&hi(&a)), x.mul(&h).neg().add(&hi(&b)))
                } else {
                    (a, b)
                };
                let w = PlanarOneForm::new(a, b).ok()?;
                Some(LocalForm::from(&w))
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn dicritical_iff_divisor_not_invariant(f in singular_form()) {
            // Strict transform in the first chart divided by x^m; the
            // exceptional divisor is invariant iff x still divides dy's
            // coefficient after removing common powers of x.
            let m = jet_multiplicity(&f).unwrap().m;
            prop_assume!(m >= 1);
            let v = Vars::xy();
            let q = Tower::rationals();
            let x = MultiPoly::var(&v, &q, 0);
            let xy = x.mul(&MultiPoly::var(&v, &q, 1));
            let (ac, bc) = (f.a.compose(&[x.clone(), xy.clone()]), f.b.compose(&[x.clone(), xy.clone()]));
            let y = MultiPoly::var(&v, &q, 1);
            let mut a1 = ac.add(&y.mul(&bc)).div_var_pow(0, m).unwrap();
            let mut b1 = x.mul(&bc).div_var_pow(0, m).unwrap();
            let divisible = |p: &MultiPoly| p.is_zero() || p.valuation_in(0) > 0;
            if divisible(&a1) && divisible(&b1) {
                a1 = a1.div_var_pow(0, 1).unwrap();
                b1 = b1.div_var_pow(0, 1).unwrap();
            }
            let invariant = divisible(&b1);
            prop_assert_eq!(is_terminal_dicritical(&f).unwrap(), !invariant);
            let charts = blowup_charts(&f).unwrap();
            prop_assert_eq!(charts.chart1.a, a1);
            prop_assert_eq!(charts.chart1.b, b1);
        }

        #[test]
        fn reduction_terminates(f in singular_form()) {
            let t = reduce(&f, DEFAULT_MAX_DEPTH).unwrap();
            prop_assert!(!t.truncated);
            for n in &t.nodes {
                prop_assert_eq!(n.free, n.proximate_to.len() == 1);
                if let Some(p) = n.parent {
                    prop_assert_eq!(t.nodes[p].depth + 1, n.depth);
                    prop_assert!(n.proximate_to.contains(&p));
                }
            }
        }
    }
}
