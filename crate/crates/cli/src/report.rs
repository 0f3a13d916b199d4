//! Plain-text renderings of analysis results.

use std::fmt::Write;

use algint_core::analyzer::{Census, CensusEntry, ConeReport, RegionReport, RegionSpec, Verdict, VerdictKind};
use algint_core::blowup::BlowupTree;

fn flag(d: bool) -> &'static str {
    if d { "dicritical" } else { "not dicritical" }
}

fn point(p: &str, tower: &[String]) -> String {
    if tower.is_empty() {
        format!("y = {p}")
    } else {
        format!("y = {p} where {}", tower.iter().map(|m| format!("{m} = 0")).collect::<Vec<_>>().join(", "))
    }
}

pub fn verdict(v: &Verdict) -> String {
    let mut s = String::new();
    match (v.kind, v.rule) {
        (VerdictKind::NotIntegrable, Some(rule)) => {
            let rule = format!("{rule:?}").to_lowercase();
            match v.witness_delta {
                Some(d) => writeln!(s, "verdict: NotIntegrable (rule {rule}, witness delta = {d})"),
                None => writeln!(s, "verdict: NotIntegrable (rule {rule})"),
            }
        }
        _ => writeln!(s, "verdict: Inconclusive"),
    }
    .unwrap();
    if v.non_rigorous {
        s.push_str("note: concluded from a bounded search treated as exhaustive\n");
    }
    match v.delta1 {
        Some(d) => writeln!(s, "delta1: {d}").unwrap(),
        None => writeln!(s, "delta1: none up to {}", v.bounds.max_delta).unwrap(),
    }
    s.push_str("evidence:\n");
    for e in &v.evidence {
        let tree = e.tree.map(|i| format!(" [tree {i}]")).unwrap_or_default();
        writeln!(s, "  delta {:>2}  {}  {}  {}{tree}", e.delta, e.chart, point(&e.point, &e.tower), flag(e.dicritical))
            .unwrap();
    }
    write!(s, "bounds: max_delta = {}, max_depth = {}", v.bounds.max_delta, v.bounds.max_depth).unwrap();
    s
}

fn census_lines(s: &mut String, name: &str, entries: &[CensusEntry]) {
    if entries.is_empty() {
        writeln!(s, "{name}: no singular points on x = 0").unwrap();
    }
    for e in entries {
        let depth = e.tree.as_ref().map(|t| format!(" ({} nodes)", t.nodes.len())).unwrap_or_default();
        writeln!(s, "{name}: {}  {}{depth}", point(&e.point, &e.tower), flag(e.dicritical)).unwrap();
    }
}

pub fn census(c: &Census) -> String {
    let mut s = format!("delta = {}\n", c.delta);
    census_lines(&mut s, "U10", &c.u10);
    census_lines(&mut s, "U11", &c.u11);
    s.trim_end().to_string()
}

pub fn cone(r: &ConeReport) -> String {
    let show = |d: Option<u32>| d.map_or_else(|| "not found".to_string(), |d| d.to_string());
    let mut s = format!("delta1 = {}\ndelta1' = {}\n", show(r.delta1), show(r.delta1_prime));
    if let Some(c) = &r.cone {
        writeln!(s, "cone: {c}").unwrap();
    }
    let excluded = if r.xy_type_excluded { "excluded" } else { "not excluded" };
    write!(s, "integrals (a + x*y*H1)/(b + x*y*H2): {excluded}").unwrap();
    s
}

pub fn region(spec: &RegionSpec, from_support: u32, r: &RegionReport, degree: u32, bound: Option<u32>) -> String {
    let mut s = format!(
        "delta1 = {}, delta1' = {}, d_x0 = {}, d_y0 = {}\ndelta1 from the support = {from_support}\nregion: {}\n",
        spec.delta1,
        spec.delta1_prime,
        spec.d_x0,
        spec.d_y0,
        spec.describe()
    );
    if r.contains {
        s.push_str("support contained in the region\n");
    } else {
        writeln!(s, "support points outside the region: {:?}", r.violations).unwrap();
    }
    match bound {
        Some(b) => write!(s, "degree {degree}, bound {b}").unwrap(),
        None => write!(s, "degree {degree}, no bound (both delta values positive)").unwrap(),
    }
    s
}

pub fn tree(t: &BlowupTree) -> String {
    let mut s = String::new();
    for n in &t.nodes {
        let mut tags = vec![format!("m = {}", n.multiplicity)];
        if n.terminal_dicritical {
            tags.push("terminal dicritical".into());
        }
        if n.simple {
            tags.push("simple".into());
        }
        if n.cut {
            tags.push("cut".into());
        }
        if !n.proximate_to.is_empty() {
            tags.push(format!("proximate to {:?}", n.proximate_to));
        }
        writeln!(
            s,
            "{}#{} ({}, {})  {}  {}",
            "  ".repeat(n.depth),
            n.id,
            n.coordinates.0,
            n.coordinates.1,
            tags.join(", "),
            n.form
        )
        .unwrap();
    }
    let centers = t.centers().count();
    write!(s, "{} nodes, {centers} blown up{}", t.nodes.len(), if t.truncated { ", truncated" } else { "" }).unwrap();
    s
}
