use algint_core::analyzer::{check, cone_test, delta1, dicritical_census_x0, swap_form, Bounds, VerdictKind};
use algint_core::form::PlanarOneForm;

const EX1: &str = "(x*y+y^2+5*x^3*y) dx + (-x^2-x*y+y^3) dy";
const EX2: &str = "(y+x*y) dx + (1+x*y^2+x^2) dy";

fn form(s: &str) -> PlanarOneForm {
    PlanarOneForm::parse(s).unwrap()
}

#[test]
fn swapped_forms() {
    assert_eq!(swap_form(&form("(y) dx - (x) dy")), form("(-y) dx + (x) dy"));
    assert_eq!(swap_form(&form("dx")), form("dy"));
    assert_eq!(swap_form(&form(EX1)), form("(-y^2-x*y+x^3) dx + (x*y+x^2+5*x*y^3) dy"));
}

#[test]
fn cone_of_first_example() {
    let r = cone_test(&form(EX1), Bounds::default()).unwrap();
    assert_eq!(r.delta1, Some(0));
    assert!(r.xy_type_excluded);
}

#[test]
fn second_example_census() {
    let w = form(EX2);
    let c = dicritical_census_x0(&w, 4, Bounds::default()).unwrap();
    let origin = c.u11.iter().find(|e| e.origin).unwrap();
    assert!(origin.dicritical);
    let tree = origin.tree.as_ref().unwrap();
    let terminal: Vec<_> = tree.nodes.iter().filter(|n| n.terminal_dicritical).collect();
    assert_eq!(terminal.len(), 1);
    assert_eq!(terminal[0].depth, 2);
    assert!(c.u10.iter().all(|e| !e.dicritical));
    assert_eq!(delta1(&w, Bounds::default()).unwrap(), Some(1));
}

#[test]
fn radial_field_is_inconclusive() {
    let v = check(&form("(y) dx - (x) dy"), Bounds::default(), false).unwrap();
    assert_eq!(v.kind, VerdictKind::Inconclusive);
    assert_eq!(v.delta1, Some(0));
    assert!(v.rule.is_none() && !v.non_rigorous);
}

#[test]
fn verdict_json_shape() {
    let v = check(&form(EX1), Bounds::default(), false).unwrap();
    let j = serde_json::to_value(&v).unwrap();
    assert_eq!(j["kind"], "NotIntegrable");
    assert_eq!(j["rule"], "b");
    assert_eq!(j["witness_delta"], 1);
    assert_eq!(j["delta1"], 0);
    assert_eq!(j["bounds"]["max_delta"], 10);
    let ev = j["evidence"].as_array().unwrap();
    let last = ev.last().unwrap();
    assert_eq!(last["chart"], "U11");
    assert_eq!(last["dicritical"], false);
    let tree = &j["trees"][last["tree"].as_u64().unwrap() as usize];
    assert_eq!(tree["nodes"].as_array().unwrap().iter().filter(|n| n["simple"] == false).count(), 17);
}
