use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const EX1: &str = "(x*y+y^2+5*x^3*y) dx + (-x^2-x*y+y^3) dy";
const EX2: &str = "(y+x*y) dx + (1+x*y^2+x^2) dy";

fn algint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algint")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = format!("{}/../../schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

fn assert_valid(schema: &jsonschema::JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
}

#[test]
fn first_example_is_not_integrable() {
    let o = algint(&["check", "--form", EX1]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("verdict: NotIntegrable (rule b, witness delta = 1)"), "{text}");
}

#[test]
fn second_example_delta1() {
    let o = algint(&["delta1", "--form", EX2]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let o = algint(&["check", "--form", EX2]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("verdict: Inconclusive"));
}

#[test]
fn verify_integral() {
    let o = algint(&["verify", "--field", "x;y", "--integral", "y/x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    let o = algint(&["verify", "--field", "x;y", "--integral", "x+y"]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn extension_text() {
    let o = algint(&["extend", "--delta", "1", "--form", EX2]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "A0 = X0^2*X1*Y0*Y1^3 + X0*Y0^3*Y1 - X1*Y0^3*Y1\n\
         A1 = X0*Y0^3*Y1 + X1*Y0^3*Y1\n\
         B0 = -X0^3*X1*Y1^3 - X0^2*Y0^2*Y1 - X1^2*Y0^2*Y1\n\
         B1 = X0^3*X1*Y0*Y1^2 + X0^2*Y0^3 + X1^2*Y0^3\n"
    );
    let o = algint(&["restrict", "--delta", "1", "--chart", "11", "--form", EX1]);
    assert_eq!(stdout(&o).trim(), "(x^7*y - 2*x^4*y^3 - 2*x^2*y^4 - 5*y^4) dx + (-x^8 + x^5*y^2 + x^3*y^3) dy");
}

#[test]
fn verdicts_match_schema() {
    let s = schema("verdict.schema.json");
    for (form, extra) in [(EX1, vec![]), (EX2, vec![]), ("(y) dx - (x) dy", vec!["--max-delta", "3"])] {
        let mut args = vec!["check", "--json", "--form", form];
        args.extend(extra);
        let v: Value = serde_json::from_slice(&algint(&args).stdout).unwrap();
        assert_valid(&s, &v);
    }
    let mut v: Value = serde_json::from_slice(&algint(&["check", "--json", "--form", EX1]).stdout).unwrap();
    v["rule"] = Value::Null;
    assert!(!s.is_valid(&v));
    v["kind"] = "Maybe".into();
    assert!(!s.is_valid(&v));
}

#[test]
fn bounded_search_as_exhaustive() {
    let o = algint(&["check", "--json", "--max-delta", "0", "--form", EX2]);
    assert_eq!(o.status.code(), Some(2));
    let o = algint(&["check", "--json", "--max-delta", "0", "--assume-exhaustive", "--form", EX2]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid(&schema("verdict.schema.json"), &v);
    assert_eq!(v["rule"], "a");
    assert_eq!(v["non_rigorous"], true);
}

#[test]
fn trees_match_schema() {
    let s = schema("blowup_tree.schema.json");
    let u11 = "(-5*y^4 - 2*x^2*y^4 - 2*x^4*y^3 + x^7*y) dx + (x^3*y^3 + x^5*y^2 - x^8) dy";
    for (form, at) in [(u11, "0,0"), ("(y-1) dx - (x-2) dy", "2,1"), ("(y^2 - 2*x^2) dx + (x*y) dy", "0,0")] {
        let o = algint(&["reduce", "--json", "--form", form, "--at", at]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_valid(&s, &v);
    }
    let o = algint(&["reduce", "--json", "--max-depth", "2", "--form", u11]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid(&s, &v);
    assert_eq!(v["truncated"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["check", "--json", "--form", EX1],
        vec!["census", "--delta", "4", "--form", EX2],
        vec!["cone", "--form", EX1],
    ] {
        assert_eq!(algint(&args).stdout, algint(&args).stdout);
    }
}

#[test]
fn form_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_algint"))
        .args(["delta1", "--form", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(EX2.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn input_errors() {
    for args in [
        vec!["check", "--form", "(x"],
        vec!["check", "--form", "dx"],
        vec!["check", "--form", "(x^2) dx + (x*y) dy"],
        vec!["verify", "--field", "x", "--integral", "y/x"],
        vec!["reduce", "--form", "dx"],
        vec!["reduce", "--form", "(y) dx - (x) dy", "--at", "1/0,1"],
    ] {
        let o = algint(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    }
    let o = algint(&["check"]);
    assert!(!o.status.success());
    let o = algint(&["restrict", "--delta", "1", "--chart", "22", "--form", EX1]);
    assert!(!o.status.success());
}

#[test]
fn region_report() {
    let o = algint(&["region", "--json", "--form", "(y) dx - (x) dy", "--integral", "y/x"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["contains"], true);
    assert_eq!(v["degree_bound"], 2);
    assert_eq!(v["delta1_from_support"], 0);
}
