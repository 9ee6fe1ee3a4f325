use std::process::Command;

use levmeas::field::FieldParams;
use levmeas_cli::{parse, Expr, FamilySpec};
use proptest::prelude::*;

fn levmeas(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_levmeas")).args(args).output().unwrap();
    (
        out.status.success(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn measure_of_a_difference() {
    let (ok, out, err) = levmeas(&["measure", r"D(0; 0, 0) \ D(t1; 1, 0)"]);
    assert!(ok, "{err}");
    assert_eq!(out, "1/2\n");
}

#[test]
fn gl_index() {
    let (ok, out, _) = levmeas(&["--family", "gl:2", "index", "K([[1,0],[0,1]]; 2, 0)", "K([[1,0],[0,1]]; 1, 0)"]);
    assert!(ok);
    assert_eq!(out, "q^4 = 16\n");
}

#[test]
fn json_document() {
    let (ok, out, _) = levmeas(&["--json", "measure", "D(0;1,0)"]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "measure");
    assert_eq!(v["family"], "additive");
    assert_eq!(v["p"], 2);
    assert_eq!(v["result"]["terms"][0]["coefficient"], "1/2");
    assert_eq!(v["result"]["terms"][0]["exponent"], serde_json::json!([0]));
}

#[test]
fn errors_carry_positions_and_fail() {
    let cases: &[(&[&str], &str)] = &[
        (&["measure", "D(0; 1)"], "line 1, column 6: index vector has 1 entries, expected 2"),
        (&["--p", "3", "--family", "sl:2", "measure", "K([[1,0],[0,2]]; 1, 0)"], "determinant is not 1"),
        (&["--family", "gl:2", "measure", "K([[1,1],[1,1]]; 1, 0)"], "determinant is 0"),
        (&["measure", "D(0;0,0) * {1}"], "translates on the left only"),
        (&["measure", "D(0;0,0) &"], "expected a set"),
        (&["--paper-scaling", "measure", "D(0;0,0)"], "matrix families only"),
        (&["--p", "3", "index", r"D(0;0,0) \ D(0;1,0)", "D(0;0,0)"], "expects distinguished sets"),
    ];
    for (args, needle) in cases {
        let (ok, out, err) = levmeas(args);
        assert!(!ok, "{args:?} succeeded");
        assert!(out.is_empty());
        assert!(err.starts_with("error: ") && err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn multiline_input_reports_second_line() {
    let e = parse("D(0;0,0)\n  | D(t3;0,0)", FieldParams::new(2, 2).unwrap(), &FamilySpec::Additive).unwrap_err();
    assert_eq!((e.line, e.column), (2, 7));
}

fn poly() -> impl Strategy<Value = String> {
    let term = (0u32..3, -2i64..3, -2i64..3).prop_map(|(c, a, b)| match c {
        0 => format!("t1^{a}*t2^{b}"),
        1 => format!("1*t2^{b}"),
        _ => "1".to_string(),
    });
    prop::collection::vec(term, 1..3).prop_map(|ts| ts.join(" + "))
}

fn expr() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (poly(), -2i64..3, -2i64..3).prop_map(|(s, a, b)| format!("D({s}; {a}, {b})")),
        Just("empty".to_string()),
    ];
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) | ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) & ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!(r"({a}) \ ({b})")),
            (poly(), inner).prop_map(|(g, a)| format!("{{{g}}} + ({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printing_is_a_fixed_point_of_parsing(text in expr()) {
        let params = FieldParams::new(2, 2).unwrap();
        let e: Expr = parse(&text, params, &FamilySpec::Additive).unwrap();
        let printed = e.to_string();
        let back = parse(&printed, params, &FamilySpec::Additive).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), printed);
    }
}
