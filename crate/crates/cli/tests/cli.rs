//! End-to-end behaviour of the `orbk` front end.

use std::io::Write;

use serde_json::Value;

fn orbk(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("orbk").chain(args.iter().copied());
    let code = orbk::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = orbk(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn trace_of_the_regular_representation() {
    assert_eq!(json(&["trace", "--orders", "2", "--rep", r#"{"coeffs":{"0":1,"1":1}}"#]), Value::from(1));
}

#[test]
fn localize_example() {
    let v = json(&["localize", "--orders", "4", "--h", "2", "--g", "1"]);
    assert_eq!(v["survives"], false);
    assert_eq!(v["witness"]["coeffs"], serde_json::json!({"0": 1, "2": -1}));
    let v = json(&["localize", "--orders", "4", "--h", "1", "--g", "2"]);
    assert_eq!(v["survives"], true);
    assert!(v["witness"].is_null());
}

#[test]
fn output_is_deterministic() {
    let cases: &[&[&str]] = &[
        &["cp1", "nondeg", "--k", "3"],
        &["ch", "--orders", "2,2", "--rep", r#"{"coeffs":{"1,0":2,"0,1":-1}}"#],
        &["reproduce-paper"],
    ];
    for args in cases {
        assert_eq!(orbk(args).1, orbk(args).1);
    }
}

#[test]
fn emitted_values_reparse() {
    let rep = r#"{"coeffs":{"0":1,"1":-2,"2":3}}"#;
    let ch = json(&["ch", "--orders", "3", "--rep", rep]);
    let text = ch.to_string();
    let back = json(&["hatk-point", "--classfun", &text]);
    assert_eq!(back["coefficients_mod_z"], serde_json::json!({}));

    let induced = json(&["induce", "--subgroup", r#"{"ambient":{"orders":[4]},"generators":[[2]]}"#, "--rep", r#"{"coeffs":{"1":1}}"#]);
    let again = json(&["restrict", "--subgroup", r#"{"ambient":{"orders":[4]},"generators":[[2]]}"#, "--rep", &induced.to_string()]);
    assert_eq!(again["coeffs"], serde_json::json!({"1": 2}));
}

#[test]
fn table_format_renders_markdown() {
    let (code, out, _) = orbk(&["--format", "table", "cp1", "pairing-matrix", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("| det | -1 |"));
    assert!(out.contains("| **2** | 0 | -1 | -1 | -1 |"));
}

#[test]
fn exit_codes() {
    assert_eq!(orbk(&["--help"]).0, 0);
    assert_eq!(orbk(&["no-such-command"]).0, 2);
    assert_eq!(orbk(&["trace", "--orders", "2", "--rep", "{not json"]).0, 2);
    let (code, _, err) = orbk(&["pairing", "--orders", "3", "--left", r#"{"group":{"orders":[2]},"coeffs":{}}"#, "--right", "{}"]);
    assert_eq!(code, 2, "{err}");
    assert!(!err.is_empty());

    let float_turn = r#"{"group":{"orders":[2]},"sectors":{"1":[{"theta":"1/2","plus":[0.3],"minus":[]}]}}"#;
    let path = std::env::temp_dir().join(format!("orbk-holonomy-{}.json", std::process::id()));
    std::fs::write(&path, float_turn).unwrap();
    let (code, _, err) = orbk(&["mtorus", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    let (code, out, _) = orbk(&["--approx", "mtorus", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("inexact"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn reproduce_paper_reports_and_fails_on_mismatch() {
    let v = json(&["reproduce-paper"]);
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() >= 10);

    let dir = std::env::temp_dir().join(format!("orbk-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    assert_eq!(orbk(&["reproduce-paper", "--fixtures", dir.to_str().unwrap()]).0, 2);

    let mut f = std::fs::File::create(dir.join("wrong.json")).unwrap();
    write!(f, r#"{{"id":"wrong","anchor":"a deliberately wrong value","args":["cp1","index","--k","2","--l","0","--h","0"],"expect":{{"dimension":2}}}}"#).unwrap();
    let (code, out, _) = orbk(&["reproduce-paper", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fixtures"][0]["pass"], false);
    assert!(v["fixtures"][0]["diff"].is_string());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_and_conductor_cap() {
    let path = std::env::temp_dir().join(format!("orbk-config-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"format": "table"}"#).unwrap();
    let (code, out, _) = orbk(&["--config", path.to_str().unwrap(), "cp1", "index", "--k", "2", "--l", "0", "--h", "0"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("| key | value |"));
    std::fs::write(&path, r#"{"colour": true}"#).unwrap();
    assert_eq!(orbk(&["--config", path.to_str().unwrap(), "cp1", "h0", "--k", "2", "--l", "0", "--h", "0"]).0, 2);
    std::fs::remove_file(&path).unwrap();

    assert_eq!(orbk(&["--max-conductor", "0", "trace", "--orders", "2", "--rep", "{}"]).0, 2);
    let (code, _, err) = orbk(&["--max-conductor", "4", "ch", "--orders", "5", "--rep", r#"{"coeffs":{"1":1}}"#]);
    assert_eq!(code, 3, "{err}");
}
