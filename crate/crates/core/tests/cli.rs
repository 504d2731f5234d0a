use std::path::PathBuf;
use std::process::Command;

use serde_json::json;
use spanfact::report::{emit_table, parse_json_lines, Format};

fn spanfact(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spanfact"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_config(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("spanfact-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "--fixture", "a5-ex3", "--classify", "--swap"][..],
        &[
            "tree-search",
            "--fixture",
            "toy:4",
            "--all-classes",
            "--format",
            "json-lines",
        ],
        &["blocks", "--fixture", "toy:5", "--bitmask", "3"],
    ] {
        let a = spanfact(args);
        assert_eq!(a.0, 0, "{args:?}: {}", a.2);
        assert_eq!(a, spanfact(args));
    }
}

#[test]
fn json_lines_round_trip_through_the_parser() {
    let (code, out, _) = spanfact(&[
        "enumerate",
        "--fixture",
        "toy:3",
        "--classify",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code, 0);
    let records = parse_json_lines(&out).unwrap();
    assert_eq!(emit_table(&records, Format::JsonLines), out);
    assert!(records.iter().all(|r| r.schema == "spanfact.enumerate/1"));
}

#[test]
fn a5_example_three_families() {
    let (code, out, _) = spanfact(&["enumerate", "--fixture", "a5-ex3", "--format", "json-lines"]);
    assert_eq!(code, 0);
    let records = parse_json_lines(&out).unwrap();
    let kind = |k: &'static str| records.iter().filter(move |r| r.get("kind") == Some(&json!(k)));
    assert_eq!(kind("factorization").count(), 64);
    let mut sizes: Vec<u64> = kind("family")
        .map(|r| r.get("factorizations").unwrap().as_u64().unwrap())
        .collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [12, 12, 20, 20]);
}

#[test]
fn a5_example_two_has_seven_cycle_type_rows() {
    let (code, out, _) = spanfact(&["enumerate", "--fixture", "a5-ex2", "--classify", "--swap"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().filter(|l| l.contains("\tfamily\t")).collect();
    assert_eq!(rows.len(), 7);
}

#[test]
fn toy_pipeline_from_a_config_file() {
    let path = temp_config(
        "toy",
        r#"{"toy": {"m": 3}, "analysis": {"blocks": true, "tree_search": true}, "format": "json-lines"}"#,
    );
    let (code, out, err) = spanfact(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let records = parse_json_lines(&out).unwrap();
    let facs = records
        .iter()
        .filter(|r| r.get("kind") == Some(&json!("factorization")))
        .count();
    assert_eq!(facs, 8);
    let identity_on_cycles = records.iter().any(|r| {
        r.get("system") == Some(&json!("x-cycles"))
            && r.get("tau") == Some(&json!("()"))
            && r.get("bitmask") == Some(&json!(0))
    });
    assert!(identity_on_cycles);
    assert!(records.iter().any(|r| r.command == "tree-search"));
}

#[test]
fn exit_codes() {
    let empty = temp_config("empty", "");
    let neither = temp_config("neither", "{}");
    let bad_token = temp_config(
        "bad-token",
        r#"{"group_generators": ["(0 1 2 3 4)", "(0 1 q)"], "H_generators": [], "S": ["(0 1 2 3 4)"]}"#,
    );
    let invalid = temp_config(
        "invalid",
        r#"{"group_generators": ["(0 1 2 3 4)", "(0 1 2)"], "H_generators": ["(0 2)(1 3)"], "S": ["(0 2)(1 3)", "(0 1 2 3 4)"]}"#,
    );
    let tiny_cap = temp_config(
        "tiny-cap",
        r#"{"group_generators": ["(0 1 2 3 4)", "(0 1 2)"], "H_generators": [], "S": ["(0 1 2 3 4)", "(0 1 2)"], "budgets": {"group_cap": 10}}"#,
    );
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["build", "--fixture", "morris"], 0),
        (vec!["--help"], 0),
        (vec!["build"], 2),
        (vec!["frobnicate", "--fixture", "morris"], 2),
        (vec!["build", "--fixture", "toy:2"], 3),
        (vec!["build", "--config", empty.to_str().unwrap()], 2),
        (vec!["build", "--config", neither.to_str().unwrap()], 2),
        (vec!["build", "--config", bad_token.to_str().unwrap()], 2),
        (vec!["build", "--config", "/nonexistent/spanfact.json"], 2),
        (vec!["build", "--config", invalid.to_str().unwrap()], 3),
        (vec!["build", "--config", tiny_cap.to_str().unwrap()], 4),
        (vec!["blocks", "--fixture", "toy:3", "--bitmask", "99"], 2),
        (vec!["spanning", "--fixture", "toy:3", "--method", "addressing"], 3),
        (
            vec![
                "tree-search",
                "--fixture",
                "a5-ex2",
                "--bitmask",
                "1",
                "--max-nodes",
                "3",
            ],
            4,
        ),
        (vec!["verify", "--fixture", "toy:3", "--words", "e,1,2,11,12,21"], 0),
    ];
    for (args, expected) in cases {
        let (code, _, err) = spanfact(&args);
        assert_eq!(code, expected, "{args:?}: {err}");
    }
    let (_, _, err) = spanfact(&["build", "--config", bad_token.to_str().unwrap()]);
    assert!(err.contains("group_generators[1]") && err.contains("(0 1 q)"), "{err}");
    let (_, _, err) = spanfact(&["build", "--quiet", "--fixture", "toy:2"]);
    assert!(err.is_empty());
}

#[test]
fn verify_reports_presentation_conditions() {
    let (code, out, _) = spanfact(&["verify", "--fixture", "morris", "--format", "json-lines"]);
    assert_eq!(code, 0);
    let records = parse_json_lines(&out).unwrap();
    let conditions: Vec<_> = records
        .iter()
        .filter(|r| r.get("kind") == Some(&json!("condition")))
        .collect();
    assert_eq!(conditions.len(), 4);
    assert!(conditions.iter().all(|r| r.get("holds") == Some(&json!(true))));
    let kernel = records
        .iter()
        .find(|r| r.get("kind") == Some(&json!("local-action-kernel")))
        .unwrap();
    assert_eq!(kernel.get("order"), Some(&json!(2)));
    assert_eq!(kernel.get("normal"), Some(&json!(false)));
}
