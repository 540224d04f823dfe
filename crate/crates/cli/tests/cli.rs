use std::fs;
use std::process::{Command, Output};

use tempfile::tempdir;

fn revca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn normal_form_of_rotated_broom() {
    let o = revca(&["wreath", "nf", "--word", "rot p:(1 2 3)", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(rot 1; [(), (), (1 2 3)])");
}

#[test]
fn act_uses_one_based_points() {
    let o = revca(&["wreath", "act", "--word", "p:(1 2 3)", "--tuple", "1 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2 3");
}

#[test]
fn two_sided_verification_passes() {
    let o = revca(&["verify", "two-sided", "--max-word", "3", "--max-block", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn identity_check_fails_on_nontrivial_word() {
    let o = revca(&[
        "wreath",
        "identity",
        "--word",
        "p:(1 2 3)",
        "--sizes",
        "1..4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = revca(&[
        "wreath", "identity", "--word", "rot rot'", "--sizes", "2,3,5",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn determinant_and_inverse() {
    let dir = tempdir().unwrap();
    let m = dir.path().join("m.json");
    fs::write(&m, r#"[["1 + x", "x"], ["1", "1"]]"#).unwrap();
    let m = m.to_str().unwrap();
    let o = revca(&["linca", "det", "--matrix", m, "--field", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1@F2");
    let o = revca(&["linca", "invert", "--matrix", m, "--field", "2"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"[["1@F2","x@F2"],["1@F2","1 + x@F2"]]"#
    );

    let singular = dir.path().join("s.json");
    fs::write(&singular, r#"[["x@F3", "1"], ["x", "1"]]"#).unwrap();
    let o = revca(&["linca", "invert", "--matrix", singular.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn linear_rule_round_trip_through_files() {
    let dir = tempdir().unwrap();
    let m = dir.path().join("m.json");
    let rule = dir.path().join("rule.json");
    let lin = dir.path().join("lin.json");
    fs::write(&m, r#"[["1 + x@F2", "x"], ["1", "1"]]"#).unwrap();
    let o = revca(&[
        "linca",
        "toca",
        "--matrix",
        m.to_str().unwrap(),
        "--rule-out",
        rule.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(&lin, stdout(&o)).unwrap();

    let o = revca(&["ca", "injective", "--rule", rule.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "injective: true");
    let o = revca(&["linca", "tomatrix", "--ca", lin.to_str().unwrap()]);
    assert_eq!(
        stdout(&o).trim(),
        r#"[["1 + x@F2","x@F2"],["1@F2","1@F2"]]"#
    );
}

#[test]
fn compose_with_inverse_is_identity() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("id.json");
    let o = revca(&[
        "ca",
        "compose",
        "--outer",
        "builtin:frot-inv",
        "--inner",
        "builtin:frot",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = revca(&[
        "ca",
        "order",
        "--rule",
        out.to_str().unwrap(),
        "--kmax",
        "1",
    ]);
    assert_eq!(stdout(&o).trim(), "order 1");
}

#[test]
fn pgm_diagram_header() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("d.pgm");
    let o = revca(&[
        "ca",
        "run",
        "--rule",
        "builtin:drive",
        "--config",
        "0 0 1 2",
        "--steps",
        "5",
        "--format",
        "pgm",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[..3], &["P2", "4 5", "7"]);
    assert_eq!(lines.len(), 8);
}

#[test]
fn window_diagram_is_cropped() {
    let config = vec!["0"; 50].join(" ");
    let o = revca(&[
        "ca",
        "run",
        "--rule",
        "builtin:drive",
        "--window",
        "--config",
        &config,
        "--steps",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.split_whitespace().count() == 12));
}

#[test]
fn unbordered_trace_word_of_length_four() {
    let o = revca(&["wreath", "unbordered", "--len", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("word: 0 0 0 1"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    for args in [
        vec!["ca", "injective", "--rule", bad.to_str().unwrap()],
        vec!["wreath", "nf", "--word", "p:(1 2", "--n", "3"],
        vec!["ca", "apply", "--rule", "builtin:nope", "--config", "0"],
        vec!["linca", "det", "--matrix", bad.to_str().unwrap()],
        vec!["perm", "order", "--p", "(1 9)"],
        vec!["wreath", "frobnicate"],
    ] {
        assert_eq!(revca(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_revca"))
        .args(["verify", "exponent"])
        .env("REVCA_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_revca"))
        .args(["verify", "exponent"])
        .env("REVCA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
