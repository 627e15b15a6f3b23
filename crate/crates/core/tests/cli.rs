//! End-to-end tests of the `vknot` binary: documented outputs, exit codes,
//! batch input, environment overrides, and byte determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn vknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vknot"))
        .args(args)
        .env_remove("GAUSS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn compute_emits_the_documented_knot_json() {
    let out = vknot(&["compute", "knot: O1+ O2+ U1+ U2+", "--json"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        concat!(
            r#"{"wr":2,"J":2,"Q":2,"writhe_poly":{"modulus":0,"terms":[[0,1],[2,1]]},"#,
            r#""affine_index_poly":{"modulus":0,"terms":[[-1,1],[0,-2],[1,1]]},"#,
            r#""f":{"0":{"modulus":0,"terms":[[0,1],[2,1]]}}}"#,
            "\n"
        )
    );
}

#[test]
fn compute_prints_half_integer_linking_numbers_as_fractions() {
    let out = vknot(&["compute", "link: O1+ / U1+"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lk = 1/2"), "{text}");
    assert!(text.contains("span = 1"), "{text}");
    assert!(text.contains("linking_poly = 0"), "{text}");
}

#[test]
fn bad_diagrams_exit_one_with_an_invalid_diagram_message() {
    let out = vknot(&["compute", "knot: O1+ O1+"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr(&out), "InvalidDiagram: id 1 has two O tokens\n");
}

#[test]
fn bad_syntax_exits_one_with_a_parse_error_message() {
    let out = vknot(&["compute", "knot O1+ U1+"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("ParseError:"), "{}", stderr(&out));
}

#[test]
fn unknown_flags_are_input_errors() {
    let out = vknot(&["compute", "--frobnicate", "knot:"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn transforms_print_the_documented_codes() {
    let mirror = vknot(&["transform", "mirror", "knot: O1+ O2+ U1+ U2+"]);
    assert_eq!(stdout(&mirror), "knot: O1- O2- U1- U2-\n");

    let closure = vknot(&["transform", "closure", "long: O1+ U1+"]);
    assert_eq!(stdout(&closure), "knot: O1+ U1+\n");

    let descending = vknot(&["transform", "descending", "flatlong: O1+ O2+ U1+ U2+"]);
    assert_eq!(stdout(&descending), "long: O1+ O2+ U1+ U2+\n");
}

#[test]
fn transform_kind_mismatch_exits_one() {
    let out = vknot(&["transform", "closure", "knot: O1+ U1+"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("only defined for long diagrams"));
}

#[test]
fn resolve_and_connect_take_their_extra_arguments() {
    let resolved = vknot(&[
        "transform",
        "resolve",
        "flatlong: O1+ O2+ U1+ U2+",
        "--choices",
        "uo",
    ]);
    assert_eq!(stdout(&resolved), "long: U1- O2+ O1- U2+\n");

    let missing = vknot(&["transform", "resolve", "flatlong: O1+ U1+"]);
    assert_eq!(missing.status.code(), Some(1));

    let sum = vknot(&[
        "transform",
        "connect",
        "knot: O1+ U1+",
        "--with",
        "knot: O1+ U1+",
        "--at",
        "0",
        "--at2",
        "0",
    ]);
    assert_eq!(stdout(&sum), "knot: O1+ U2+ O2+ U1+\n");

    let stray = vknot(&["transform", "mirror", "knot: O1+ U1+", "--with", "knot:"]);
    assert_eq!(stray.status.code(), Some(1));
}

#[test]
fn fuzz_with_zero_trials_passes_with_an_empty_report() {
    let out = vknot(&["fuzz", "--trials", "0", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["trials"], 0);
    assert_eq!(report["failures"], serde_json::json!([]));
}

#[test]
fn fuzz_runs_are_reproducible_byte_for_byte() {
    let args = [
        "fuzz",
        "--kind",
        "link",
        "--seed",
        "3",
        "--trials",
        "15",
        "--steps",
        "8",
        "--max-chords",
        "6",
        "--json",
    ];
    let a = vknot(&args);
    let b = vknot(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn gauss_seed_overrides_the_seed_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_vknot"))
        .args([
            "fuzz", "--seed", "1", "--trials", "2", "--steps", "3", "--json",
        ])
        .env("GAUSS_SEED", "42")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["seed"], 42);

    let bad = Command::new(env!("CARGO_BIN_EXE_vknot"))
        .args(["fuzz", "--trials", "1"])
        .env("GAUSS_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn file_batches_emit_a_json_array_and_skip_comments() {
    let path = std::env::temp_dir().join(format!("vknot-batch-{}.txt", std::process::id()));
    std::fs::write(
        &path,
        "# a comment\nknot: O1+ O2+ U1+ U2+\n\nknot: O1+ U1+\n",
    )
    .unwrap();
    let out = vknot(&[
        "compute",
        "--file",
        path.to_str().unwrap(),
        "--json",
        "--invariants",
        "wr,J",
    ]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[{\"wr\":2,\"J\":2},{\"wr\":1,\"J\":0}]\n");
}

#[test]
fn stdin_is_the_default_batch_source() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vknot"))
        .args(["compute", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"link: O1+ / U1+\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("[{\"two_lk\":1,\"lk\":\"1/2\""), "{text}");
}

#[test]
fn inline_code_with_file_flag_is_rejected() {
    let out = vknot(&["compute", "knot: O1+ U1+", "--file", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not both"));
}

#[test]
fn unknown_invariant_selection_exits_one() {
    let out = vknot(&["compute", "knot: O1+ U1+", "--invariants", "span"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("unknown invariant"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn compare_distinguishes_equal_and_different_diagrams() {
    let equal = vknot(&["compare", "knot: O1+ O2+ U1+ U2+", "knot: O2+ O1+ U2+ U1+"]);
    assert_eq!(equal.status.code(), Some(0));
    assert!(stdout(&equal).contains("identical diagrams"));

    let different = vknot(&[
        "compare",
        "knot: O1+ O2+ U1+ U2+",
        "knot: O1+ U1+",
        "--json",
    ]);
    assert_eq!(different.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout(&different)).unwrap();
    assert_eq!(report["equal"], false);

    let mismatch = vknot(&["compare", "knot: O1+ U1+", "link: O1+ / U1+"]);
    assert_eq!(mismatch.status.code(), Some(1));
}
