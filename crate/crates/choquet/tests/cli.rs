//! End-to-end checks of the command-line binary: exit-code discipline
//! (0 = ok, 1 = property violation, 2 = input error), output schemas,
//! byte-level determinism, and the verify/replay loop.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::{json, Value};
use tempfile::TempDir;

use choquet::generators::split_cover_system;
use choquet::io::{system_json, valuation_json};
use choquet::rational::rat;
use choquet::set_system::ElemSet;
use choquet::valuation::Valuation;

/// Containment order on {1}, {2}, {1,2}; the two-element analogue of the
/// full power set.
const SQUARE: &str = r#"{ "ground": ["1", "2"],
  "family": [["1"], ["2"], ["1", "2"]],
  "order": "containment" }"#;

/// v({1}) = 2, v({2}) = 3, v(N) = 5 — additive, hence a belief.
const SQUARE_ADDITIVE: &str = r#"{ "values": { "0": "2", "1": "3", "2": "5" } }"#;

/// The simple function of {1,2}: 1 on the full set, 0 below.
const SQUARE_ZETA_TOP: &str = r#"{ "values": { "2": "1" } }"#;

const SQUARE_F: &str = r#"{ "values": { "1": "3", "2": "5" } }"#;
const SQUARE_F_NEGATIVE: &str = r#"{ "values": { "1": "-1", "2": "2" } }"#;

/// Two overlapping pairs that the trivial order keeps incomparable — the
/// canonical system on which greedy certification must refuse.
const TWO_PAIRS: &str = r#"{ "ground": ["1", "2", "3"],
  "family": [["1", "2"], ["2", "3"]],
  "order": "trivial" }"#;
const TWO_PAIRS_ONES: &str = r#"{ "values": { "0": "1", "1": "1" } }"#;
const TWO_PAIRS_F: &str = r#"{ "values": { "1": "2", "2": "1", "3": "2" } }"#;

/// Two-atom algebra {1} | {2,3} and a probability putting 1/3 on {1}.
const ALGEBRA: &str = r#"{ "ground": ["1", "2", "3"],
  "family": [["1"], ["2", "3"], ["1", "2", "3"]],
  "order": "containment" }"#;
const ALGEBRA_P: &str = r#"{ "values": { "0": "1/3", "1": "2/3", "2": "1" } }"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("fixture writes");
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_choquet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn integrate_reports_the_exact_value_with_certificates() {
    let dir = TempDir::new().expect("tempdir");
    let sys = write(dir.path(), "sys.json", SQUARE);
    let v = write(dir.path(), "v.json", SQUARE_ADDITIVE);
    let f = write(dir.path(), "f.json", SQUARE_F);

    let out = run(&[
        "integrate",
        sys.to_str().unwrap(),
        v.to_str().unwrap(),
        f.to_str().unwrap(),
        "--method",
        "lp",
        "--certificates",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    let value = stdout_json(&out);
    assert_eq!(value["command"], json!("integrate"));
    assert_eq!(value["method"], json!("lp"));
    assert_eq!(value["value"]["exact"], json!("21"));
    assert_eq!(value["value"]["approx"], json!("21"));
    assert!(
        value["certificates"]["packing_vector"].is_array(),
        "certificates must carry the packing vector"
    );
    assert!(
        value["certificates"]["core_program"].is_object(),
        "belief integrations must expose the core program solution"
    );
}

#[test]
fn integrate_simple_function_hits_the_minimum_over_the_member() {
    let dir = TempDir::new().expect("tempdir");
    let sys = write(dir.path(), "sys.json", SQUARE);
    let v = write(dir.path(), "v.json", SQUARE_ZETA_TOP);
    let f = write(dir.path(), "f.json", SQUARE_F);

    let out = run(&[
        "integrate",
        sys.to_str().unwrap(),
        v.to_str().unwrap(),
        f.to_str().unwrap(),
        "--method",
        "auto",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    // min over {1,2} of f = (3,5) is 3; auto routes to the greedy because
    // the square is weakly union-closed under containment.
    assert_eq!(value["value"]["exact"], json!("3"));
    assert_eq!(value["method"], json!("monge"));
}

#[test]
fn monge_method_refuses_where_certification_fails() {
    let dir = TempDir::new().expect("tempdir");
    let sys = write(dir.path(), "sys.json", TWO_PAIRS);
    let v = write(dir.path(), "v.json", TWO_PAIRS_ONES);
    let f = write(dir.path(), "f.json", TWO_PAIRS_F);

    let refused = run(&[
        "integrate",
        sys.to_str().unwrap(),
        v.to_str().unwrap(),
        f.to_str().unwrap(),
        "--method",
        "monge",
    ]);
    assert_eq!(refused.status.code(), Some(1), "refusal is a property violation");
    let message = stderr_text(&refused);
    assert!(
        message.contains("certification failed"),
        "refusal must name the certification failure, got: {message}"
    );

    let unchecked = run(&[
        "integrate",
        sys.to_str().unwrap(),
        v.to_str().unwrap(),
        f.to_str().unwrap(),
        "--method",
        "monge",
        "--unchecked",
        "--format",
        "json",
    ]);
    assert_eq!(unchecked.status.code(), Some(0));
    let value = stdout_json(&unchecked);
    assert_eq!(
        value["value"]["exact"],
        json!("1"),
        "unchecked greedy reports its own (non-integral) value"
    );
}

#[test]
fn negative_weightings_need_the_shift_rule() {
    let dir = TempDir::new().expect("tempdir");
    let sys = write(dir.path(), "sys.json", SQUARE);
    let v = write(dir.path(), "v.json", SQUARE_ADDITIVE);
    let f = write(dir.path(), "f.json", SQUARE_F_NEGATIVE);

    let rejected = run(&[
        "integrate",
        sys.to_str().unwrap(),
        v.to_str().unwrap(),
        f.to_str().unwrap(),
    ]);
    assert_eq!(rejected.status.code(), Some(2), "negative f without --shift is an input error");
    assert!(stderr_text(&rejected).contains("--shift"));

    let shifted = run(&[
        "integrate",
        sys.to_str().unwrap(),
        v.to_str().unwrap(),
        f.to_str().unwrap(),
        "--shift",
        "--format",
        "json",
    ]);
    assert_eq!(shifted.status.code(), Some(0), "stderr: {}", stderr_text(&shifted));
    let value = stdout_json(&shifted);
    // Additive valuations price shifts exactly: ∫(-1,2) d(2,3,5) = 4.
    assert_eq!(value["value"]["exact"], json!("4"));
    assert_eq!(value["shift"]["lambda"]["exact"], json!("1"));
    assert_eq!(value["shift"]["shift_dependent"], json!(false));

    let wrong_method = run(&[
        "integrate",
        sys.to_str().unwrap(),
        v.to_str().unwrap(),
        f.to_str().unwrap(),
        "--shift",
        "--method",
        "classical",
    ]);
    assert_eq!(wrong_method.status.code(), Some(2), "--shift needs the LP route");
}

#[test]
fn usage_errors_exit_with_two() {
    let unknown_suite = run(&["verify", "no-such-suite"]);
    assert_eq!(unknown_suite.status.code(), Some(2));

    let unknown_flag = run(&["classify", "--no-such-flag"]);
    assert_eq!(unknown_flag.status.code(), Some(2));

    let missing_file = run(&["classify", "/nonexistent/system.json"]);
    assert_eq!(missing_file.status.code(), Some(2));
    assert!(stderr_text(&missing_file).starts_with("error:"));
}

#[test]
fn verify_passes_and_is_byte_deterministic() {
    let args = ["verify", "mobius", "--trials", "12", "--seed", "9", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(
        first.stdout, second.stdout,
        "same seed and config must give byte-identical output"
    );
    let report = stdout_json(&first);
    assert_eq!(report["reports"][0]["suite"], json!("mobius"));
    assert_eq!(report["reports"][0]["passed"], json!(true));

    let text_mode = run(&["verify", "mobius", "--trials", "12", "--seed", "9"]);
    assert_eq!(text_mode.status.code(), Some(0));
    assert!(stdout_text(&text_mode).contains("PASS"));
}

#[test]
fn integrate_is_byte_deterministic() {
    let dir = TempDir::new().expect("tempdir");
    let sys = write(dir.path(), "sys.json", SQUARE);
    let v = write(dir.path(), "v.json", SQUARE_ADDITIVE);
    let f = write(dir.path(), "f.json", SQUARE_F);
    let args = [
        "integrate",
        sys.to_str().unwrap(),
        v.to_str().unwrap(),
        f.to_str().unwrap(),
        "--certificates",
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn replay_reproduces_a_failure_and_clears_a_passing_instance() {
    // A hand-assembled instance for the extension suite on the split-cover
    // fixture. With the correct expectation (2) the replay passes; with a
    // wrong expectation (3) it must reproduce the violation and exit 1.
    let sys = split_cover_system();
    let one_two = ElemSet::from_indices([0, 1]);
    let three_five = ElemSet::from_indices([2, 4]);
    let full = ElemSet::full(5);
    let values = (0..sys.m())
        .map(|i| {
            let s = sys.set(i);
            if s == full || s == one_two || s == three_five {
                rat(1)
            } else {
                rat(0)
            }
        })
        .collect();
    let v = Valuation::new(Arc::clone(&sys), values).expect("length matches");

    let instance = |expected: &str| {
        json!({
            "suite": "extension",
            "trial": 0,
            "detail": "hand-assembled replay fixture",
            "system": system_json(&sys),
            "valuation": valuation_json(&v),
            "valuation2": null,
            "weighting": null,
            "weighting2": null,
            "lambda": null,
            "expected": expected,
        })
    };

    let dir = TempDir::new().expect("tempdir");
    let passing = write(dir.path(), "pass.json", &instance("2").to_string());
    let failing = write(dir.path(), "fail.json", &instance("3").to_string());

    let ok = run(&["verify", "--replay", passing.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "stderr: {}", stderr_text(&ok));
    assert!(stdout_text(&ok).contains("PASS"));

    let bad = run(&["verify", "--replay", failing.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1), "replaying a violation must exit 1");
    assert!(
        stdout_text(&bad).contains("expected 3"),
        "the reproduced violation must carry the mismatch detail"
    );
}

#[test]
fn broken_pipes_do_not_crash_the_binary() {
    // A consumer that stops reading (`choquet … | head`) must not turn
    // into a panic. The extension table on sixteen elements is far larger
    // than any pipe buffer, so closing the read end up front guarantees
    // the binary hits a broken pipe mid-write.
    let n = 16usize;
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let family: Vec<Vec<String>> =
        (1..=n).map(|k| labels[..k].to_vec()).collect();
    let system = json!({ "ground": labels, "family": family, "order": "containment" });

    let dir = TempDir::new().expect("tempdir");
    let sys = write(dir.path(), "chain.json", &system.to_string());
    let v = write(dir.path(), "v.json", r#"{ "values": { "0": "1" } }"#);

    let mut child = Command::new(env!("CARGO_BIN_EXE_choquet"))
        .args(["extend", sys.to_str().unwrap(), v.to_str().unwrap(), "--format", "json"])
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .expect("binary spawns");
    drop(child.stdout.take());
    let status = child.wait().expect("binary exits");
    assert_eq!(status.code(), Some(0), "a closed pipe is not an error");
}

#[test]
fn classify_reports_structure_flags() {
    let dir = TempDir::new().expect("tempdir");
    let sys = write(dir.path(), "sys.json", TWO_PAIRS);
    let out = run(&["classify", sys.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    let structure = &value["structure"];
    assert_eq!(structure["weakly_union_closed"]["holds"], json!(false));
    assert_eq!(structure["trivially_ordered"]["holds"], json!(true));
    assert_eq!(structure["algebra"]["holds"], json!(false));

    let alg = write(dir.path(), "alg.json", ALGEBRA);
    let out = run(&["classify", alg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["structure"]["algebra"]["holds"], json!(true));
    assert_eq!(value["structure"]["union_closed"]["holds"], json!(true));
}

#[test]
fn mobius_decompose_extend_lehrer_and_monge_round_out_the_surface() {
    let dir = TempDir::new().expect("tempdir");
    let sys = write(dir.path(), "sys.json", SQUARE);
    let v = write(dir.path(), "v.json", SQUARE_ADDITIVE);
    let f = write(dir.path(), "f.json", SQUARE_F);

    let mobius = run(&["mobius", sys.to_str().unwrap(), v.to_str().unwrap(), "--format", "json"]);
    assert_eq!(mobius.status.code(), Some(0));
    let value = stdout_json(&mobius);
    assert_eq!(value["is_belief"], json!(true));
    assert_eq!(value["mobius"][1]["exact"], json!("2"));

    // A non-belief: raising the parts above the whole flips a coefficient.
    let skew = write(dir.path(), "skew.json", r#"{ "values": { "0": "2", "1": "3", "2": "1" } }"#);
    let decompose = run(&[
        "decompose",
        sys.to_str().unwrap(),
        skew.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(decompose.status.code(), Some(0));
    let value = stdout_json(&decompose);
    assert_eq!(value["is_belief"], json!(false));
    // Built order is [N, {1}, {2}]; β = (−4, 2, 3) splits into
    // v⁺ = (5, 2, 3) and v⁻ = (4, 0, 0).
    assert_eq!(value["v_plus"][0]["exact"], json!("5"));
    assert_eq!(value["v_minus"][0]["exact"], json!("4"));

    let extend = run(&["extend", sys.to_str().unwrap(), v.to_str().unwrap(), "--format", "json"]);
    assert_eq!(extend.status.code(), Some(0));
    let value = stdout_json(&extend);
    let table = value["extension"]["values"].as_array().expect("extension table");
    assert_eq!(table.len(), 4, "two elements give a four-row table");
    assert_eq!(value["monotone_violation"], json!(null));

    let p = write(dir.path(), "p.json", ALGEBRA_P);
    let alg = write(dir.path(), "alg.json", ALGEBRA);
    let f3 = write(dir.path(), "f3.json", TWO_PAIRS_F);
    let lehrer = run(&[
        "lehrer",
        alg.to_str().unwrap(),
        p.to_str().unwrap(),
        f3.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(lehrer.status.code(), Some(0), "stderr: {}", stderr_text(&lehrer));
    let value = stdout_json(&lehrer);
    // P({1})·f(1) + P({2,3})·min(f(2), f(3)) = 2/3 + 2/3 = 4/3.
    assert_eq!(value["value"]["exact"], json!("4/3"));

    let monge = run(&["monge", sys.to_str().unwrap(), f.to_str().unwrap(), "--format", "json"]);
    assert_eq!(monge.status.code(), Some(0));
    let value = stdout_json(&monge);
    assert_eq!(value["feasible"], json!(true));
    assert!(value["trace"]["events"].as_array().expect("events").len() >= 2);
}
