//! End-to-end tests of the command-line interface and its exit-code contract.

mod common;

use std::path::Path;
use std::process::{Command, Output};

use contextuality::format::{system_to_file, to_json_string};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_contextuality"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn write_system(dir: &Path, name: &str, system: &contextuality::System) -> String {
    let path = dir.join(name);
    std::fs::write(&path, to_json_string(&system_to_file(system))).unwrap();
    path.to_str().unwrap().to_string()
}

const LIAR3_CONSTRAINTS: &str = r#"{
  "contents": ["q1", "q2", "q3"],
  "contexts": [
    {"id": "c1", "contents": ["q1", "q2"], "allowed": ["++", "--"]},
    {"id": "c2", "contents": ["q2", "q3"], "allowed": ["++", "--"]},
    {"id": "c3", "contents": ["q3", "q1"], "allowed": ["+-", "-+"]}
  ],
  "prior": "uniform"
}"#;

#[test]
fn check_reports_connectedness_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let c22 = write_system(dir.path(), "c22.json", &common::c22());
    let output = run(&["check", &c22]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("simply consistently connected:   no"), "{text}");
    assert!(text.contains("strongly consistently connected: no"), "{text}");
    assert!(text.contains("deterministic:                   yes"), "{text}");

    let c21 = write_system(dir.path(), "c21.json", &common::c21());
    let output = run(&["check", &c21]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("simply consistently connected:   yes"), "{text}");
    assert!(text.contains("deterministic:                   yes"), "{text}");
}

#[test]
fn check_rejects_malformed_pmf_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{
  "contents": ["q"],
  "contexts": [{"id": "c", "contents": ["q"], "pmf": {"+": "1/2", "-": "1/3"}}]
}"#,
    )
    .unwrap();
    let output = run(&["check", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8(output.stderr).unwrap().contains("sum"));
}

#[test]
fn fraction_on_the_liar_mixture_pipeline() {
    // bayes -> fraction with no hand edits in between.
    let dir = tempfile::tempdir().unwrap();
    let constraints = dir.path().join("liar3.json");
    std::fs::write(&constraints, LIAR3_CONSTRAINTS).unwrap();
    let mixture = dir.path().join("mixture.json");

    let output = run(&[
        "bayes",
        constraints.to_str().unwrap(),
        "-o",
        mixture.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8(output.stderr)
        .unwrap()
        .contains("realizations: 8"));

    let output = run(&["fraction", mixture.to_str().unwrap(), "--json"]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["fraction"]["alpha_max"], "0");
    assert_eq!(report["fraction"]["contextual_fraction"], "1");
    assert_eq!(report["fraction"]["strongly_contextual"], true);
    assert_eq!(report["mode"], "consistified");
}

#[test]
fn fraction_verdicts_for_fixed_systems() {
    let dir = tempfile::tempdir().unwrap();
    let c22 = write_system(dir.path(), "c22.json", &common::c22());
    let output = run(&["fraction", &c22, "--json"]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["fraction"]["alpha_max"], "1");
    assert_eq!(report["fraction"]["noncontextual"], true);

    let pr = write_system(dir.path(), "pr.json", &common::pr_box());
    let output = run(&["fraction", &pr, "--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["fraction"]["alpha_max"], "0");
}

#[test]
fn fraction_direct_requires_consistent_connectedness() {
    let dir = tempfile::tempdir().unwrap();
    let c22 = write_system(dir.path(), "c22.json", &common::c22());
    let output = run(&["fraction", &c22, "--direct"]);
    assert_eq!(output.status.code(), Some(4));

    let pr = write_system(dir.path(), "pr.json", &common::pr_box());
    let output = run(&["fraction", &pr, "--direct", "--json"]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["fraction"]["alpha_max"], "0");
    assert_eq!(report["mode"], "direct");
}

#[test]
fn fraction_respects_the_column_cap() {
    let dir = tempfile::tempdir().unwrap();
    let pr = write_system(dir.path(), "pr.json", &common::pr_box());
    // The consistified rank-2 system needs 16 columns.
    let output = run(&["fraction", &pr, "--max-columns", "8"]);
    assert_eq!(output.status.code(), Some(3));
    let output = run(&["fraction", &pr, "--max-columns", "16"]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn fraction_json_is_byte_stable_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let pr = write_system(dir.path(), "pr.json", &common::pr_box());
    let first = stdout(&run(&["fraction", &pr, "--json"]));
    let second = stdout(&run(&["fraction", &pr, "--json"]));
    assert_eq!(first, second);
    let mixture = write_system(dir.path(), "m.json", &common::liar3_mixture());
    let first = stdout(&run(&["fraction", &mixture, "--json"]));
    let second = stdout(&run(&["fraction", &mixture, "--json"]));
    assert_eq!(first, second);
}

#[test]
fn consistify_round_trips_and_preserves_the_fraction() {
    let dir = tempfile::tempdir().unwrap();
    let pr = write_system(dir.path(), "pr.json", &common::pr_box());
    let out = dir.path().join("pr_consistified.json");
    let output = run(&["consistify", &pr, "-o", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));

    let text = std::fs::read_to_string(&out).unwrap();
    let file: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(file["contents"].as_array().unwrap().len(), 4);
    assert_eq!(file["contexts"].as_array().unwrap().len(), 4);
    assert!(file["origin"].is_object());
    assert!(file["context_kinds"].is_object());

    // The output re-parses as a system whose fraction matches the input's.
    let original: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["fraction", &pr, "--json"]))).unwrap();
    let consistified: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["fraction", out.to_str().unwrap(), "--json"])))
            .unwrap();
    assert_eq!(
        original["fraction"]["alpha_max"],
        consistified["fraction"]["alpha_max"]
    );
}

#[test]
fn couple_prints_atoms_and_equalities() {
    let dir = tempfile::tempdir().unwrap();
    // Three contexts giving the connection marginals (3/4, 1/2, 1/4).
    let system = contextuality::System::builder()
        .contents(["q", "r"])
        .context("c1", ["q", "r"], &[("++", "3/4"), ("--", "1/4")])
        .context("c2", ["q", "r"], &[("++", "1/2"), ("--", "1/2")])
        .context("c3", ["q", "r"], &[("++", "1/4"), ("--", "3/4")])
        .build()
        .unwrap();
    let path = write_system(dir.path(), "conn.json", &system);
    let output = run(&["couple", &path, "--content", "q"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("+++  1/4"), "{text}");
    assert!(text.contains("---  1/4"), "{text}");
    assert!(text.contains("Pr[c1 = c3] = 1/2"), "{text}");
    assert!(text.contains("chain equality: 1/2"), "{text}");

    let output = run(&["couple", &path, "--content", "nope"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn bayes_reports_empty_families_with_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("contradiction.json");
    std::fs::write(
        &path,
        r#"{
  "contents": ["q1", "q2"],
  "contexts": [
    {"id": "c", "contents": ["q1", "q2"], "allowed": []}
  ]
}"#,
    )
    .unwrap();
    let output = run(&["bayes", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(5));
}

#[test]
fn bayes_accepts_explicit_priors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("weighted.json");
    std::fs::write(
        &path,
        r#"{
  "contents": ["q"],
  "contexts": [{"id": "c", "contents": ["q"], "allowed": ["+", "-"]}],
  "prior": ["2/3", "1/3"]
}"#,
    )
    .unwrap();
    let output = run(&["bayes", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    // Prior weights follow the enumeration order: tuples ascending with
    // `-` before `+`, so 2/3 goes to the all-minus realization.
    let mixture: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(mixture["contexts"][0]["pmf"]["-"], "2/3");
    assert_eq!(mixture["contexts"][0]["pmf"]["+"], "1/3");

    // Wrong prior length is a validation failure.
    std::fs::write(
        &path,
        r#"{
  "contents": ["q"],
  "contexts": [{"id": "c", "contents": ["q"], "allowed": ["+", "-"]}],
  "prior": ["1"]
}"#,
    )
    .unwrap();
    let output = run(&["bayes", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn bayes_rejects_system_files() {
    let dir = tempfile::tempdir().unwrap();
    let pr = write_system(dir.path(), "pr.json", &common::pr_box());
    let output = run(&["bayes", &pr]);
    assert_eq!(output.status.code(), Some(2));
}
