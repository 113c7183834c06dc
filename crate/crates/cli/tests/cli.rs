use std::process::{Command, Output};

use graded_pi_cli::Report;

fn gpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpi")).args(args).output().expect("gpi runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_path(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gpi-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn list_shows_suite() {
    let o = gpi(&["list"]);
    assert!(o.status.success());
    for id in ["grassmann-e6", "pauli-m2", "degree3-m3", "formanek-p", "twisted-klein", "bn-e4"] {
        assert!(stdout(&o).contains(id), "{id}");
    }
}

#[test]
fn run_pauli_m2() {
    let o = gpi(&["run", "pauli-m2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("conclusion = refutes-primeness"));
}

#[test]
fn run_degree3() {
    let o = gpi(&["run", "degree3-m3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("triples = 27"));
}

#[test]
fn run_unknown() {
    let o = gpi(&["run", "nosuch"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("unknown scenario"));
}

#[test]
fn json_report_round_trips() {
    let path = temp_path("grassmann-e6.json");
    let o = gpi(&["run", "grassmann-e6", "--json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let file = std::fs::read_to_string(&path).unwrap();
    let report = Report::from_json(&file).unwrap();
    assert_eq!(Report::from_json(&stdout(&o)).unwrap().steps.len(), report.steps.len());
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    assert_eq!(report.scenario, "grassmann-e6");
    assert!(report.passed());
    let analyze = &report.steps[0];
    assert_eq!(analyze.op, "analyze");
    assert_eq!(analyze.actual["det"], "-2");
    assert!(report.steps.iter().all(|s| !s.anchor.is_empty()));
}

#[test]
fn failing_scenario_exits_nonzero() {
    let path = temp_path("bad.json");
    let text = r#"{
        "id": "bad",
        "description": "expects the wrong verdict",
        "algebra": {"kind": "pauli", "n": 2},
        "steps": [
            {"run": {"op": "check", "poly": "x1{(1,0)}"}, "expect": {"central": "true"}, "anchor": "deliberately wrong"},
            {"run": {"op": "analyze"}, "expect": {"minimal": "true"}, "anchor": "Pauli is minimal"}
        ]
    }"#;
    std::fs::write(&path, text).unwrap();
    let o = gpi(&["run", path.to_str().unwrap(), "--parallel"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1/2 steps passed"));
}

#[test]
fn malformed_scenario_reports_location() {
    let path = temp_path("broken.json");
    std::fs::write(&path, "{\n  \"id\": \"x\",\n  \"steps\": [\n}").unwrap();
    let o = gpi(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn check_grassmann_product() {
    let o = gpi(&["check", "--algebra", r#"{"kind":"grassmann","k":4}"#, "--poly", "x1{1}*x2{1}", "--mode", "central"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("central, proper"));
}

#[test]
fn check_pauli_component() {
    let o = gpi(&["check", "--algebra", r#"{"kind":"pauli","n":2}"#, "--poly", "x1{(1,0)}", "--mode", "central"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("not central"));
    assert!(out.contains("witness"));
}

#[test]
fn check_rejects_foreign_degree() {
    let o = gpi(&["check", "--algebra", r#"{"kind":"grassmann","k":2}"#, "--poly", "x1{(1,0)}"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn check_reads_algebra_file() {
    let path = temp_path("e3.json");
    std::fs::write(&path, r#"{"kind": "grassmann", "k": 3}"#).unwrap();
    let o = gpi(&["check", "--algebra", path.to_str().unwrap(), "--poly", "[x1{0},x2{1}]", "--mode", "identity"]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn analyze_grassmann() {
    let o = gpi(&["analyze", "--algebra", r#"{"kind":"grassmann","k":6}"#, "--nmax", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in ["verdict: regular-up-to(6)", "beta: [[1,1],[1,-1]]", "det M^A: -2", "minimal: true", "G0: {0}"] {
        assert!(out.contains(line), "{line} in {out}");
    }
}

#[test]
fn analyze_elementary_not_regular() {
    let o = gpi(&["analyze", "--algebra", r#"{"kind":"elementary","group":"Z2","tuple":["0","1"]}"#]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("verdict: not-regular"), "{out}");
    assert!(out.contains("witness"));
}

#[test]
fn analyze_tensor_coarsening() {
    let spec = r#"{"kind":"tensor","left":{"kind":"grassmann","k":4},"right":{"kind":"twisted","group":"Z2","cocycle":"trivial"}}"#;
    let o = gpi(&["analyze", "--algebra", spec, "--nmax", "4", "--json"]);
    assert!(o.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["minimal"], false);
    assert_eq!(cert["coarsening"]["quotient"], "Z2");
    assert_eq!(cert["coarsening"]["minimal"], true);
}
