use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mla-forge"))
        .args(args)
        .current_dir(dir)
        .env_remove("MLA_FORGE_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

/// Z4 x D4 data with `a ⋆ b = b` on D4, `Γ_a = 2̃`, `Γ_b = 0̃` and trivial `β`.
fn write_case2(dir: &Path) {
    let brackets = json_of(&run(
        &["--format", "json", "enumerate", "--group", "D4"],
        dir,
    ));
    let star = brackets["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["star"].clone())
        .find(|s| s[4][1] == 1)
        .unwrap();
    let mut gamma = vec![json!([0, 0, 0, 0]); 4];
    gamma.extend(vec![json!([0, 2, 0, 2]); 4]);
    let doc = json!({
        "H": "Z4",
        "K": "D4",
        "sigma": vec![json!([0, 1, 2, 3]); 8],
        "starK": star,
        "gamma": gamma,
        "beta": vec![vec![0; 8]; 8],
    });
    std::fs::write(dir.join("case2.json"), doc.to_string()).unwrap();
}

#[test]
fn enumerate_reports_s3_classes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "--format",
            "json",
            "enumerate",
            "--group",
            "D3",
            "--up-to-iso",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["class_count"], 2);
    assert_eq!(v["raw_count"], 3);
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["items"].as_array().unwrap().len(), 2);
}

#[test]
fn enumerate_emits_bracket_files_that_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate", "--group", "Q8", "--emit", "out"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("class_count 2"));
    let files: Vec<_> = std::fs::read_dir(dir.path().join("out")).unwrap().collect();
    assert!(!files.is_empty());
    for f in files {
        let path = f.unwrap().path();
        let o = run(&["verify", "--bracket", path.to_str().unwrap()], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", path.display());
    }
}

#[test]
fn enumerate_with_ideal_restriction() {
    let dir = tempfile::tempdir().unwrap();
    let all = json_of(&run(
        &["--format", "json", "enumerate", "--group", "Z3xZ2"],
        dir.path(),
    ));
    let o = run(
        &[
            "--format",
            "json",
            "enumerate",
            "--group",
            "Z3xZ2",
            "--ideal",
            "H",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["raw_count"], all["raw_count"]);
}

#[test]
fn budget_exhaustion_has_its_own_status() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "--jobs",
            "1",
            "--node-budget",
            "3",
            "enumerate",
            "--group",
            "D4",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("exhausted false"));
}

#[test]
fn budget_is_read_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_mla-forge"))
        .args(["--jobs", "1", "enumerate", "--group", "D4"])
        .env("MLA_FORGE_BUDGET", "3")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn construction_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    write_case2(dir.path());

    let o = run(
        &["--format", "json", "verify", "--construction", "case2.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let report = json_of(&o);
    for c in ["C1", "C2", "C3", "C4", "C5", "C6"] {
        assert_eq!(report[c]["pass"], true, "{c}");
    }

    let o = run(
        &[
            "induce",
            "--construction",
            "case2.json",
            "--out",
            "case2_bracket.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--bracket", "case2_bracket.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));

    let o = run(
        &[
            "--format",
            "json",
            "decompose",
            "--group",
            "Z4xD4",
            "--bracket",
            "case2_bracket.json",
            "--ideal",
            "H",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let data = json_of(&o);
    assert_eq!(data["gamma"][4], json!([0, 2, 0, 2]));
    assert_eq!(data["gamma"][1], json!([0, 0, 0, 0]));
}

#[test]
fn failing_construction_reports_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    write_case2(dir.path());
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("case2.json")).unwrap())
            .unwrap();
    doc["gamma"] = json!([
        [0, 0, 0, 0],
        [0, 2, 0, 2],
        [0, 0, 0, 0],
        [0, 2, 0, 2],
        [0, 0, 0, 0],
        [0, 2, 0, 2],
        [0, 0, 0, 0],
        [0, 2, 0, 2]
    ]);
    std::fs::write(dir.path().join("bad.json"), doc.to_string()).unwrap();

    let o = run(
        &["--format", "json", "verify", "--construction", "bad.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let report = json_of(&o);
    assert_eq!(report["C2"]["pass"], false);
    assert!(report["C2"]["witness"].is_array());

    let o = run(&["induce", "--construction", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("C2  FAIL"));
}

#[test]
fn verify_preset_brackets() {
    let dir = tempfile::tempdir().unwrap();
    for b in ["trivial", "commutator"] {
        let o = run(&["verify", "--group", "Q8", "--bracket", b], dir.path());
        assert_eq!(o.status.code(), Some(0), "{b}");
    }
}

#[test]
fn verify_reports_group_violations() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({"name": "bad", "order": 2, "cayley": [[0, 1], [1, 1]]});
    std::fs::write(dir.path().join("bad.json"), doc.to_string()).unwrap();
    let o = run(
        &["--format", "json", "verify", "--group", "bad.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(!json_of(&o)["violations"].as_array().unwrap().is_empty());
    let o = run(&["verify", "--group", "D5"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(&["verify", "--group", "nosuch"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["induce", "--construction", "missing.json"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["enumerate"], dir.path()).status.code(), Some(2));
    assert_eq!(
        run(&["enumerate", "--group", "Z13"], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn semidirect_preset_with_action_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("inv.json"), "[[0,1,2],[0,2,1]]").unwrap();
    let o = run(
        &[
            "--format",
            "json",
            "enumerate",
            "--group",
            "Z3:Z2:sigma=inv.json",
            "--up-to-iso",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["class_count"], 2);
}

#[test]
fn scenario_catalog_runs_clean() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["scenarios"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = run(&["--format", "json", "scenarios", "--list"], dir.path());
    let names: Vec<String> = json_of(&o)
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap().to_string())
        .collect();
    assert!(names.contains(&"z4xd4".to_string()));

    let o = run(&["scenarios", "--only", "z4xd4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z2xZ4,Z4"));
}
