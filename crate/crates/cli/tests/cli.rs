use std::path::PathBuf;
use std::process::{Command, Output};

fn resbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resbound"))
        .args(args)
        .env_remove("RESBOUND_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn extremal_table_with_metadata() {
    let out = resbound(&["extremal", "--n", "1..5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let meta: serde_json::Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    assert_eq!(meta["command"], "extremal");
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert!(meta["config"]["seed"].is_u64());
    assert!(lines.next().unwrap().starts_with("n,"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn json_lines_parse() {
    let out = resbound(&["certify", "--n", "2..4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(records[0].get("meta").is_some());
    assert_eq!(records.len(), 4);
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(resbound(&["extremal", "--n", "0"]).status.code(), Some(2));
    assert_eq!(resbound(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(resbound(&["bounds", "--tol", "nonsense=1"]).status.code(), Some(2));
    assert_eq!(resbound(&["opuc-sample", "--rho", "1.5"]).status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_threads() {
    let run = |t: &str| resbound(&["bounds", "--n", "4", "--trials", "40", "--seed", "7", "--threads", t, "--format", "csv"]);
    let (a, b) = (run("1"), run("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (a, b) = (
        resbound(&["opuc-sample", "--n", "12", "--trials", "5", "--threads", "1"]),
        resbound(&["opuc-sample", "--n", "12", "--trials", "5", "--threads", "2"]),
    );
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_dir_receives_default_and_relative_files() {
    let dir = scratch("out_dir");
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_resbound"))
            .args(["extremal", "--n", "3"])
            .args(extra)
            .env("RESBOUND_OUT_DIR", &dir)
            .output()
            .unwrap()
    };
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(dir.join("extremal.jsonl")).unwrap().starts_with("{\"meta\""));
    run(&["--out", "sub/table.csv", "--format", "csv"]);
    assert!(std::fs::read_to_string(dir.join("sub/table.csv")).unwrap().starts_with("# {"));
}

#[test]
fn verify_all_runs_selected_criteria() {
    let out = resbound(&["verify-all", "--criteria", "1,2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("1,") || l.starts_with("2,")).count(), 2);
}
