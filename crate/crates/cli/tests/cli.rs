use std::process::{Command, Output};

fn treelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_prints_both_sides() {
    let o = treelab(&["verify", "stanley", "--params", "n=2,z=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "lhs = 13\nrhs = 13\nverified\n");
}

#[test]
fn verify_leaves_unset_formal_parameters_free() {
    let o = treelab(&["verify", "hz-equivalence", "--params", "n=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("lhs = 2*x^3 + x\n"));
}

#[test]
fn unknown_identity_is_a_usage_error() {
    let o = treelab(&["verify", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(treelab(&["table", "fibonacci", "--max", "3"]).status.code(), Some(2));
    assert_eq!(treelab(&["sweep", "stanley", "--w", "0..2"]).status.code(), Some(2));
    assert_eq!(treelab(&["sweep", "stanley", "--n", "3..1"]).status.code(), Some(2));
    assert_eq!(treelab(&["verify", "stanley", "--params", "n=1/2,z=1"]).status.code(), Some(2));
    assert_eq!(treelab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn schroeder_table() {
    let o = treelab(&["table", "schroeder", "--max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split_once(',').unwrap().1.to_string()).collect();
    assert_eq!(rows, ["0,1", "1,2", "2,6", "3,22"]);
}

#[test]
fn table_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n.csv");
    let o = treelab(&["table", "narayana", "--max", "3", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("name,"));
    assert!(text.lines().count() > 1);
}

#[test]
fn sweep_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = treelab(&["sweep", "stanley", "--n", "0..8", "--z", "-3..3", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "stanley: 63 points, verified\n");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["status"], "verified");
    assert_eq!(v["points"], 63);
    assert!(v["ms"].is_u64());
}

#[test]
fn counterexamples_exit_one() {
    let o = treelab(&["sweep", "t-recurrence", "--n", "1..3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("n=2: lhs = 648, rhs = 792"));
}

#[test]
fn enumerate_streams_members() {
    let o = treelab(&["enumerate", "gamma", "--n", "1", "--x", "0", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "() 2 1\n");
    let o = treelab(&["enumerate", "plane", "--edges", "3"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn roundtrip_suite() {
    let o = treelab(&["bijection", "roundtrip", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("n=3: 120 trees, 120 match sets, 0 failures\n"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["sweep", "t-recurrence"][..],
        &["enumerate", "gamma", "--n", "2", "--x", "1", "--q", "1"],
        &["report", "5"],
    ] {
        assert_eq!(treelab(args).stdout, treelab(args).stdout, "{args:?}");
    }
}

#[test]
fn single_criterion_report() {
    let o = treelab(&["report", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[PASS]  5."));
    assert_eq!(treelab(&["report", "11"]).status.code(), Some(2));
}

#[test]
fn full_report_exit_code_tracks_criteria() {
    let o = treelab(&["report", "all"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(lines.len(), 10);
    let all_pass = lines.iter().all(|l| l.starts_with("[PASS]"));
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 1 }));
}
