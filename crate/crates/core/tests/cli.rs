use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sginertia"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn compute_reports_exact_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c6.txt", "6 6\n0 1 +\n1 2 +\n2 3 +\n3 4 +\n4 5 +\n0 5 +\n");
    let out = run(&["compute", &path, "--json", "--no-meta"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["invariants"]["girth"], 6);
    assert_eq!(v["invariants"]["det"], "-4");
    assert_eq!(v["invariants"]["inertia"]["i_minus"], 3);
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.txt", "3 1\n0 0 +\n");
    let out = run(&["compute", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["verify", "3.3", "--max-n", "40"]).status.code(), Some(2));
}

#[test]
fn generated_graphs_round_trip_through_compute() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    let file = file.to_string_lossy();
    let gen = run(&["generate", "gamma", "6", "--param", "a=1", "--out", &file]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    let out = run(&["compute", &file, "--json", "--classify", "--no-meta"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["invariants"]["inertia"]["i_minus"], 4);
    let tags: Vec<&str> = v["classification"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|c| c["tag"].as_str())
        .collect();
    assert_eq!(tags, ["gamma6"]);
}

#[test]
fn verify_output_is_byte_deterministic() {
    let args = ["verify", "3.2", "--girth", "6", "--max-n", "9", "--json", "--no-meta"];
    let a = run(&args);
    let b = run(&[&args[..], &["--jobs", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unconfirmed_verification_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("dump");
    let out = run(&[
        "verify",
        "3.3",
        "--girth",
        "6",
        "--max-n",
        "8",
        "--dump-dir",
        &dump.to_string_lossy(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(std::fs::read_dir(&dump).unwrap().count() > 0);
}
