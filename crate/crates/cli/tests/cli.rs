//! End-to-end checks of the binary: exit codes, JSON round-trips, and
//! deterministic seeded output.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liftmcg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn exit_codes_follow_the_contract() {
    // predicate true
    let out = run(&["lift-check", "--genus", "2", "--sheets", "2", "--word", "Tb1^2"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // predicate false
    let out = run(&["lift-check", "--genus", "2", "--sheets", "2", "--word", "Tb1"]);
    assert_eq!(out.status.code(), Some(1));

    // parse error
    let out = run(&["eval", "--genus", "2", "--word", "Tc9"]);
    assert_eq!(out.status.code(), Some(2));

    // precondition violation (non-symplectic input matrix)
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "1 1; 1 1").unwrap();
    let out = run(&[
        "lift-check",
        "--genus",
        "1",
        "--sheets",
        "2",
        "--matrix-file",
        file.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn eval_prints_the_inverse_twist() {
    let out = run(&["eval", "--genus", "2", "--word", "Tb1^-1"]);
    assert_eq!(stdout(&out), "1 0 0 0\n1 1 0 0\n0 0 1 0\n0 0 0 1\n");
}

#[test]
fn json_matrices_round_trip() {
    let out = run(&["eval", "--genus", "2", "--word", "Tc1 Tb2^-3", "--json"]);
    let text = stdout(&out);
    let parsed = liftmcg::io::parse_matrix_json(text.trim()).unwrap();
    let direct = liftmcg::words::parse_word("Tc1 Tb2^-3", 2)
        .unwrap()
        .evaluate()
        .unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn factor_verifies_round_trip() {
    let out = run(&[
        "factor", "--genus", "2", "--sheets", "3", "--word", "Tb1^3 Ta2 Tc1^2", "--verify",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["unit"], serde_json::json!(1));
    assert!(value["letters"].as_array().is_some());
}

#[test]
fn factor_rejects_non_members_as_precondition() {
    let out = run(&["factor", "--genus", "2", "--sheets", "2", "--word", "Tb1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn matrix_file_input_both_formats() {
    let m = "1 0 0 0; 2 1 0 0; 0 0 1 0; 0 0 0 1";
    for content in [m.to_string(), "[[1,0,0,0],[2,1,0,0],[0,0,1,0],[0,0,0,1]]".to_string()] {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, "{content}").unwrap();
        let out = run(&[
            "lift-check",
            "--genus",
            "2",
            "--sheets",
            "2",
            "--matrix-file",
            file.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{content}");
    }
}

#[test]
fn identical_seeds_give_identical_reports() {
    let first = run(&["verify", "--suite", "braid", "--seed", "42", "--json"]);
    let second = run(&["verify", "--suite", "braid", "--seed", "42", "--json"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), Some(0));
}

#[test]
fn witness_subcommand_matches_library() {
    let out = run(&[
        "witness", "--genus", "2", "--sheets", "2", "--vector", "0,1,0,0", "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["word"], serde_json::json!("Tc1"));
    assert_eq!(value["image"], serde_json::json!([1, 1, 1, 0]));
}

#[test]
fn umod_check_and_chain_verdicts() {
    let out = run(&["umod-check", "--genus", "2", "--word", "Ta2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["umod-check", "--genus", "2", "--word", "Tb1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["chain", "--genus", "2", "--validate", "1,0,0,0; 0,1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    // disjoint a-classes pair to zero, so this is not a chain
    let out = run(&["chain", "--genus", "2", "--validate", "1,0,0,0; 0,0,1,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn braid_subcommand_modes() {
    let out = run(&["braid", "--strands", "6", "--word", "s2 s1^2 s2^-1", "--stab"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["braid", "--strands", "6", "--word", "s2", "--stab"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["braid", "--strands", "6", "--word", "s1 s2 s1", "--perm"]);
    assert_eq!(stdout(&out).trim(), "1->3 2->2 3->1 4->4 5->5 6->6");
    let out = run(&["braid", "--strands", "6", "--tau", "2,3"]);
    assert_eq!(stdout(&out).trim(), "s2 s1^2 s2^-1");
    let out = run(&["braid", "--strands", "6", "--tau", "2,3", "--tau-standard"]);
    assert_eq!(stdout(&out).trim(), "s2^2");
}
