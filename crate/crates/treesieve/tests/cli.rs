//! End-to-end tests of the binary: argument handling, JSON schema, exit
//! codes, and run-to-run determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn write_graph(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treesieve"))
        .args(args)
        .output()
        .expect("binary must run")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.stderr.is_empty(),
        "unexpected stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout must be one JSON object")
}

const K33: &str = "6 9 U\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";
const P4: &str = "4 3 U\n0 1\n1 2\n2 3\n";
const C6: &str = "# hexagon\n6 6 U\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
const DC3: &str = "3 3 D\n0 1\n1 2\n2 0\n";

#[test]
fn counts_perfect_matchings() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "k33.txt", K33);
    let out = run(&["count-pm", "--graph", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["count"], "6");
    assert_eq!(v["seed"], 0);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn counts_hamiltonian_paths() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "p4.txt", P4);
    let out = run(&[
        "count-ham",
        "--graph",
        g.to_str().unwrap(),
        "--source",
        "0",
        "--target",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["count"], "1");

    let d = write_graph(&dir, "dc3.txt", DC3);
    let out = run(&[
        "count-ham",
        "--directed",
        "--graph",
        d.to_str().unwrap(),
        "--source",
        "0",
        "--target",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["count"], "1");
}

#[test]
fn detection_reports_trials_and_respects_fail_flag() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "c6.txt", C6);
    let base = [
        "detect-ham-bip",
        "--graph",
        g.to_str().unwrap(),
        "--source",
        "0",
        "--target",
        "3",
        "--trials",
        "20",
        "--seed",
        "7",
    ];
    let out = run(&base);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["detected"], false);
    assert_eq!(v["trials"], 20);
    assert_eq!(v["seed"], 7);

    let mut with_flag = base.to_vec();
    with_flag.push("--fail-on-absent");
    let out = run(&with_flag);
    assert_eq!(out.status.code(), Some(1));

    // Adjacent endpoints: a detection, exit 0 even with the flag.
    let mut found = with_flag.clone();
    found[6] = "5";
    let out = run(&found);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["detected"], true);
}

#[test]
fn detects_around_an_independent_set() {
    let dir = TempDir::new().unwrap();
    let p5 = write_graph(&dir, "p5.txt", "5 4 U\n0 1\n1 2\n2 3\n3 4\n");
    let out = run(&[
        "detect-ham-indep",
        "--graph",
        p5.to_str().unwrap(),
        "--indep",
        "1,3",
        "--source",
        "0",
        "--target",
        "4",
        "--trials",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["detected"], true);
}

#[test]
fn identical_invocations_agree_modulo_timing() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "k33.txt", K33);
    let args = [
        "detect-ham-bip",
        "--graph",
        g.to_str().unwrap(),
        "--source",
        "0",
        "--target",
        "3",
        "--seed",
        "42",
    ];
    let mut a = json_of(&run(&args));
    let mut b = json_of(&run(&args));
    a.as_object_mut().unwrap().remove("elapsed_ms");
    b.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(a, b);

    let args = ["count-maxmatch", "--graph", g.to_str().unwrap()];
    let mut a = json_of(&run(&args));
    let mut b = json_of(&run(&args));
    a.as_object_mut().unwrap().remove("elapsed_ms");
    b.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(a, b);
}

#[test]
fn oracle_subcommands_agree_with_the_sieve() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "k33.txt", K33);
    let path = g.to_str().unwrap();
    for (fast, slow) in [
        (
            vec!["count-pm", "--graph", path],
            vec!["oracle", "count-pm", "--graph", path],
        ),
        (
            vec!["count-kmatch", "--k", "2", "--graph", path],
            vec!["oracle", "count-kmatch", "--k", "2", "--graph", path],
        ),
        (
            vec!["count-kstar", "--k", "3", "--graph", path],
            vec!["oracle", "count-kstar", "--k", "3", "--graph", path],
        ),
        (
            vec!["count-maxmatch", "--graph", path],
            vec!["oracle", "count-maxmatch", "--graph", path],
        ),
        (
            vec![
                "count-ham", "--graph", path, "--source", "0", "--target", "3",
            ],
            vec![
                "oracle", "count-ham", "--graph", path, "--source", "0", "--target", "3",
            ],
        ),
    ] {
        let a = json_of(&run(&fast));
        let b = json_of(&run(&slow));
        assert_eq!(a["count"], b["count"], "{fast:?}");
    }
}

#[test]
fn plain_output_mode() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "k33.txt", K33);
    let out = run(&["count-pm", "--graph", g.to_str().unwrap(), "--json", "false"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "6\n");
}

#[test]
fn thread_pool_flag_is_accepted() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "k33.txt", K33);
    let out = run(&["count-pm", "--graph", g.to_str().unwrap(), "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["count"], "6");
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let k33 = write_graph(&dir, "k33.txt", K33);
    let p4 = write_graph(&dir, "p4.txt", P4);
    let bad = write_graph(&dir, "bad.txt", "2 1 U\n0 5\n");
    let k12 = write_graph(&dir, "k12.txt", "3 2 U\n0 1\n0 2\n");
    let cases: Vec<Vec<&str>> = vec![
        // no --graph
        vec!["count-pm"],
        // unreadable file
        vec!["count-pm", "--graph", "/nonexistent/g.txt"],
        // vertex out of range in the file
        vec!["count-pm", "--graph", bad.to_str().unwrap()],
        // direction flag contradicts the file header
        vec![
            "count-ham",
            "--directed",
            "--graph",
            p4.to_str().unwrap(),
            "--source",
            "0",
            "--target",
            "3",
        ],
        // star size does not divide the vertex count
        vec!["count-kstar", "--k", "4", "--graph", k33.to_str().unwrap()],
        // source equals target
        vec![
            "count-ham",
            "--graph",
            p4.to_str().unwrap(),
            "--source",
            "1",
            "--target",
            "1",
        ],
        // unbalanced bipartition
        vec!["count-pm", "--graph", k12.to_str().unwrap()],
    ];
    for args in &cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            !out.stderr.is_empty(),
            "expected a diagnostic for {args:?}"
        );
    }
    // Unknown subcommands are usage errors too.
    let out = run(&["count-everything"]);
    assert_eq!(out.status.code(), Some(2));
}
