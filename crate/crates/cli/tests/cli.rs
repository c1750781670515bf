use std::path::{Path, PathBuf};
use std::process::Command;

use domw_cli::{run, Output};
use domw_core::instances::{fixtures, write_instance, Instance};

fn domw(args: &[&str]) -> Output {
    run(std::iter::once("domw").chain(args.iter().copied()))
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn example_file(dir: &Path, name: &str) -> PathBuf {
    let out = domw(&["example", name]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    put(dir, &format!("{name}.txt"), &out.stdout)
}

#[test]
fn solve_iv3() {
    let dir = tempfile::tempdir().unwrap();
    let file = put(
        dir.path(),
        "iv3.txt",
        &write_instance(&Instance::Interval(fixtures::iv3())),
    );
    let out = domw(&["solve", file.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "domw-cert 1\nf 1 3\nf 2 2\nI 0 2\nvalue 5\n");
    assert!(out.stderr.is_empty());

    let cert = put(dir.path(), "iv3.cert", &out.stdout);
    let out = domw(&["verify", file.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "OK value 5\n"));

    let forged = put(
        dir.path(),
        "bad.cert",
        "domw-cert 1\nf 1 3\nI 0 2\nvalue 5\n",
    );
    let out = domw(&["verify", file.to_str().unwrap(), forged.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("REJECTED"));
}

#[test]
fn forked_star_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let file = example_file(dir.path(), "forked-star");
    let path = file.to_str().unwrap();
    let out = domw(&["oracle", "gammai", path]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().next(), Some("4"));
    let out = domw(&["oracle", "gamma", path]);
    assert_eq!(out.stdout.lines().next(), Some("5"));

    let out = domw(&["oracle", "gamma", path, "--cap", "10"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("cap is 10"));

    let out = domw(&["solve", path]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("domw oracle"), "{}", out.stderr);

    let out = domw(&["check", path]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out
        .stdout
        .contains("PASS sandwich: rho_w 4 <= gamma^i_w 4 <= gamma_w 5"));
}

#[test]
fn split_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let file = example_file(dir.path(), "split-triangle");
    let path = file.to_str().unwrap();
    let out = domw(&["solve", path]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("value 6\n"), "{}", out.stdout);
    assert_eq!(
        domw(&["oracle", "rho", path]).stdout.lines().next(),
        Some("5")
    );
    let out = domw(&["oracle", "frac", path]);
    assert_eq!(out.stdout.lines().next(), Some("6"));
    let out = domw(&["check", path]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("PASS solver = gamma^i_w"));

    // a dominating function of size 6 has no matching dispersed set
    let cert = put(
        dir.path(),
        "six.cert",
        "domw-cert 1\nf 0 2\nf 1 4\nI 3\nvalue 6\n",
    );
    assert_eq!(domw(&["verify", path, cert.to_str().unwrap()]).code, 1);
}

#[test]
fn non_tu_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let file = example_file(dir.path(), "non-tu-intervals");
    let out = domw(&["matrix", file.to_str().unwrap(), "--det", "--c1p"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "order 0 1 2 3\n1001\n0101\n0011\n1111\ndet -2\nc1p false\n"
    );
    let file = example_file(dir.path(), "non-tu-star");
    let out = domw(&["matrix", file.to_str().unwrap(), "--det"]);
    let det = out.stdout.lines().last().unwrap();
    assert!(det == "det 2" || det == "det -2", "{det}");
    assert_eq!(
        domw(&["matrix", file.to_str().unwrap(), "--order", "right"]).code,
        1
    );
}

#[test]
fn usage_and_input_errors() {
    let out = domw(&["frobnicate"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stderr.lines().count(), 1);
    assert_eq!(domw(&["oracle", "delta", "x"]).code, 1);
    assert_eq!(domw(&["solve", "/nonexistent/file"]).code, 1);
    assert_eq!(domw(&["--help"]).code, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = put(dir.path(), "bad.txt", "domw 9\nkind interval\n0\n");
    let out = domw(&["solve", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 1"), "{}", out.stderr);
    let bad = put(dir.path(), "rev.txt", "domw 1\nkind interval\n1\n0 4 2 1\n");
    assert!(domw(&["check", bad.to_str().unwrap()])
        .stderr
        .contains("line 4"));

    assert_eq!(
        domw(&["gen", "interval", "--seed", "1", "--n", "0"]).code,
        1
    );
    assert_eq!(domw(&["gen", "interval"]).code, 1);
}

#[test]
fn gen_is_deterministic() {
    for kind in ["interval", "tree-edges", "split", "subtree-intersection"] {
        let a = domw(&["gen", kind, "--seed", "17"]);
        let b = domw(&["gen", kind, "--seed", "17"]);
        assert_eq!(a.code, 0);
        assert_eq!(a, b);
        assert!(a.stdout.starts_with(&format!("domw 1\nkind {kind}\n")));
    }
    assert_ne!(
        domw(&["gen", "interval", "--seed", "1"]).stdout,
        domw(&["gen", "interval", "--seed", "2"]).stdout
    );
}

#[test]
fn check_sweep_over_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["interval", "tree-edges", "split", "subtree-intersection"] {
        for seed in 0..200u64 {
            let s = seed.to_string();
            let mut args = vec!["gen", kind, "--seed", &s];
            // vary sizes a little
            let size = (1 + seed % 9).to_string();
            match kind {
                "interval" => args.extend(["--n", &size]),
                "tree-edges" => args.extend(["--edges", &size]),
                _ => args.extend(["--subtrees", &size]),
            }
            let inst = domw(&args);
            assert_eq!(inst.code, 0, "{kind} {seed}: {}", inst.stderr);
            let file = put(dir.path(), "inst.txt", &inst.stdout);
            let out = domw(&["check", file.to_str().unwrap()]);
            assert_eq!(
                out.code, 0,
                "{kind} seed {seed}:\n{}{}",
                out.stdout, out.stderr
            );
            assert!(!out.stdout.contains("FAIL"));
        }
    }
}

#[test]
fn binary_streams_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = put(
        dir.path(),
        "iv3.txt",
        &write_instance(&Instance::Interval(fixtures::iv3())),
    );
    let out = Command::new(env!("CARGO_BIN_EXE_domw"))
        .args(["solve", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .ends_with("value 5\n"));
    assert!(out.stderr.is_empty());

    let out = Command::new(env!("CARGO_BIN_EXE_domw"))
        .arg("nonsense")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}
