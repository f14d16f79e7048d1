//! The command line: outputs, JSON mode and exit codes.

use std::process::Command;

use kleinhomology::cli::{run, EXIT_CHECK_FAILED, EXIT_INTERNAL, EXIT_PASS, EXIT_USAGE};
use kleinhomology::operad::algebra::samples::{matrix_algebra, square_zero_m3};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("kleinhomology").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn cobar_three_mass() {
    let (code, out, _) = call(&["cobar", "--n", "3", "--operad", "mass"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("dims 48,96") && out.contains("betti 0,48"), "{out}");
    let (_, out, _) = call(&["--json", "cobar", "--n", "3", "--operad", "mass"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dims"], serde_json::json!([48, 96]));
    assert_eq!(v["betti"], serde_json::json!([0, 48]));
}

#[test]
fn enumerate_genus_one_one_leg() {
    let (code, out, _) = call(&["enumerate", "--genus", "1", "--legs", "1", "--variant", "ribbon"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("ribbon genus 1 legs 1: 1 classes"), "{out}");
    let (_, out, _) = call(&["enumerate", "--genus", "1", "--legs", "2", "--variant", "moebius", "--type", "0,1,1", "--census", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 14);
    assert_eq!(v["census"].as_array().unwrap().len(), 14);
}

#[test]
fn homology_table_has_both_gradings() {
    let (code, out, _) = call(&["--json", "homology", "--genus", "0", "--legs", "5", "--variant", "dianalytic"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["homology"]["betti"], serde_json::json!([0, 4, 1]));
    assert_eq!(v["homology"]["moduli_grading"], serde_json::json!([[2, 0], [1, 4], [0, 1]]));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "enumerate", "--genus", "2", "--legs", "1", "--variant", "moebius", "--census"];
    assert_eq!(call(&args).1, call(&args).1);
}

#[test]
fn verify_suites() {
    let (code, out, _) = call(&["verify", "--suite", "duality"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    let (code, out, _) = call(&["verify", "--suite", "koszul", "--koszul-max", "4"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    let (code, out, _) = call(&["verify", "--suite", "dsq", "--max-genus", "1", "--max-legs", "3", "--max-cobar", "4"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("dsq PASS")).count() >= 12, "{out}");
    // the eight-term chain bounds, so this suite fails
    let (code, out, _) = call(&["verify", "--suite", "figure-t"]);
    assert_eq!(code, EXIT_CHECK_FAILED, "{out}");
    assert!(out.contains("T = "), "{out}");
}

#[test]
fn closure_and_algebra_checks() {
    let (code, out, _) = call(&["closure", "--genus", "1", "--legs", "1"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    let dir = std::env::temp_dir().join(format!("kleinhomology-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = |name: &str, json: String| {
        let p = dir.join(name);
        std::fs::write(&p, json).unwrap();
        p.to_string_lossy().into_owned()
    };
    let good = table("transpose.json", matrix_algebra(true).to_json());
    let bad = table("identity.json", matrix_algebra(false).to_json());
    let m3 = table("m3.json", square_zero_m3(-1).to_json());
    assert_eq!(call(&["check-algebra", &good]).0, EXIT_PASS);
    let (code, out, _) = call(&["check-algebra", &bad]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.contains("FAIL anti-automorphism") && out.contains("witness"), "{out}");
    assert_eq!(call(&["check-algebra", &m3]).0, EXIT_PASS);
    let broken = table("broken.json", "{\"dim\": 2}".into());
    assert_eq!(call(&["check-algebra", &broken]).0, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn export_formats() {
    let (code, out, _) = call(&["export", "--genus", "0", "--legs", "4", "--variant", "moebius", "--dot", "--edges", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.matches("graph G {").count(), 96);
    let (code, out, _) = call(&["export", "--genus", "0", "--legs", "4", "--variant", "ribbon", "--json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degrees"].as_array().unwrap().len(), 2);
    assert_eq!(call(&["export", "--genus", "0", "--legs", "4"]).0, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["cobar", "--n", "3", "--operad", "lie"]).0, EXIT_USAGE);
    assert_eq!(call(&["cobar", "--n", "1", "--operad", "ass"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--suite", "everything"]).0, EXIT_USAGE);
    assert_eq!(call(&["check-algebra", "/nonexistent/table.json"]).0, EXIT_USAGE);
    assert_eq!(call(&["homology", "--genus", "1", "--legs", "1", "--variant", "dianalytic", "--type", "0,1,1"]).0, EXIT_USAGE);
    assert_eq!(call(&["enumerate", "--genus", "2", "--legs", "1", "--type", "0,1,1"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_PASS);
    assert_ne!(EXIT_INTERNAL, EXIT_CHECK_FAILED);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kleinhomology");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["--threads", "1", "cobar", "--n", "2", "--operad", "ass"]);
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "C(Ass)(2)\ndims 2\nbetti 2\n");
    assert_eq!(status(&["--threads", "0", "cobar", "--n", "2", "--operad", "ass"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(status(&["nope"]).status.code(), Some(EXIT_USAGE));
}
