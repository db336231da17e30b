use std::path::PathBuf;
use std::process::{Command, Output};

fn involution(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_involution")).args(args).output().unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("involution-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const TREE: &str =
    "field Q\npair P = (1, 6)\npair Q = (2, 3)\npair R = (-1, -6)\nassert involution P Q R\nsouche P Q R = 0\n";

#[test]
fn verify_json_report() {
    let f = scratch("tree.inv", TREE);
    let out = involution(&["verify", f.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "involution-report/1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["entries"][1]["claim"], "souche P Q R = 0");
    assert_eq!(v["entries"][1]["verdict"], "holds");
    assert_eq!(v["entries"][1]["value"], "0");
}

#[test]
fn error_entries_in_json() {
    let f = scratch("bad.inv", "field Q\npair P = (1, 6)\npair Q = (2, 3)\npair R = (-1, -5)\nsouche P Q R\n");
    let out = involution(&["verify", f.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"][0]["verdict"], "error");
    assert_eq!(v["entries"][0]["kind"], "NotAnInvolution");
}

#[test]
fn parse_errors_exit_2() {
    let f = scratch("syntax.inv", "field Q\npair P = (1 6)\n");
    let out = involution(&["verify", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("syntax.inv:2:13"), "{err}");
    assert_eq!(involution(&["verify", "/nonexistent/x.inv"]).status.code(), Some(2));
    assert_eq!(involution(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn random_suite_is_reproducible() {
    let args = ["random", "--field", "fp:97", "--cases", "20", "--seed", "42", "--json"];
    let a = involution(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, involution(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let skipped = v["entries"].as_array().unwrap().iter().filter(|e| e["verdict"] == "skipped").count();
    assert_eq!(skipped, 3);
    assert_eq!(involution(&["random", "--field", "fp:2", "--cases", "1"]).status.code(), Some(2));
    assert_eq!(involution(&["random", "--field", "q", "--cases", "0"]).status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let f = scratch("render.inv", TREE);
    let svg = f.with_extension("svg");
    let out = involution(&["render", f.to_str().unwrap(), "-o", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read(&svg).unwrap();
    assert!(first.starts_with(b"<svg"));
    involution(&["render", f.to_str().unwrap(), "-o", svg.to_str().unwrap()]);
    assert_eq!(first, std::fs::read(&svg).unwrap());

    let fp = scratch("fp.inv", "field Fp 97\npair P = (1, 6)\n");
    let out = involution(&["render", fp.to_str().unwrap(), "-o", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UnorderedField"));
}
