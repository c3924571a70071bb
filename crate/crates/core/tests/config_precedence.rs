use std::ffi::OsString;
use std::fs;

use bispec::cli::{run_from_args, CommandOutput};
use serde_json::Value;
use tempfile::TempDir;

fn params(args: &[&str], env: Option<OsString>) -> Value {
    let mut argv = vec!["bispec"];
    argv.extend_from_slice(args);
    argv.push("params");
    let out: CommandOutput = run_from_args(argv, env);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn fixture(body: &str) -> (TempDir, String) {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bispec.json");
    fs::write(&path, body).unwrap();
    let p = path.to_str().unwrap().to_string();
    (dir, p)
}

const FILE_LAYER: &str = r#"{"model": "h8", "mu2": 0.05, "n_max": 6, "format": "csv", "lambda2": 10}"#;

#[test]
fn three_layers_via_flag() {
    let (_dir, path) = fixture(FILE_LAYER);
    let defaults = params(&[], None);
    let file = params(&["--config", &path], None);
    let flags = params(&["--config", &path, "--mu2", "0.08", "--format", "json"], None);

    assert_eq!(defaults["model"], "h16");
    assert_eq!(defaults["n_max"], 10);
    assert_eq!(defaults["mu2"], Value::Null);

    assert_eq!(file["model"], "h8");
    assert_eq!(file["mu2"], 0.05);
    assert_eq!(file["n_max"], 6);
    assert_eq!(file["format"], "csv");
    assert_eq!(file["lambda2"], 10);
    assert_eq!(file["chi"], defaults["chi"]);

    assert_eq!(flags["mu2"], 0.08);
    assert_eq!(flags["format"], "json");
    assert_eq!(flags["model"], "h8");
    assert_eq!(flags["n_max"], 6);
    assert_eq!(flags["tolerance_gev"], defaults["tolerance_gev"]);
}

#[test]
fn three_layers_via_environment() {
    let (_dir, path) = fixture(FILE_LAYER);
    let env = Some(OsString::from(&path));
    let file = params(&[], env.clone());
    assert_eq!(file["model"], "h8");
    assert_eq!(file["n_max"], 6);
    let flags = params(&["--model", "h16", "--n-max", "3"], env);
    assert_eq!(flags["model"], "h16");
    assert_eq!(flags["n_max"], 3);
    assert_eq!(flags["mu2"], 0.05);
}

#[test]
fn flag_path_beats_environment_path() {
    let (_a, env_path) = fixture(r#"{"n_max": 4}"#);
    let (_b, flag_path) = fixture(r#"{"n_max": 7}"#);
    let v = params(&["--config", &flag_path], Some(OsString::from(env_path)));
    assert_eq!(v["n_max"], 7);
}

#[test]
fn empty_file_reproduces_defaults() {
    let defaults = params(&[], None);
    for body in ["", "\n", "{}"] {
        let (_dir, path) = fixture(body);
        assert_eq!(params(&["--config", &path], None), defaults, "{body:?}");
    }
}

#[test]
fn bad_files_are_io_errors() {
    let (_dir, path) = fixture(r#"{"mu": 0.05}"#);
    assert_eq!(run_from_args(["bispec", "--config", path.as_str(), "params"], None).code, 3);
    let (_dir2, path2) = fixture("{ not json");
    assert_eq!(run_from_args(["bispec", "--config", path2.as_str(), "params"], None).code, 3);
    assert_eq!(run_from_args(["bispec", "--config", "/nonexistent/bispec.json", "params"], None).code, 3);
}

#[test]
fn invalid_file_values_are_rejected() {
    let (_dir, path) = fixture(r#"{"mu2": -1.0}"#);
    assert_eq!(run_from_args(["bispec", "--config", path.as_str(), "params"], None).code, 2);
    let ok = run_from_args(["bispec", "--config", path.as_str(), "--mu2", "0.06", "params"], None);
    assert_eq!(ok.code, 0);
}
