use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use octoma::schemas::schema_for_report;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn octoma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octoma")).args(args).output().expect("binary runs")
}

/// Runs the binary, checks the exit code and validates the report.
fn report(args: &[&str], code: i32) -> Value {
    let out = octoma(args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(code), "{args:?}\nstderr: {stderr}");
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["exit_code"], code);
    validate(&v);
    v
}

fn validate(v: &Value) {
    let text = schema_for_report(v).unwrap_or_else(|| panic!("no schema for {v}"));
    let schema: Value = serde_json::from_str(text).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "report fails its schema:\n{}\n{v:#}", errors.join("\n"));
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_succeeds() {
    let out = octoma(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for cmd in ["verify", "syzygy", "hessian", "current-check", "ma"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
}

#[test]
fn usage_errors_exit_64() {
    let v = report(&["frobnicate"], 64);
    assert_eq!(v["error"]["kind"], "usage");
    report(&["--seed", "zzz", "verify"], 64);
    let v = report(&["verify", "--suite", "nope"], 64);
    assert_eq!(v["error"]["kind"], "usage");
}

#[test]
fn verify_is_deterministic_and_valid() {
    let args = ["--count", "5", "--seed", "7", "verify", "--suite", "herm", "--suite", "lines", "--suite", "calculus"];
    let a = report(&args, 0);
    let b = report(&args, 0);
    assert_eq!(a["passed"], true);
    assert_eq!(a["suites"].as_array().unwrap().len(), 3);
    assert_eq!(a["seed"], 7);
    assert_eq!(
        serde_json::to_string(&without_timing(a)).unwrap(),
        serde_json::to_string(&without_timing(b)).unwrap()
    );
}

#[test]
fn verify_float_backend() {
    let v = report(&["--count", "20", "--backend", "float", "verify", "--suite", "octonion", "--suite", "herm"], 0);
    assert_eq!(v["backend"], "float");
}

#[test]
fn verify_list() {
    let v = report(&["verify", "--list"], 0);
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert!(names.contains(&"syzygy") && names.contains(&"monge_ampere"));
}

#[test]
fn syzygy_check_printed_kernel_fixture() {
    let v = report(&["syzygy", "check", path(&fixture("appendix.mat"))], 0);
    assert_eq!(v["modules_equal"], true);
    assert_eq!(v["file_columns_are_syzygies"], true);
    assert_eq!(v["generators_in_file"], 16);
}

#[test]
fn syzygy_compute_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let mat = dir.path().join("gens.mat");
    let v = report(&["syzygy", "compute", "--matrix", path(&mat)], 0);
    assert_eq!(v["rank"], 10);
    let n = v["generator_count"].as_u64().unwrap();
    let c = report(&["syzygy", "check", path(&mat)], 0);
    assert_eq!(c["generators_in_file"].as_u64(), Some(n));
}

#[test]
fn syzygy_check_rejects_a_smaller_module() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("appendix.mat")).unwrap();
    let first: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).take(3).collect();
    let mat = dir.path().join("partial.mat");
    std::fs::write(&mat, first.join("\n")).unwrap();
    let v = report(&["syzygy", "check", path(&mat)], 1);
    assert_eq!(v["modules_equal"], false);
    assert_eq!(v["file_columns_are_syzygies"], true);
}

#[test]
fn hessian_output_is_a_closed_current() {
    let dir = tempfile::tempdir().unwrap();
    let h = report(&["hessian", path(&fixture("cubic.poly"))], 0);
    let text: String = h["hessian"].as_object().unwrap().iter().map(|(k, p)| format!("{k}: {}\n", p.as_str().unwrap())).collect();
    let file = dir.path().join("h.txt");
    std::fs::write(&file, text).unwrap();
    let c = report(&["current-check", path(&file)], 0);
    assert_eq!(c["closed"], true);
    assert_eq!(c["scalar_closed"], true);
}

#[test]
fn current_check_flags_non_closed_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    std::fs::write(&file, "d1: x2_0^2\n").unwrap();
    let c = report(&["current-check", path(&file)], 1);
    assert_eq!(c["closed"], false);
}

#[test]
fn parse_errors_carry_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.poly");
    std::fs::write(&file, "# comment\nx1_0^2 + * x2_1\n").unwrap();
    let v = report(&["hessian", path(&file)], 65);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["line"], 2);
    assert!(v["error"]["column"].as_u64().unwrap() >= 1);
}

#[test]
fn missing_input_exits_66() {
    let v = report(&["hessian", "/nonexistent/octoma/input.poly"], 66);
    assert_eq!(v["error"]["kind"], "io");
}

#[test]
fn unwritable_output_exits_73() {
    let out = octoma(&["--out", "/nonexistent/dir/report.json", "verify", "--list"]);
    assert_eq!(out.status.code(), Some(73));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.json");
    let out = octoma(&["--out", path(&file), "verify", "--list"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    validate(&v);
}

#[test]
fn ma_solve_zero_forcing() {
    let v = report(&["ma", "solve", path(&fixture("zero_forcing.json"))], 0);
    assert!(v["report"]["sup_phi"].as_f64().unwrap() < 1e-12);
}

#[test]
fn ma_solve_nodal_and_continuation() {
    report(&["ma", "solve", path(&fixture("solve_nodal.json"))], 0);
    let a = report(&["ma", "solve", path(&fixture("solve_trigpoly.json"))], 0);
    let b = report(&["ma", "solve", "--continuation", "steps=3", path(&fixture("solve_trigpoly.json"))], 0);
    let (sa, sb) = (&a["report"]["solution"], &b["report"]["solution"]);
    let diff = sa
        .as_array()
        .unwrap()
        .iter()
        .zip(sb.as_array().unwrap())
        .map(|(x, y)| (x["cos"].as_f64().unwrap() - y["cos"].as_f64().unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(diff < 1e-9, "continuation changed the solution by {diff}");
}

#[test]
fn ma_manufacture_recovers_phi() {
    for f in ["manufactured_single.json", "manufactured_mixed.json"] {
        let v = report(&["ma", "manufacture", path(&fixture(f))], 0);
        assert!(v["sup_error"].as_f64().unwrap() < 1e-8, "{f}");
    }
}

#[test]
fn ma_reports_non_elliptic_input() {
    let v = report(&["ma", "manufacture", path(&fixture("not_elliptic.json"))], 2);
    assert_eq!(v["error"]["kind"], "not_positive_definite");
}

#[test]
fn ma_diagnose_reports_margin() {
    let v = report(&["ma", "diagnose", path(&fixture("diagnose.json"))], 0);
    assert!(v["diagnostics"]["min_margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn bad_config_exits_65() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    std::fs::write(&file, "{\n  \"active_coords\": [\"x1_0\"],\n  \"max_freq\": \n}").unwrap();
    let v = report(&["ma", "solve", path(&file)], 65);
    assert_eq!(v["error"]["line"], 4);
}

#[test]
fn schema_command_prints_bundled_documents() {
    let out = octoma(&["schema", "ma-solve"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["title"], "octoma ma solve report");
    assert_eq!(octoma(&["schema", "nope"]).status.code(), Some(64));
}
