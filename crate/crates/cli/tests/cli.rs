use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tailqaoa_core::io::{strip_comments, trace_from_json};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tailqaoa"));
    c.env_remove("QAOA_MAX_QUBITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generated(dir: &Path) -> PathBuf {
    let inst = path(dir, "inst.json");
    ok(&["generate", "--seed", "2", "-o", s(&inst)]);
    inst
}

fn optimized(dir: &Path, inst: &Path, p_max: &str) -> PathBuf {
    let trace = path(dir, "trace.json");
    ok(&["optimize", s(inst), "--p-max", p_max, "--n-starts", "100", "-o", s(&trace)]);
    trace
}

#[test]
fn generate_then_info() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "a.json");
    ok(&["generate", "--flights", "6", "--routes", "8", "--planted", "3", "--seed", "1", "-o", s(&inst)]);
    let info: serde_json::Value = serde_json::from_str(&ok(&["info", s(&inst)])).unwrap();
    assert_eq!(info["n"], 8);
    assert_eq!(info["flights"], 6);
    assert_eq!(info["solutions"], 1);
}

#[test]
fn generate_is_deterministic() {
    let a = ok(&["generate", "--seed", "7"]);
    assert_eq!(a, ok(&["generate", "--seed", "7"]));
    assert_ne!(a, ok(&["generate", "--seed", "8"]));
}

#[test]
fn planted_larger_than_routes_is_a_usage_error() {
    let out = run(&["generate", "--routes", "8", "--planted", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("planted_size exceeds n_routes"));
}

#[test]
fn toy_info() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "toy.json");
    fs::write(&inst, r#"{"n_flights": 2, "routes": [[0], [1], [0, 1]]}"#).unwrap();
    let info: serde_json::Value = serde_json::from_str(&ok(&["info", s(&inst)])).unwrap();
    assert_eq!(info["solutions"], 2);
    assert!((info["valency_mean"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);
}

#[test]
fn family_info_averages() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for seed in 0..3 {
        let f = path(dir.path(), &format!("i{seed}.json"));
        ok(&["generate", "--seed", &seed.to_string(), "-o", s(&f)]);
        files.push(f);
    }
    let args: Vec<&str> = std::iter::once("info").chain(files.iter().map(|f| s(f))).collect();
    let v: serde_json::Value = serde_json::from_str(&ok(&args)).unwrap();
    assert_eq!(v["instances"].as_array().unwrap().len(), 3);
    assert!(v["valency_mean"].as_f64().unwrap() > 0.0);
}

#[test]
fn malformed_instance_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "bad.json");
    fs::write(&inst, r#"{"n_flights": 2, "routes": [[0], [1, 4]]}"#).unwrap();
    let out = run(&["info", s(&inst)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("route 1, position 1"), "{err}");
}

#[test]
fn missing_file_is_a_runtime_failure() {
    let out = run(&["info", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ising_dump_is_plain_json() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path());
    let v: serde_json::Value = serde_json::from_str(&ok(&["ising-dump", s(&inst)])).unwrap();
    assert_eq!(v["J"].as_array().unwrap().len(), 8);
    assert_eq!(v["h"].as_array().unwrap().len(), 8);
}

#[test]
fn landscape_grid() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path());
    let out = path(dir.path(), "land.csv");
    ok(&["landscape", s(&inst), "-r", "64", "-o", s(&out)]);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# tailqaoa "));
    let body = strip_comments(&text);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("gamma,beta,E,F"));
    let energies: Vec<f64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(energies.len(), 4096);
    let min = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(min < energies[0]);
}

#[test]
fn optimize_trace_improves() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path());
    let trace = trace_from_json(&fs::read_to_string(optimized(dir.path(), &inst, "6")).unwrap()).unwrap();
    assert_eq!(trace.levels.len(), 6);
    let f: Vec<f64> = trace.levels.iter().map(|l| l.success_probability).collect();
    assert!(f[5] > f[0], "{f:?}");
    for (i, l) in trace.levels.iter().enumerate() {
        assert_eq!(l.p, i + 1);
    }
}

#[test]
fn histogram_levels() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path());
    let trace = optimized(dir.path(), &inst, "3");
    let csv = ok(&["histogram", s(&inst), "--trace", s(&trace), "--p-max", "2"]);
    let body = strip_comments(&csv);
    let mut mass = [0.0f64; 3];
    for l in body.lines().skip(1) {
        let f: Vec<&str> = l.split(',').collect();
        mass[f[0].parse::<usize>().unwrap()] += f[2].parse::<f64>().unwrap();
    }
    for m in mass {
        assert!((m - 1.0).abs() < 1e-9);
    }
}

#[test]
fn sampling_finds_the_cover() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path());
    let trace = optimized(dir.path(), &inst, "6");
    let mut found = 0;
    for seed in 0..20 {
        let text = ok(&["sample", s(&inst), "--trace", s(&trace), "--shots", "74", "--seed", &seed.to_string()]);
        let v: serde_json::Value = serde_json::from_str(&strip_comments(&text)).unwrap();
        assert_eq!(v["shots"], 74);
        if v["found"].as_bool().unwrap() {
            found += 1;
        }
    }
    assert!(found >= 19, "{found} of 20");
}

#[test]
fn noise_and_tts_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path());
    let trace = optimized(dir.path(), &inst, "3");
    let csv = ok(&["noise", s(&inst), "--trace", s(&trace), "--eta", "0,0.02", "--trajectories", "200"]);
    let rows: Vec<Vec<f64>> = strip_comments(&csv)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        if r[1] == 0.0 {
            assert!((r[2] - r[3]).abs() < 1e-12);
        }
    }
    let sweep = path(dir.path(), "sweep.csv");
    let text = ok(&["tts", s(&inst), "--trace", s(&trace), "--t-grid", "1,10", "--sweep-csv", s(&sweep)]);
    let v: serde_json::Value = serde_json::from_str(&strip_comments(&text)).unwrap();
    assert_eq!(v["qaoa"]["algorithm"], "QAOA");
    assert_eq!(v["qa"]["algorithm"], "QA");
    assert!(v["qa"]["tts"].as_f64().unwrap() > 0.0);
    assert!(strip_comments(&fs::read_to_string(sweep).unwrap()).starts_with("T,F_gs,tts\n"));
}

#[test]
fn failure_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path());
    let out = path(dir.path(), "never.csv");
    let res = run(&["anneal", s(&inst), "--time", "1,-3", "-o", s(&out)]);
    assert_eq!(res.status.code(), Some(2));
    assert!(!out.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn qubit_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generated(dir.path());
    let out = bin()
        .env("QAOA_MAX_QUBITS", "6")
        .args(["landscape", s(&inst), "-r", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("qubit cap"));
    ok(&["landscape", s(&inst), "-r", "4", "--max-qubits", "8"]);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(run(&["optimize", "--bogus"]).status.code(), Some(2));
}
