use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use wpscatter::circuit::{parse_qasm, project_ancilla, StateVector};

const PREP8: &str = r#"
[model]
n_sites = 8
j_coupling = 0.4
h_field = 1.0
g_coupling = 0.01

[[packets]]
center = 3.0
momentum = "7*pi/16"
width = 1.5

[[packets]]
center = 7.0
momentum = "-7*pi/16"
width = 1.5
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wpscatter"))
}

struct Run {
    out: Output,
    dir: PathBuf,
}

impl Run {
    fn code(&self) -> i32 {
        self.out.status.code().unwrap_or(-1)
    }

    fn stderr(&self) -> String {
        String::from_utf8_lossy(&self.out.stderr).into_owned()
    }

    fn read(&self, name: &str) -> String {
        fs::read_to_string(self.dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}\n{}", self.stderr()))
    }

    fn json(&self, name: &str) -> Value {
        serde_json::from_str(&self.read(name)).unwrap()
    }
}

fn run_with(tmp: &Path, command: &str, config: &str, extra: &[&str]) -> Run {
    let cfg = tmp.join(format!("{command}-{}.toml", extra.len()));
    fs::write(&cfg, config).unwrap();
    let dir = tmp.join(format!("out-{command}-{}", extra.join("").replace(['-', '/', '.'], "")));
    let out = bin()
        .arg(command)
        .arg("--config")
        .arg(&cfg)
        .arg("--output")
        .arg(&dir)
        .args(extra)
        .output()
        .unwrap();
    Run { out, dir }
}

fn state_bin(path: &Path) -> Vec<(f64, f64)> {
    let bytes = fs::read(path).unwrap();
    bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..].try_into().unwrap());
            (re, im)
        })
        .collect()
}

fn overlap_sq(a: &[(f64, f64)], b: &StateVector<f64>) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b.amplitudes()) {
        re += x.0 * y.re + x.1 * y.im;
        im += x.0 * y.im - x.1 * y.re;
    }
    re * re + im * im
}

#[test]
fn prepare_reports_depth_and_writes_state() {
    let tmp = TempDir::new().unwrap();
    let r = run_with(tmp.path(), "prepare", PREP8, &[]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let m = r.json("metrics.json");
    assert_eq!(m["cnot_depth"], 18);
    assert_eq!(m["term_count"], 6);
    assert!(m["success_probability"].as_f64().unwrap() > 0.0);
    assert_eq!(m["config_echo"]["packets"][1]["window"], serde_json::json!([5, 8]));
    let header = r.json("state.json");
    assert_eq!(header["n_qubits"], 8);
    let amps = state_bin(&r.dir.join("state.bin"));
    assert_eq!(amps.len(), 256);
    let norm: f64 = amps.iter().map(|(a, b)| a * a + b * b).sum();
    assert!((norm - 1.0).abs() < 1e-12);
    assert!(r.dir.join("config_echo.json").exists());
}

#[test]
fn exact_oracle_term_count() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("variant = \"exact_oracle\"\n{PREP8}");
    let r = run_with(tmp.path(), "prepare", &cfg, &[]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let m = r.json("metrics.json");
    assert_eq!(m["term_count"], 28);
    assert!(m["cnot_depth"].is_null());
}

#[test]
fn bad_width_is_a_config_error_naming_the_field() {
    let tmp = TempDir::new().unwrap();
    let cfg = PREP8.replacen("width = 1.5", "width = -1.0", 1);
    let r = run_with(tmp.path(), "prepare", &cfg, &[]);
    assert_eq!(r.code(), 1);
    let err = r.stderr();
    assert!(err.contains("packets[0].width"), "{err}");
    let want_line = cfg.lines().position(|l| l.contains("width = -1.0")).unwrap() + 1;
    assert!(err.contains(&format!("line {want_line}")), "{err}");
    assert!(!r.dir.exists(), "no output on invalid config");
}

#[test]
fn syntax_and_unknown_keys_report_lines() {
    let tmp = TempDir::new().unwrap();
    let cfg = PREP8.replace("h_field = 1.0", "h_field = 1.0\nh_feild = 2.0");
    let r = run_with(tmp.path(), "prepare", &cfg, &[]);
    assert_eq!(r.code(), 1);
    assert!(r.stderr().contains("h_feild") && r.stderr().contains("line 6"), "{}", r.stderr());

    let r = run_with(tmp.path(), "evolve", "[model]\nn_sites = = 4\n", &[]);
    assert_eq!(r.code(), 1);
    assert!(r.stderr().contains("line 2"), "{}", r.stderr());

    let cfg = PREP8.replace("\"-7*pi/16\"", "\"seven\"");
    let r = run_with(tmp.path(), "prepare", &cfg, &[]);
    assert_eq!(r.code(), 1);
    assert!(r.stderr().contains("packets[1].momentum"), "{}", r.stderr());

    let cfg = format!("{PREP8}\n[trotter]\ndt = 0.0\n");
    let r = run_with(tmp.path(), "evolve", &cfg, &[]);
    assert_eq!(r.code(), 1);
    assert!(r.stderr().contains("trotter.dt"), "{}", r.stderr());
}

#[test]
fn missing_config_and_bad_flags_exit_one() {
    let out = bin().arg("prepare").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().args(["evolve", "--format", "xml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn zero_steps_gives_single_row() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("{PREP8}\n[trotter]\ndt = 0.1\nn_steps = 0\n");
    let r = run_with(tmp.path(), "evolve", &cfg, &[]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let csv = r.read("trajectory.csv");
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.starts_with("t,n_1,"));
}

#[test]
fn sixteen_site_trajectory_shape() {
    let tmp = TempDir::new().unwrap();
    let cfg = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/collision16.toml")).unwrap();
    let cfg = cfg.replace("format = \"csv\"", "format = \"csv\"\nobservables = [\"occupations\"]");
    let r = run_with(tmp.path(), "evolve", &cfg, &[]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let csv = r.read("trajectory.csv");
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), 17);
    assert_eq!(header[16], "n_16");
    assert_eq!(lines.count(), 121);
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("{PREP8}\n[trotter]\nn_steps = 15\n");
    let a = run_with(tmp.path(), "evolve", &cfg, &[]);
    let b = run_with(tmp.path(), "evolve", &cfg, &["--seed", "0"]);
    assert_eq!(a.code(), 0);
    assert_eq!(b.code(), 0);
    assert_eq!(fs::read(a.dir.join("trajectory.csv")).unwrap(), fs::read(b.dir.join("trajectory.csv")).unwrap());

    // the echo alone reproduces the run
    let echo = a.dir.join("config_echo.json");
    let dir = tmp.path().join("from-echo");
    let out = bin().args(["evolve", "--config"]).arg(&echo).arg("--output").arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read(a.dir.join("trajectory.csv")).unwrap(), fs::read(dir.join("trajectory.csv")).unwrap());
}

#[test]
fn json_format_embeds_echo() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("{PREP8}\n[trotter]\nn_steps = 3\n");
    let r = run_with(tmp.path(), "evolve", &cfg, &["--format", "json"]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let d = r.json("trajectory.json");
    assert_eq!(d["times"].as_array().unwrap().len(), 4);
    assert_eq!(d["config_echo"]["trotter"]["n_steps"], 3);
    assert_eq!(d["config_echo"]["output"]["format"], "json");
}

const SMALL_TABLE: &str = r#"
[model]
n_sites = 6
j_coupling = 0.4
h_field = 1.0
g_coupling = 0.01

[[packets]]
center = 2.0
momentum = "7*pi/16"
width = 1.0

[[packets]]
center = 5.0
momentum = "-7*pi/16"
width = 1.0

[trotter]
dt = 0.1
n_steps = 5
"#;

#[test]
fn single_cell_table() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("{SMALL_TABLE}\n[[table.cells]]\nj_coupling = 0.6\ng_coupling = 0.02\n");
    let r = run_with(tmp.path(), "table", &cfg, &["--jobs", "1"]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    assert_eq!(r.read("report.csv").lines().count(), 2);
    assert!(r.read("report.txt").contains("0.60"));
}

#[test]
fn preset_table_has_fourteen_rows() {
    let tmp = TempDir::new().unwrap();
    let cfg = SMALL_TABLE.replace("n_steps = 5", "n_steps = 1");
    let cfg = format!("{cfg}\n[table]\npreset = \"table1\"\n");
    let r = run_with(tmp.path(), "table", &cfg, &["--jobs", "2", "--format", "json"]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let report = r.json("report.json");
    assert_eq!(report["report"]["rows"].as_array().unwrap().len(), 14);
}

#[test]
fn failing_cell_is_reported_with_exit_three() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!(
        "{SMALL_TABLE}\n[[table.cells]]\nj_coupling = 0.4\ng_coupling = 0.01\n\n[[table.cells]]\nj_coupling = 0.4\ng_coupling = 0.02\nn_sites = 40\n"
    );
    let r = run_with(tmp.path(), "table", &cfg, &[]);
    assert_eq!(r.code(), 3, "{}", r.stderr());
    let csv = r.read("report.csv");
    assert_eq!(csv.lines().count(), 3);
    let text = r.read("report.txt").to_lowercase();
    assert!(text.contains("fail"), "{text}");
}

#[test]
fn exported_circuit_reparses_to_the_prepared_state() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("vacuum = \"trivial\"\n{PREP8}");
    let prep = run_with(tmp.path(), "prepare", &cfg, &[]);
    assert_eq!(prep.code(), 0, "{}", prep.stderr());
    let want = state_bin(&prep.dir.join("state.bin"));

    for flag in [&[][..], &["--expand-toffoli"][..]] {
        let exp = run_with(tmp.path(), "export", &cfg, flag);
        assert_eq!(exp.code(), 0, "{}", exp.stderr());
        let qasm = exp.read("circuit.qasm");
        assert_eq!(qasm.contains("ccx"), flag.is_empty());
        let circuit = parse_qasm::<f64>(&qasm).unwrap();
        assert_eq!(circuit.width(), 12);
        let mut s = StateVector::<f64>::zero(12).unwrap();
        s.apply_circuit(&circuit).unwrap();
        for ancilla in [9, 11] {
            s = project_ancilla(&s, ancilla, 0).unwrap().state;
        }
        let sys = s.restrict_low(8, 1e-9).unwrap();
        assert!(overlap_sq(&want, &sys) > 1.0 - 1e-9);
    }
}

#[test]
fn empty_circuit_exports_without_gates() {
    let tmp = TempDir::new().unwrap();
    let cfg = "[model]\nn_sites = 4\nj_coupling = 0.4\nh_field = 1.0\ng_coupling = 0.0\n";
    let r = run_with(tmp.path(), "export", cfg, &[]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let qasm = r.read("circuit.qasm");
    let stmts: Vec<&str> = qasm
        .lines()
        .filter(|l| !l.starts_with("OPENQASM") && !l.starts_with("include") && !l.starts_with("qubit"))
        .filter(|l| !l.trim().is_empty())
        .collect();
    assert!(stmts.is_empty(), "{stmts:?}");
    assert_eq!(parse_qasm::<f64>(&qasm).unwrap().len(), 0);
}

#[test]
fn vqe_command_reports_energy() {
    let tmp = TempDir::new().unwrap();
    let cfg = "[model]\nn_sites = 2\nj_coupling = 0.0\nh_field = 1.0\ng_coupling = 0.0\n\n[vqe]\nmax_iterations = 3000\n";
    let r = run_with(tmp.path(), "vqe", cfg, &["--seed", "7"]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let v = r.json("vqe.json");
    assert!((v["energy"].as_f64().unwrap() + 2.0).abs() < 1e-3);
    assert_eq!(v["exact_energy"].as_f64().unwrap(), -2.0);
    assert_eq!(v["config_echo"]["vqe"]["seed"], 7);
    assert_eq!(state_bin(&r.dir.join("state.bin")).len(), 4);
}

#[test]
fn oversized_model_is_a_runtime_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = PREP8.replace("n_sites = 8", "n_sites = 40").replace("center = 7.0", "center = 25.0");
    let r = run_with(tmp.path(), "prepare", &cfg, &[]);
    assert_eq!(r.code(), 2, "{}", r.stderr());
    assert!(!r.dir.exists());
}
