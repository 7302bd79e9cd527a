use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn dlcz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlcz")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dlcz(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write_config(dir: &Path, json: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows(csv).iter().map(|r| r[k].parse().unwrap()).collect()
}

#[test]
fn curve_is_deterministic_and_starts_at_gamma0() {
    let dir = tempfile::tempdir().unwrap();
    let cfg =
        write_config(dir.path(), r#"{"sweep": {"t_start": 0, "t_end": 0.5, "n_points": 11, "spacing": "linear"}}"#);
    let a = stdout(&["curve", "--config", &cfg]);
    let b = stdout(&["curve", "--config", &cfg]);
    assert_eq!(a, b);
    assert!(a.starts_with("t_s,gamma,g,tau0,V,C_param\r\n"));
    assert_eq!(column(&a, "gamma")[0], 0.76);
}

#[test]
fn curve_crosses_zero_near_table_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"sigma_b": 0.0002, "sweep": {"t_start": 0.001, "t_end": 0.3, "n_points": 300, "spacing": "linear"}}"#,
    );
    let out = stdout(&["curve", "--config", &cfg]);
    let (t, c) = (column(&out, "t_s"), column(&out, "C_param"));
    let first = t[c.iter().position(|&c| c == 0.0).unwrap()];
    assert!((first - 0.135).abs() < 0.0135, "{first}");
}

#[test]
fn table1_rows() {
    let out = stdout(&["table1"]);
    assert_eq!(out.lines().count(), 5);
    let ts = column(&out, "T_s");
    for (got, want) in ts.iter().zip([0.014, 0.028, 0.135, 1.7]) {
        assert!((got / want - 1.0).abs() < 0.1, "{got} vs {want}");
    }
    let dir = tempfile::tempdir().unwrap();
    let empty = write_config(dir.path(), r#"{"table1": {"sigma_b_list": []}}"#);
    assert_eq!(stdout(&["table1", "--config", &empty]), "sigma_b,sigma_delta,T_s,eta_link\r\n");
    let single = write_config(dir.path(), r#"{"table1": {"sigma_b_list": [0]}}"#);
    let out = stdout(&["table1", "--config", &single]);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn mc_is_byte_identical_across_runs_and_threads() {
    let args = ["mc", "--seed", "7", "--trials", "3000"];
    let one = stdout(&[&args[..], &["--threads", "1"]].concat());
    let four = stdout(&[&args[..], &["--threads", "4"]].concat());
    let default = stdout(&args);
    assert_eq!(one, four);
    assert_eq!(one, default);
    let other_seed = stdout(&["mc", "--seed", "8", "--trials", "3000"]);
    assert_ne!(one, other_seed);
}

#[test]
fn mc_visibility_tracks_closed_form() {
    let out = stdout(&["mc"]);
    let (v, se, model) = (column(&out, "V_mc"), column(&out, "V_se"), column(&out, "V_model"));
    for ((v, se), m) in v.iter().zip(&se).zip(&model) {
        assert!((v - m).abs() < 3.0 * se, "{v} ± {se} vs {m}");
    }
}

#[test]
fn mc_writes_file_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mc.json");
    let out = dlcz(&["mc", "--trials", "500", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["columns"][0], "t_s");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 10);
}

#[test]
fn errors_are_single_lines_with_nonzero_status() {
    let dir = tempfile::tempdir().unwrap();
    for (json, key) in
        [(r#"{"chi": -0.1}"#, "chi"), (r#"{"foo": 1}"#, "foo"), (r#"{"mc": {"trials": 0}}"#, "mc.trials")]
    {
        let cfg = write_config(dir.path(), json);
        let out = dlcz(&["curve", "--config", &cfg]);
        assert!(!out.status.success());
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(key), "{err}");
    }
    let out = dlcz(&["mc", "--trials", "0"]);
    assert!(!out.status.success());
    let out = dlcz(&["figure", "--figure-id", "9"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(!out.status.success() && err.contains("S1"), "{err}");
    let out = dlcz(&["curve", "--config", "/nonexistent/config.json"]);
    assert!(!out.status.success());
}

#[test]
fn every_figure_renders() {
    for id in ["4", "5", "6", "7", "8", "S1"] {
        let out = stdout(&["figure", "--figure-id", id]);
        assert!(out.lines().count() > 10, "figure {id}");
    }
    let s1 = stdout(&["figure", "--figure-id", "S1"]);
    assert_eq!(rows(&s1)[0], ["0", "0.22", "0.17"]);
    let fig5 = stdout(&["figure", "--figure-id", "5"]);
    assert_eq!(column(&fig5, "t_s").last().copied(), Some(200e-6));
}

#[test]
fn fit_recovers_synthetic_lifetime() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let noise = Normal::new(0.0, 0.02).unwrap();
    let mut csv = String::from("t_s,value\n");
    for k in 0..30 {
        let t = 3e-3 * k as f64 / 29.0;
        csv.push_str(&format!("{t},{}\n", 0.22 * (-t / 1e-3f64).exp() * (1.0 + noise.sample(&mut rng))));
    }
    std::fs::write(dir.path().join("decay.csv"), csv).unwrap();
    let cfg = write_config(dir.path(), r#"{"fit": {"data": "decay.csv", "model": "exponential"}}"#);
    let out = stdout(&["fit", "--config", &cfg]);
    let tau_row = rows(&out).into_iter().find(|r| r[0] == "tau").unwrap();
    let tau: f64 = tau_row[1].parse().unwrap();
    assert!((tau / 1e-3 - 1.0).abs() < 0.05, "{tau}");
}

#[test]
fn fit_dephasing_needs_vg_column() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("v.csv"), "t_s,value\n0,0.7\n1e-5,0.6\n2e-5,0.5\n").unwrap();
    let cfg =
        write_config(dir.path(), r#"{"fit": {"data": "v.csv", "model": "visibility_dephasing", "mu_prime": 1.4e6}}"#);
    let out = dlcz(&["fit", "--config", &cfg]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("v_g"));

    let mut csv = String::from("t_s,value,v_g\n");
    for k in 0..40 {
        let t = 150e-6 * k as f64 / 39.0;
        let vg = 0.8 - 200.0 * t;
        csv.push_str(&format!("{t},{},{vg}\n", vg * 0.88 * (-t / 50e-6f64).exp()));
    }
    std::fs::write(dir.path().join("v.csv"), csv).unwrap();
    let out = stdout(&["fit", "--config", &cfg]);
    let get = |name: &str| -> f64 { rows(&out).into_iter().find(|r| r[0] == name).unwrap()[1].parse().unwrap() };
    assert!((get("tau_0") / 50e-6 - 1.0).abs() < 1e-6);
    assert!((get("xi_prime") - 0.88).abs() < 1e-6);
}

#[test]
fn fit_without_section_fails() {
    let out = dlcz(&["fit"]);
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("fit"));
}
