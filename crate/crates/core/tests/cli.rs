use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use wsn_deploy::analytic::full_report;
use wsn_deploy::cli::table::{format_prob, SWEEP_HEADER};
use wsn_deploy::geometry::IntruderScenario;
use wsn_deploy::quadrature::QuadratureSpec;

fn wsn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsn-deploy")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn value(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing in {out}"))
        .parse()
        .unwrap()
}

fn json_line(out: &str) -> serde_json::Value {
    serde_json::from_str(out.lines().find(|l| l.starts_with('{')).expect("json line")).unwrap()
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write_config(path: &str, output: &str, extra: serde_json::Value) {
    let mut cfg = serde_json::json!({
        "models": [{"kind": "half-normal"}, {"kind": "uniform"}],
        "sigma_values": [10.0],
        "n_values": [10, 50],
        "s_values": [5.0],
        "d_values": [5.0],
        "r_values": [1.0],
        "region": {"x_min": 0.0, "x_max": 100.0, "y_min": -50.0, "y_max": 50.0},
        "trials": 5000,
        "master_seed": 42,
        "output_path": output,
    });
    for (k, v) in extra.as_object().unwrap() {
        cfg[k] = v.clone();
    }
    std::fs::write(path, cfg.to_string()).unwrap();
}

#[test]
fn sample_zero_is_header_only() {
    let dir = TempDir::new().unwrap();
    let out = p(&dir, "s.csv");
    let o = wsn(&["sample", "-n", "0", "-o", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "x,y\n");
}

#[test]
fn sample_is_reproducible_and_has_half_normal_mean() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (p(&dir, "a.csv"), p(&dir, "b.csv"));
    for path in [&a, &b] {
        let o = wsn(&["sample", "--sigma", "5", "-n", "100000", "--seed", "17", "-o", path]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let xs: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(xs.len(), 100_000);
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    assert!((mean - 3.989_422_804).abs() < 0.05, "{mean}");
}

#[test]
fn sample_unwritable_path_fails_with_io_code() {
    let o = wsn(&["sample", "-n", "3", "-o", "/nonexistent-dir/out.csv"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("nonexistent-dir"));
}

#[test]
fn analytic_matches_library_and_sums() {
    let o = wsn(&["analytic", "--sigma", "5", "-r", "1", "-S", "5", "-d", "3", "-n", "10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let sc = IntruderScenario::new(5.0, 3.0).unwrap();
    let lib = full_report(&sc, 1.0, 5.0, 10, None, &QuadratureSpec::default()).unwrap();
    assert!(out.contains(&format!("p_d={}\n", format_prob(lib.p_d))));
    let parts = value(&out, "p_rect") + value(&out, "p_left") + value(&out, "p_right");
    assert!((value(&out, "p_total") - parts).abs() < 1e-8);

    let json = json_line(&out);
    for key in ["p_rect", "p_left", "p_right", "p_total", "p_uniform", "p_d", "p_not_detected"] {
        assert!(json.get(key).is_some(), "json lacks {key}");
    }
    assert_eq!(json["p_d"].as_f64().unwrap(), lib.p_d);
}

#[test]
fn analytic_zero_sensors() {
    let o = wsn(&["analytic", "-n", "0"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "p_d"), 0.0);
}

#[test]
fn analytic_quadrature_failure_reports_estimate() {
    let o = wsn(&["analytic", "--tolerance", "1e-300"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("best estimate"), "{}", stderr(&o));
}

#[test]
fn analytic_rejects_bad_input() {
    assert_eq!(wsn(&["analytic", "--sigma", "0"]).status.code(), Some(1));
    assert_eq!(wsn(&["analytic", "-S", "1", "-d", "2"]).status.code(), Some(1));
    assert_eq!(wsn(&["analytic", "-r", "-1"]).status.code(), Some(1));
}

#[test]
fn simulate_single_trial_is_indicator() {
    let o = wsn(&["simulate", "--trials", "1", "--seed", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let p_hat = value(&stdout(&o), "p_hat");
    assert!(p_hat == 0.0 || p_hat == 1.0);
}

#[test]
fn simulate_is_deterministic_across_runs_and_workers() {
    let args = ["simulate", "--trials", "50000", "--seed", "11"];
    let a = wsn(&[&args[..], &["--workers", "1"]].concat());
    let b = wsn(&[&args[..], &["--workers", "1"]].concat());
    let c = wsn(&[&args[..], &["--workers", "5"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(json_line(&stdout(&a))["trials"], 50000);
}

#[test]
fn simulate_agrees_with_analytic() {
    let sim = wsn(&["simulate", "--sigma", "5", "-r", "1", "-S", "5", "-d", "3", "-n", "10", "--trials", "1000000"]);
    let ana = wsn(&["analytic", "--sigma", "5", "-r", "1", "-S", "5", "-d", "3", "-n", "10"]);
    let gap = (value(&stdout(&sim), "p_hat") - value(&stdout(&ana), "p_d")).abs();
    assert!(gap <= 0.005, "gap {gap}");
}

#[test]
fn simulate_fixed_field() {
    let o = wsn(&["simulate", "--fixed-field", "--seed", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(value(&out, "trials"), 1.0);
}

#[test]
fn sweep_writes_schema_and_round_trips_to_plot() {
    let dir = TempDir::new().unwrap();
    let (cfg, out, svg) = (p(&dir, "cfg.json"), p(&dir, "fig.csv"), p(&dir, "fig.svg"));
    write_config(&cfg, &out, serde_json::json!({}));
    let o = wsn(&["sweep", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(SWEEP_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().filter(|r| r.starts_with("half-normal,")).count() == 2);
    assert!(rows.iter().any(|r| r.starts_with("uniform,,10,")));
    assert!(Path::new(&p(&dir, "fig.status.csv")).exists());

    let o = wsn(&["plot", "-i", &out, "-o", &svg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 2);
    assert!(!text.contains("href"));

    let again = p(&dir, "again.svg");
    assert!(wsn(&["plot", "-i", &out, "-o", &again]).status.success());
    assert_eq!(std::fs::read(&svg).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn sweep_skips_invalid_rows_but_fails_when_all_are_invalid() {
    let dir = TempDir::new().unwrap();
    let (cfg, out) = (p(&dir, "cfg.json"), p(&dir, "rows.csv"));
    write_config(&cfg, &out, serde_json::json!({"d_values": [3.0, 8.0]}));
    let o = wsn(&["sweep", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 5);
    let status = std::fs::read_to_string(p(&dir, "rows.status.csv")).unwrap();
    assert_eq!(status.lines().filter(|l| l.contains(",invalid,")).count(), 4);

    write_config(&cfg, &out, serde_json::json!({"d_values": [8.0]}));
    assert_eq!(wsn(&["sweep", "--config", &cfg]).status.code(), Some(1));
}

#[test]
fn sweep_rejects_bad_config() {
    let dir = TempDir::new().unwrap();
    let (cfg, out) = (p(&dir, "cfg.json"), p(&dir, "x.csv"));
    write_config(&cfg, &out, serde_json::json!({"trials": 0}));
    assert_eq!(wsn(&["sweep", "--config", &cfg]).status.code(), Some(1));
    write_config(&cfg, &out, serde_json::json!({"sigma_values": [-1.0]}));
    assert_eq!(wsn(&["sweep", "--config", &cfg]).status.code(), Some(1));
    write_config(&cfg, &out, serde_json::json!({"trails": 10}));
    let o = wsn(&["sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("trails"));
    assert!(!Path::new(&out).exists());
}

#[test]
fn plot_errors() {
    let dir = TempDir::new().unwrap();
    let (csv, svg) = (p(&dir, "in.csv"), p(&dir, "out.svg"));
    std::fs::write(&csv, format!("{SWEEP_HEADER}\n")).unwrap();
    assert_ne!(wsn(&["plot", "-i", &csv, "-o", &svg]).status.code(), Some(0));

    std::fs::write(&csv, "a,b\n1,2\n").unwrap();
    let o = wsn(&["plot", "-i", &csv, "-o", &svg, "--y", "p_hat,p_analytic"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("p_hat") && err.contains("p_analytic") && err.contains("model"), "{err}");

    assert_eq!(wsn(&["plot", "-i", &p(&dir, "missing.csv"), "-o", &svg]).status.code(), Some(3));
}

#[test]
fn validate_passes_and_injected_fault_fails() {
    let o = wsn(&["validate"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = wsn(&["validate", "--inject-normalizer-scale", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL half-normal pdf integrates to 1")));
}
