use std::path::Path;
use std::process::Command;

use llc_tune::control::{closed_loop_spectrum, min_damping_ratio};
use llc_tune::harness::{
    execute, run_experiment, verify_reference_tables, AlgorithmSet, ExperimentConfig, CSV_HEADER,
};
use llc_tune::optim::{Algorithm, BoaConfig, DeConfig, GaConfig};
use llc_tune::{SearchSpace, StateSpacePlant};

fn write_plant(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("plant.json");
    std::fs::write(&path, StateSpacePlant::reference().to_json_string()).unwrap();
    path
}

fn small_config(dir: &Path) -> ExperimentConfig {
    ExperimentConfig {
        plant_file: write_plant(dir),
        bounds: SearchSpace::lead_lag_default(),
        algorithms: AlgorithmSet {
            boa: Some(BoaConfig { population_size: 10, generations: 8, ..Default::default() }),
            ga: Some(GaConfig { population_size: 10, generations: 8, ..Default::default() }),
            de: Some(DeConfig { population_size: 10, generations: 8, ..Default::default() }),
        },
        seeds: vec![3, 1, 2],
        output_dir: dir.join("out"),
    }
}

#[test]
fn experiment_writes_csvs_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let report = run_experiment(&cfg).unwrap();

    for a in Algorithm::ALL {
        for seed in &cfg.seeds {
            let path = cfg.output_dir.join("convergence").join(format!("{a}_seed{seed}.csv"));
            let text = std::fs::read_to_string(&path).unwrap();
            let lines: Vec<&str> = text.lines().collect();
            assert_eq!(lines[0], CSV_HEADER);
            assert_eq!(lines.len(), 1 + 9);
            for (g, line) in lines[1..].iter().enumerate() {
                let (gen, value) = line.split_once(',').unwrap();
                assert_eq!(gen.parse::<usize>().unwrap(), g);
                assert!(value.parse::<f64>().unwrap().is_finite());
            }
        }
    }
    let json = std::fs::read_to_string(cfg.output_dir.join("report.json")).unwrap();
    assert_eq!(json, report.to_json());
    let table = std::fs::read_to_string(cfg.output_dir.join("report.txt")).unwrap();
    assert!(table.contains("Minimum damping ratio"));
}

#[test]
fn report_is_reproducible_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let first = run_experiment(&cfg).unwrap().to_json();
    let second = run_experiment(&cfg).unwrap().to_json();
    assert_eq!(first, second);
    let on_disk = std::fs::read(cfg.output_dir.join("report.json")).unwrap();
    assert_eq!(on_disk, second.into_bytes());
}

#[test]
fn report_spectrum_recomputes_to_reported_damping() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let (runs, report) = execute(&cfg, &StateSpacePlant::reference()).unwrap();
    assert_eq!(runs.len(), 9);
    for s in &report.algorithms {
        let spectrum = closed_loop_spectrum(&StateSpacePlant::reference(), s.best_params).unwrap();
        assert_eq!(spectrum, s.best_spectrum);
        let zeta = min_damping_ratio(&s.best_spectrum).unwrap();
        assert!((zeta - s.best_min_damping_ratio).abs() <= 1e-9);
        assert!((zeta - s.best_objective).abs() <= 1e-9);
        assert!(s.worst_objective <= s.median_objective && s.median_objective <= s.best_objective);
        assert_eq!(s.median_trace.len(), 9);
        assert_eq!(s.seeds, vec![3, 1, 2]);
    }
}

#[test]
fn zero_generations_reports_initialization_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        algorithms: AlgorithmSet { boa: Some(BoaConfig { generations: 0, ..Default::default() }), ga: None, de: None },
        seeds: vec![7],
        ..small_config(dir.path())
    };
    let (runs, report) = execute(&cfg, &StateSpacePlant::reference()).unwrap();
    assert_eq!(runs.len(), 1);
    assert_eq!(runs[0].evaluation_count, 50);
    let s = report.summary(Algorithm::Boa).unwrap();
    assert_eq!(s.median_trace.len(), 1);
    assert_eq!(s.best_objective, s.worst_objective);
    assert_eq!(s.generations_to_converge.per_seed, vec![0]);
}

#[test]
fn missing_plant_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig { plant_file: dir.path().join("nope.json"), ..small_config(dir.path()) };
    let err = run_experiment(&cfg).unwrap_err();
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn verification_of_reference_tables() {
    let summary = verify_reference_tables(&StateSpacePlant::reference());
    let by_label = |l: &str| summary.checks.iter().find(|c| c.label == l).unwrap().passed;
    assert!(by_label("GA min damping ratio"));
    assert!(by_label("DE min damping ratio"));
    assert!(by_label("BOA min damping ratio"));
    assert!(summary.checks.iter().filter(|c| c.label.starts_with("GA eigenvalue")).all(|c| c.passed));
    assert!(summary.checks.iter().filter(|c| c.label.starts_with("open loop")).all(|c| c.passed));
}

fn tune() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tune"))
}

#[test]
fn cli_eig_open_and_closed_loop() {
    let out = tune().arg("eig").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("open loop") && text.contains("-0.0594"));

    let out = tune()
        .args(["eig", "--kc", "18.3998", "--t1", "0.2619", "--t2", "0.1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("min damping ratio 0.4768"));

    let out = tune().args(["eig", "--kc", "1.0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = tune().args(["eig", "--kc", "1", "--t1", "0.5", "--t2", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cli_config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tune().output().unwrap().status.code(), Some(1));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"plant_file": "p.json", "algorithms": {"boa": {}}, "seeds": [], "output_dir": "o"}"#).unwrap();
    assert_eq!(tune().arg("--config").arg(&bad).output().unwrap().status.code(), Some(1));
    let missing = tune().args(["verify-tables", "--plant"]).arg(dir.path().join("x.json")).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn cli_verify_tables_reports_mismatch_code() {
    let dir = tempfile::tempdir().unwrap();
    let plant = write_plant(dir.path());
    let out = tune().args(["verify-tables", "--json", "--plant"]).arg(&plant).output().unwrap();
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let all_passed = summary["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true);
    assert_eq!(out.status.code(), Some(if all_passed { 0 } else { 3 }));
}

#[test]
fn cli_experiment_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    write_plant(dir.path());
    let cfg_path = dir.path().join("exp.json");
    std::fs::write(
        &cfg_path,
        r#"{"plant_file": "plant.json",
            "algorithms": {"de": {"population_size": 8, "generations": 5}},
            "seeds": [1, 2, 3],
            "output_dir": "ignored"}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("custom");
    let out = tune()
        .arg("--config")
        .arg(&cfg_path)
        .args(["--seed", "42"])
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out_dir.join("convergence/de_seed42.csv").exists());
    assert!(!out_dir.join("convergence/de_seed1.csv").exists());
    assert!(!dir.path().join("ignored").exists());
}
