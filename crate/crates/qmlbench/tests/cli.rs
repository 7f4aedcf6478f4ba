//! End-to-end checks of the qmlbench binary: exit codes, emitted files,
//! determinism of the reports, and the rank-features surface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qmlbench")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn fixture_csv() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/alzheimers_fixture_40.csv")
}

fn write_config(dir: &Path, body: serde_json::Value) -> PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_string_pretty(&body).unwrap()).unwrap();
    path
}

fn blob_config(dir: &Path, models: &[&str]) -> PathBuf {
    write_config(
        dir,
        serde_json::json!({
            "version": 1,
            "data": { "blobs": { "m": 60, "d": 2, "separation": 4.0 } },
            "models": models,
            "fractions": [0.5],
            "seed": 11,
            "feature_map": { "n_qubits": 2, "depth": 2, "entanglement": "linear", "kind": "zz" },
            "mlp": { "hidden": [6], "epochs": 40, "learning_rate": 0.1, "batch": 0 },
            "vqc": { "layers": 1, "iterations": 10, "learning_rate": 0.1, "optimizer": "spsa" },
            "attack": { "epsilons": [0.0, 0.3], "noise_levels": [0.0, 0.5], "shots": 100 },
            "output_dir": dir.join("out").to_str().unwrap()
        }),
    )
}

#[test]
fn no_arguments_prints_usage_and_exits_1() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("Usage"), "{text}");
}

#[test]
fn unknown_flag_exits_1() {
    let out = run(&["bench", "run", "--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn missing_dataset_exits_2_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        serde_json::json!({
            "version": 1,
            "data": { "csv_path": "/nonexistent/patients.csv", "label_column": "Diagnosis" },
            "models": ["svm"],
            "fractions": [0.5],
            "output_dir": dir.path().join("out").to_str().unwrap()
        }),
    );
    let out = run(&["bench", "run", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("patients.csv"), "{text}");
}

#[test]
fn invalid_config_exits_1_listing_problems() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        serde_json::json!({
            "version": 3,
            "data": { "blobs": { "m": 7, "d": 0, "separation": 1.0 } },
            "models": [],
            "fractions": [2.0]
        }),
    );
    let out = run(&["bench", "run", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("version"), "{text}");
    assert!(text.contains("fraction"), "{text}");
    assert!(text.contains("models"), "{text}");
}

#[test]
fn bench_run_writes_reports_and_models() {
    let dir = tempfile::tempdir().unwrap();
    let config = blob_config(dir.path(), &["svm", "qsvm"]);
    let out = run(&["bench", "run", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out_dir = dir.path().join("out");
    for file in ["report.json", "report.csv", "plot_svm.dat", "plot_qsvm.dat"] {
        assert!(out_dir.join(file).exists(), "missing {file}");
    }
    assert!(out_dir.join("model_svm_f0.50.json").exists());
    assert!(out_dir.join("model_qsvm_f0.50.json").exists());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn identical_runs_identical_reports_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let config = blob_config(dir.path(), &["svm", "vqc"]);
    let strip = || -> serde_json::Value {
        let out = run(&["bench", "run", "--config", config.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join("out").join("report.json")).unwrap(),
        )
        .unwrap();
        for row in v["rows"].as_array_mut().unwrap() {
            let row = row.as_object_mut().unwrap();
            row.remove("train_cpu_seconds");
            row.remove("predict_cpu_seconds");
            row.remove("peak_memory_bytes");
            row.remove("memory_kind");
        }
        v
    };
    let a = strip();
    let b = strip();
    assert_eq!(a, b);
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = blob_config(dir.path(), &["svm"]);
    let out = run(&["bench", "run", "--config", config.to_str().unwrap(), "--seed", "99"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("out").join("report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["rows"][0]["seed"], 99);
}

#[test]
fn rank_features_on_fixture_names_memory_complaints_first() {
    let out = run(&[
        "rank-features",
        "--data",
        fixture_csv().to_str().unwrap(),
        "--top",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let first = text.lines().next().unwrap_or_default();
    assert!(first.starts_with("MemoryComplaints"), "{text}");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn kernel_dump_writes_gram_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = blob_config(dir.path(), &["qsvm"]);
    let out = run(&["kernel", "dump", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out").join("kernel.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 30); // half of 60 at fraction 0.5
    assert_eq!(lines[0].split(',').count(), 30);
    // row-major full matrix with unit diagonal at 17 significant digits
    let first: f64 = lines[0].split(',').next().unwrap().parse().unwrap();
    assert!((first - 1.0).abs() < 1e-10);
}

#[test]
fn attack_subcommand_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let config = blob_config(dir.path(), &["mlp"]);
    let out = run(&["attack", "--config", config.to_str().unwrap(), "--model", "mlp"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json = dir.path().join("out").join("attack_mlp.json");
    let csv = dir.path().join("out").join("attack_mlp.csv");
    assert!(json.exists() && csv.exists());
    let reports: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 2); // two epsilons, no noise for mlp
}

#[test]
fn forced_noise_on_classical_model_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = blob_config(dir.path(), &["svm"]);
    let out = run(&["attack", "--config", config.to_str().unwrap(), "--model", "svm", "--noise"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("model-kind"), "{text}");
}

#[test]
fn attack_on_variational_model_includes_noise_levels() {
    let dir = tempfile::tempdir().unwrap();
    let config = blob_config(dir.path(), &["vqc"]);
    let out = run(&["attack", "--config", config.to_str().unwrap(), "--model", "vqc"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("out").join("attack_vqc.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 4); // 2 epsilons + 2 noise levels
}

#[test]
fn unknown_model_id_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = blob_config(dir.path(), &["svm"]);
    let out = run(&["attack", "--config", config.to_str().unwrap(), "--model", "resnet"]);
    assert_eq!(out.status.code(), Some(2));
}
