//! Reference pipeline runs: classical baselines on synthetic data, full
//! fraction sweeps, and attack-sweep trends.

use qmlbench::attack::robustness_sweep;
use qmlbench::bench::{run_benchmark, sweep_fractions, BenchConfig};
use qmlbench::data::{split, synth_blobs};
use qmlbench::encoding::{fit_scaler, scale_rows};
use qmlbench::kernel::{rbf_cross_kernel, rbf_kernel_matrix};
use qmlbench::mlp::mlp_train;
use qmlbench::svm::{predict, train_svm};
use std::f64::consts::PI;

fn rbf_svm_test_accuracy(m: usize, d: usize, separation: f64, seed: u64) -> f64 {
    let ds = synth_blobs(m, d, separation, seed).unwrap();
    let (train, test) = split(&ds, 0.5, seed, true).unwrap();
    let scaler = fit_scaler(&train.features).unwrap();
    let train_x = scale_rows(&scaler, &train.features).unwrap();
    let test_x = scale_rows(&scaler, &test.features).unwrap();
    let gamma = 1.0 / d as f64;
    let k = rbf_kernel_matrix(&train_x, gamma).unwrap();
    let labels: Vec<i8> = train.labels.iter().map(|&y| if y == 1 { 1 } else { -1 }).collect();
    let model = train_svm(&k, &labels, 1.0, 1e-3, 10_000, seed).unwrap();
    let rows = rbf_cross_kernel(&test_x, &train_x, gamma).unwrap();
    let preds = predict(&model, &rows).unwrap();
    preds
        .iter()
        .zip(&test.labels)
        .filter(|(&p, &y)| (p == 1) == (y == 1))
        .count() as f64
        / test.labels.len() as f64
}

#[test]
fn far_apart_blobs_are_trivially_separable() {
    let acc = rbf_svm_test_accuracy(100, 2, 10.0, 4);
    assert!(acc >= 0.99, "test accuracy {acc} below 0.99 at separation 10");
}

#[test]
fn zero_separation_blobs_sit_in_the_chance_band() {
    let acc = rbf_svm_test_accuracy(200, 2, 0.0, 4);
    assert!((0.35..=0.65).contains(&acc), "accuracy {acc} outside the chance band");
}

#[test]
fn full_sweep_yields_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let config: BenchConfig = serde_json::from_value(serde_json::json!({
        "version": 1,
        "data": { "blobs": { "m": 80, "d": 2, "separation": 3.0 } },
        "models": ["svm", "mlp"],
        "fractions": [0.5],
        "seed": 6,
        "feature_map": { "n_qubits": 2, "depth": 1, "entanglement": "linear", "kind": "zz" },
        "mlp": { "hidden": [4], "epochs": 30, "learning_rate": 0.1, "batch": 0 },
        "output_dir": dir.path().join("out").to_str().unwrap()
    }))
    .unwrap();
    // a single configured fraction expands to the default 0.1..0.9 grid
    let report = sweep_fractions(&config).unwrap();
    assert_eq!(report.rows.len(), 18);
    for row in &report.rows {
        assert!(row.error.is_none(), "{:?}: {:?}", row.model, row.error);
    }
}

#[test]
fn variational_cells_write_loss_traces() {
    let dir = tempfile::tempdir().unwrap();
    let config: BenchConfig = serde_json::from_value(serde_json::json!({
        "version": 1,
        "data": { "blobs": { "m": 40, "d": 2, "separation": 4.0 } },
        "models": ["vqc"],
        "fractions": [0.5],
        "seed": 2,
        "feature_map": { "n_qubits": 2, "depth": 1, "entanglement": "linear", "kind": "zz" },
        "vqc": { "layers": 1, "iterations": 8, "learning_rate": 0.1, "optimizer": "spsa" },
        "output_dir": dir.path().join("out").to_str().unwrap()
    }))
    .unwrap();
    run_benchmark(&config).unwrap();
    let trace_csv = dir.path().join("out").join("loss_vqc_f0.50.csv");
    let text = std::fs::read_to_string(trace_csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "iteration,loss");
    assert_eq!(lines.len(), 1 + 8 + 1); // header + initial + one per iteration
}

#[test]
fn gentle_gradient_descent_loss_is_mostly_non_increasing() {
    use qmlbench::data::synth_adhoc;
    use qmlbench::encoding::FeatureMapSpec;
    use qmlbench::variational::{train, Optimizer, TrainConfig, VariationalKind};

    let spec = FeatureMapSpec::zz(2);
    let ds = synth_adhoc(60, &spec, &[0.9, -1.2, 0.6, 0.4], 0.2, 12).unwrap();
    let config = TrainConfig {
        optimizer: Optimizer::GradientDescent,
        learning_rate: 0.01,
        iterations: 60,
        seed: 12,
        spsa: Default::default(),
    };
    let out = train(&ds.features, &ds.labels, VariationalKind::Vqc, &spec, 2, &config).unwrap();
    let ok = out
        .loss_trace
        .windows(2)
        .filter(|w| w[1] <= w[0] + 1e-12)
        .count();
    let frac = ok as f64 / (out.loss_trace.len() - 1) as f64;
    assert!(frac >= 0.9, "only {frac:.2} of steps non-increasing");
}

#[test]
fn gentle_mlp_training_loss_is_mostly_non_increasing() {
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for i in 0..20 {
        let t = i as f64 * 0.04;
        features.push(vec![t, t + 0.1]);
        labels.push(0);
        features.push(vec![t + 2.0, t + 2.2]);
        labels.push(1);
    }
    let out = mlp_train(&features, &labels, &[2, 8, 1], 0.01, 100, 0, 3).unwrap();
    let ok = out
        .loss_trace
        .windows(2)
        .filter(|w| w[1] <= w[0] + 1e-12)
        .count();
    let frac = ok as f64 / (out.loss_trace.len() - 1) as f64;
    assert!(frac >= 0.9, "only {frac:.2} of epochs non-increasing");
}

#[test]
fn fgsm_accuracy_trend_is_mostly_non_increasing() {
    let ds = synth_blobs(400, 2, 2.0, 17).unwrap();
    let (train, test) = split(&ds, 0.5, 17, true).unwrap();
    let scaler = fit_scaler(&train.features).unwrap();
    let train_x = scale_rows(&scaler, &train.features).unwrap();
    let test_x = scale_rows(&scaler, &test.features).unwrap();
    let out = mlp_train(&train_x, &train.labels, &[2, 8, 1], 0.05, 200, 0, 17).unwrap();

    let epsilons: Vec<f64> = (0..8).map(|i| i as f64 * 0.05 * PI).collect();
    let reports =
        robustness_sweep(&out.model, "mlp", &test_x, &test.labels, &epsilons, 17).unwrap();
    let accs: Vec<f64> = reports.iter().map(|r| r.attacked_accuracy).collect();
    let non_increasing = accs.windows(2).filter(|w| w[1] <= w[0] + 1e-12).count();
    let frac = non_increasing as f64 / (accs.len() - 1) as f64;
    assert!(frac >= 0.8, "only {frac:.2} of consecutive pairs non-increasing: {accs:?}");
}
