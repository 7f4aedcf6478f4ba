//! Benchmark execution: trains every configured (model, fraction) cell,
//! times it on the process CPU clock, and assembles the report.
//!
//! Cells run sequentially so the CPU clock attributes work to the right
//! cell; rows are ordered by (model, fraction) regardless.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{BenchConfig, ModelId};
use super::metrics::{cpu_seconds, peak_memory_bytes, theoretical_statevector_bytes, MemoryKind};
use super::report::{BenchReport, BenchRow};
use crate::attack::{noise_degradation, robustness_sweep, AttackReport, Classifier, SvmClassifier};
use crate::data::{split, Dataset};
use crate::encoding::{fit_scaler, rank_features, scale_rows, top_k_indices, FeatureMapSpec, ScalingSpec};
use crate::error::{Error, Result};
use crate::kernel::{cross_kernel, default_gamma, kernel_matrix, rbf_cross_kernel, rbf_kernel_matrix};
use crate::mlp::{mlp_accuracy, mlp_train, MlpModel};
use crate::svm::{predict, train_svm, SvmModel};
use crate::variational::{accuracy as vqc_accuracy, train as vqc_train, TrainConfig, VariationalKind, VqcModel};

/// A trained model with everything needed to evaluate it on fresh points,
/// as serialized into the benchmark output directory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelBundle {
    pub model_id: ModelId,
    pub train_fraction: f64,
    pub seed: u64,
    pub scaler: ScalingSpec,
    /// Column subset the quantum pipeline selected, in original order.
    pub selected_columns: Option<Vec<usize>>,
    pub artifact: ModelArtifact,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelArtifact {
    Svm { model: SvmModel, train_rows: Vec<Vec<f64>> },
    Mlp { model: MlpModel },
    Variational { model: VqcModel },
}

/// Scaled train/test views for one cell.
struct PreparedCell {
    train_x: Vec<Vec<f64>>,
    train_y: Vec<u8>,
    test_x: Vec<Vec<f64>>,
    test_y: Vec<u8>,
    scaler: ScalingSpec,
    selected_columns: Option<Vec<usize>>,
    subsample_cap: Option<usize>,
}

fn labels_pm(labels: &[u8]) -> Vec<i8> {
    labels.iter().map(|&y| if y == 1 { 1 } else { -1 }).collect()
}

fn accuracy_pm(preds: &[i8], labels: &[u8]) -> f64 {
    let hits = preds
        .iter()
        .zip(labels)
        .filter(|(&p, &y)| (p == 1) == (y == 1))
        .count();
    hits as f64 / labels.len().max(1) as f64
}

/// Classical pipeline: scaler fitted on the training rows only, all
/// feature columns kept.
fn prepare_classical(dataset: &Dataset, fraction: f64, seed: u64) -> Result<PreparedCell> {
    let (train, test) = split(dataset, fraction, seed, true)?;
    let scaler = fit_scaler(&train.features)?;
    Ok(PreparedCell {
        train_x: scale_rows(&scaler, &train.features)?,
        train_y: train.labels,
        test_x: scale_rows(&scaler, &test.features)?,
        test_y: test.labels,
        scaler,
        selected_columns: None,
        subsample_cap: None,
    })
}

/// Quantum pipeline: rank features on the training rows, keep the top
/// n_qubits columns, scale, and cap the training subsample.
fn prepare_quantum(
    dataset: &Dataset,
    fraction: f64,
    seed: u64,
    n_qubits: usize,
    cap: usize,
) -> Result<PreparedCell> {
    if dataset.dim() < n_qubits {
        return Err(Error::Parameter(format!(
            "dataset has {} features but the feature map needs {n_qubits}",
            dataset.dim()
        )));
    }
    let (mut train, test) = split(dataset, fraction, seed, true)?;
    let columns = if dataset.dim() == n_qubits {
        (0..n_qubits).collect::<Vec<_>>()
    } else {
        let ranking = rank_features(&train.features, &train.labels)?;
        top_k_indices(&ranking, n_qubits)?
    };
    let mut capped = None;
    if train.len() > cap {
        let keep_fraction = cap as f64 / train.len() as f64;
        let (kept, _) = split(&train, keep_fraction, seed.wrapping_add(1), true)?;
        train = kept;
        capped = Some(cap);
    }
    let train_sel = train.select_columns(&columns);
    let test_sel = test.select_columns(&columns);
    let scaler = fit_scaler(&train_sel.features)?;
    Ok(PreparedCell {
        train_x: scale_rows(&scaler, &train_sel.features)?,
        train_y: train_sel.labels,
        test_x: scale_rows(&scaler, &test_sel.features)?,
        test_y: test_sel.labels,
        scaler,
        selected_columns: Some(columns),
        subsample_cap: capped,
    })
}

struct CellOutcome {
    test_accuracy: f64,
    train_cpu_seconds: f64,
    predict_cpu_seconds: f64,
    parameter_count: usize,
    bundle: ModelBundle,
    /// (iteration, loss) trace for the variational models.
    loss_trace: Option<Vec<f64>>,
}

fn run_cell(
    config: &BenchConfig,
    dataset: &Dataset,
    model_id: ModelId,
    fraction: f64,
) -> Result<(CellOutcome, PreparedCell)> {
    let seed = config.seed;
    let prepared = if model_id.is_quantum() {
        prepare_quantum(dataset, fraction, seed, config.feature_map.n_qubits, config.qml_train_cap)?
    } else {
        prepare_classical(dataset, fraction, seed)?
    };
    let fm = FeatureMapSpec { n_qubits: config.feature_map.n_qubits, ..config.feature_map };

    let outcome = match model_id {
        ModelId::Svm => {
            let gamma = config.svm.gamma.unwrap_or_else(|| default_gamma(prepared.train_x[0].len()));
            let t0 = cpu_seconds();
            let k = rbf_kernel_matrix(&prepared.train_x, gamma)?;
            let model = train_svm(&k, &labels_pm(&prepared.train_y), config.svm.c, config.svm.tol, config.svm.max_passes, seed)?;
            let train_time = cpu_seconds() - t0;

            let t1 = cpu_seconds();
            let rows = rbf_cross_kernel(&prepared.test_x, &prepared.train_x, gamma)?;
            let preds = predict(&model, &rows)?;
            let predict_time = cpu_seconds() - t1;

            CellOutcome {
                test_accuracy: accuracy_pm(&preds, &prepared.test_y),
                train_cpu_seconds: train_time,
                predict_cpu_seconds: predict_time,
                parameter_count: model.support_indices.len() + 1,
                bundle: ModelBundle {
                    model_id,
                    train_fraction: fraction,
                    seed,
                    scaler: prepared.scaler.clone(),
                    selected_columns: prepared.selected_columns.clone(),
                    artifact: ModelArtifact::Svm { model, train_rows: prepared.train_x.clone() },
                },
                loss_trace: None,
            }
        }
        ModelId::Qsvm => {
            let t0 = cpu_seconds();
            let k = kernel_matrix(&prepared.train_x, &fm)?;
            let model = train_svm(&k, &labels_pm(&prepared.train_y), config.svm.c, config.svm.tol, config.svm.max_passes, seed)?;
            let train_time = cpu_seconds() - t0;

            let t1 = cpu_seconds();
            let rows = cross_kernel(&prepared.test_x, &prepared.train_x, &fm)?;
            let preds = predict(&model, &rows)?;
            let predict_time = cpu_seconds() - t1;

            CellOutcome {
                test_accuracy: accuracy_pm(&preds, &prepared.test_y),
                train_cpu_seconds: train_time,
                predict_cpu_seconds: predict_time,
                parameter_count: model.support_indices.len() + 1,
                bundle: ModelBundle {
                    model_id,
                    train_fraction: fraction,
                    seed,
                    scaler: prepared.scaler.clone(),
                    selected_columns: prepared.selected_columns.clone(),
                    artifact: ModelArtifact::Svm { model, train_rows: prepared.train_x.clone() },
                },
                loss_trace: None,
            }
        }
        ModelId::Mlp => {
            let mut sizes = vec![prepared.train_x[0].len()];
            sizes.extend_from_slice(&config.mlp.hidden);
            sizes.push(1);
            let t0 = cpu_seconds();
            let out = mlp_train(
                &prepared.train_x,
                &prepared.train_y,
                &sizes,
                config.mlp.learning_rate,
                config.mlp.epochs,
                config.mlp.batch,
                seed,
            )?;
            let train_time = cpu_seconds() - t0;

            let t1 = cpu_seconds();
            let acc = mlp_accuracy(&out.model, &prepared.test_x, &prepared.test_y)?;
            let predict_time = cpu_seconds() - t1;

            CellOutcome {
                test_accuracy: acc,
                train_cpu_seconds: train_time,
                predict_cpu_seconds: predict_time,
                parameter_count: out.model.parameter_count(),
                bundle: ModelBundle {
                    model_id,
                    train_fraction: fraction,
                    seed,
                    scaler: prepared.scaler.clone(),
                    selected_columns: prepared.selected_columns.clone(),
                    artifact: ModelArtifact::Mlp { model: out.model },
                },
                loss_trace: None,
            }
        }
        ModelId::Vqc | ModelId::Qcnn => {
            let (kind, vc) = if model_id == ModelId::Vqc {
                (VariationalKind::Vqc, &config.vqc)
            } else {
                (VariationalKind::Qcnn, &config.qcnn)
            };
            let train_config = TrainConfig {
                optimizer: vc.optimizer,
                learning_rate: vc.learning_rate,
                iterations: vc.iterations,
                seed,
                spsa: Default::default(),
            };
            let t0 = cpu_seconds();
            let out = vqc_train(&prepared.train_x, &prepared.train_y, kind, &fm, vc.layers, &train_config)?;
            let train_time = cpu_seconds() - t0;

            let t1 = cpu_seconds();
            let acc = vqc_accuracy(&out.model, &prepared.test_x, &prepared.test_y)?;
            let predict_time = cpu_seconds() - t1;
            let trace = out.loss_trace;

            CellOutcome {
                test_accuracy: acc,
                train_cpu_seconds: train_time,
                predict_cpu_seconds: predict_time,
                parameter_count: out.model.theta.len(),
                bundle: ModelBundle {
                    model_id,
                    train_fraction: fraction,
                    seed,
                    scaler: prepared.scaler.clone(),
                    selected_columns: prepared.selected_columns.clone(),
                    artifact: ModelArtifact::Variational { model: out.model },
                },
                loss_trace: Some(trace),
            }
        }
    };
    Ok((outcome, prepared))
}

fn memory_fields(model_id: ModelId, n_qubits: usize) -> (Option<u64>, MemoryKind) {
    match peak_memory_bytes() {
        Some(bytes) => (Some(bytes), MemoryKind::Measured),
        None if model_id.is_quantum() => (
            Some(theoretical_statevector_bytes(n_qubits)),
            MemoryKind::Theoretical,
        ),
        None => (None, MemoryKind::Unavailable),
    }
}

/// Run every configured (model, fraction) cell. Per-model failures are
/// isolated: the failed cell becomes a row with its `error` field set and
/// the run continues.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;
    let (dataset, rejected) = config.load_dataset()?;
    if rejected > 0 {
        eprintln!("note: {rejected} CSV row(s) rejected during ingestion");
    }
    let config_hash = config.hash();
    let out_dir = PathBuf::from(&config.output_dir);
    fs::create_dir_all(&out_dir)?;

    let mut cells: Vec<(ModelId, f64)> = Vec::new();
    for &model in &config.models {
        for &fraction in &config.fractions {
            cells.push((model, fraction));
        }
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.partial_cmp(&b.1).unwrap()));

    let mut rows = Vec::with_capacity(cells.len());
    for (model_id, fraction) in cells {
        let n_qubits = config.feature_map.n_qubits;
        match run_cell(config, &dataset, model_id, fraction) {
            Ok((outcome, prepared)) => {
                let (peak, memory_kind) = memory_fields(model_id, n_qubits);
                let bundle_path = out_dir.join(format!(
                    "model_{}_f{:.2}.json",
                    model_id.as_str(),
                    fraction
                ));
                fs::write(&bundle_path, serde_json::to_string_pretty(&outcome.bundle)?)?;
                if let Some(trace) = &outcome.loss_trace {
                    let mut text = String::from("iteration,loss\n");
                    for (i, loss) in trace.iter().enumerate() {
                        text.push_str(&format!("{i},{loss}\n"));
                    }
                    let trace_path = out_dir.join(format!(
                        "loss_{}_f{:.2}.csv",
                        model_id.as_str(),
                        fraction
                    ));
                    fs::write(&trace_path, text)?;
                }
                rows.push(BenchRow {
                    model: model_id,
                    train_fraction: fraction,
                    test_accuracy: Some(outcome.test_accuracy),
                    train_cpu_seconds: Some(outcome.train_cpu_seconds),
                    predict_cpu_seconds: Some(outcome.predict_cpu_seconds),
                    peak_memory_bytes: peak,
                    memory_kind,
                    n_qubits: model_id.is_quantum().then_some(n_qubits),
                    parameter_count: Some(outcome.parameter_count),
                    train_rows_used: prepared.train_y.len(),
                    subsample_cap: prepared.subsample_cap,
                    seed: config.seed,
                    config_hash: config_hash.clone(),
                    error: None,
                });
            }
            Err(e) => {
                let (peak, memory_kind) = memory_fields(model_id, n_qubits);
                rows.push(BenchRow {
                    model: model_id,
                    train_fraction: fraction,
                    test_accuracy: None,
                    train_cpu_seconds: None,
                    predict_cpu_seconds: None,
                    peak_memory_bytes: peak,
                    memory_kind,
                    n_qubits: model_id.is_quantum().then_some(n_qubits),
                    parameter_count: None,
                    train_rows_used: 0,
                    subsample_cap: None,
                    seed: config.seed,
                    config_hash: config_hash.clone(),
                    error: Some(e.to_string()),
                });
            }
        }
    }
    Ok(BenchReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash,
        rows,
    })
}

/// Fraction sweep: like [`run_benchmark`] but over the full default grid
/// 0.1…0.9 when the config names fewer than two fractions.
pub fn sweep_fractions(config: &BenchConfig) -> Result<BenchReport> {
    let mut config = config.clone();
    if config.fractions.len() < 2 {
        config.fractions = (1..=9).map(|i| i as f64 / 10.0).collect();
    }
    run_benchmark(&config)
}

/// Train one model at the first configured fraction and probe it: FGSM
/// sweep always, noise degradation for the variational models (or when
/// `force_noise` insists, which is a model-kind error for classical ones).
pub fn attack_model(
    config: &BenchConfig,
    model_id: ModelId,
    force_noise: bool,
) -> Result<Vec<AttackReport>> {
    config.validate()?;
    let (dataset, _) = config.load_dataset()?;
    let fraction = config.fractions[0];
    let (outcome, prepared) = run_cell(config, &dataset, model_id, fraction)?;

    let mut reports = Vec::new();
    let id = model_id.as_str();
    match &outcome.bundle.artifact {
        ModelArtifact::Svm { model, train_rows } => {
            let classifier = SvmClassifier { model, train_rows };
            reports.extend(robustness_sweep(
                &classifier,
                id,
                &prepared.test_x,
                &prepared.test_y,
                &config.attack.epsilons,
                config.seed,
            )?);
            if force_noise {
                return Err(Error::ModelKind(format!(
                    "noise degradation needs a variational quantum model, '{id}' is kernel-based"
                )));
            }
        }
        ModelArtifact::Mlp { model } => {
            reports.extend(robustness_sweep(
                model,
                id,
                &prepared.test_x,
                &prepared.test_y,
                &config.attack.epsilons,
                config.seed,
            )?);
            if force_noise {
                return Err(Error::ModelKind(format!(
                    "noise degradation needs a variational quantum model, '{id}' is classical"
                )));
            }
        }
        ModelArtifact::Variational { model } => {
            reports.extend(robustness_sweep(
                model as &dyn Classifier,
                id,
                &prepared.test_x,
                &prepared.test_y,
                &config.attack.epsilons,
                config.seed,
            )?);
            reports.extend(noise_degradation(
                model,
                id,
                &prepared.test_x,
                &prepared.test_y,
                &config.attack.noise_levels,
                config.attack.shots,
                config.seed,
            )?);
        }
    }
    Ok(reports)
}

/// Emit attack reports as JSON plus a flat CSV.
pub fn write_attack_reports(reports: &[AttackReport], model_id: ModelId, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let json_path = out_dir.join(format!("attack_{}.json", model_id.as_str()));
    fs::write(&json_path, serde_json::to_string_pretty(reports)?)?;
    let csv_path = out_dir.join(format!("attack_{}.csv", model_id.as_str()));
    let mut text = String::from("model,kind,level,clean_accuracy,attacked_accuracy,max_perturbation,seed\n");
    for r in reports {
        let (kind, level) = match r.level {
            crate::attack::AttackLevel::Epsilon(e) => ("epsilon", e),
            crate::attack::AttackLevel::NoiseP(p) => ("noise_p", p),
        };
        let max_norm = r
            .perturbation_max_norms
            .iter()
            .cloned()
            .fold(0.0f64, f64::max);
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.model_id, kind, level, r.clean_accuracy, r.attacked_accuracy, max_norm, r.seed
        ));
    }
    fs::write(&csv_path, text)?;
    Ok(vec![json_path, csv_path])
}

/// Compute the quantum Gram matrix of the prepared training rows at the
/// first configured fraction and write it as CSV.
pub fn kernel_dump(config: &BenchConfig, out_dir: &Path) -> Result<PathBuf> {
    config.validate()?;
    let (dataset, _) = config.load_dataset()?;
    let fraction = config.fractions[0];
    let prepared = prepare_quantum(
        &dataset,
        fraction,
        config.seed,
        config.feature_map.n_qubits,
        config.qml_train_cap,
    )?;
    let k = kernel_matrix(&prepared.train_x, &config.feature_map)?;
    fs::create_dir_all(out_dir)?;
    let path = out_dir.join("kernel.csv");
    let mut buf = Vec::new();
    k.write_csv(&mut buf)?;
    fs::write(&path, buf)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blob_config(dir: &Path) -> BenchConfig {
        serde_json::from_value(serde_json::json!({
            "version": 1,
            "data": { "blobs": { "m": 60, "d": 2, "separation": 6.0 } },
            "models": ["svm"],
            "fractions": [0.5],
            "seed": 3,
            "feature_map": { "n_qubits": 2, "depth": 2, "entanglement": "linear", "kind": "zz" },
            "mlp": { "hidden": [8], "epochs": 60, "learning_rate": 0.1, "batch": 0 },
            "output_dir": dir.join("out").to_str().unwrap()
        }))
        .unwrap()
    }

    #[test]
    fn single_cell_produces_one_row() {
        let dir = tempfile::tempdir().unwrap();
        let config = blob_config(dir.path());
        let report = run_benchmark(&config).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.model, ModelId::Svm);
        assert!(row.error.is_none());
        assert!(row.test_accuracy.unwrap() > 0.9); // separation 6 is trivial
        assert_eq!(row.config_hash, report.config_hash);
        assert!(dir.path().join("out").join("model_svm_f0.50.json").exists());
    }

    #[test]
    fn failed_cell_is_isolated() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = blob_config(dir.path());
        // qsvm needs 8 features by default config; blobs give 2 → quantum
        // pipeline errors, svm still reports
        config.models = vec![ModelId::Svm, ModelId::Qsvm];
        config.feature_map.n_qubits = 8;
        let report = run_benchmark(&config).unwrap();
        assert_eq!(report.rows.len(), 2);
        let svm_row = report.rows.iter().find(|r| r.model == ModelId::Svm).unwrap();
        let qsvm_row = report.rows.iter().find(|r| r.model == ModelId::Qsvm).unwrap();
        assert!(svm_row.error.is_none());
        assert!(qsvm_row.error.is_some());
        assert_eq!(qsvm_row.config_hash, report.config_hash);
    }

    #[test]
    fn scaler_sees_training_rows_only() {
        // mutate a test row after splitting: scaler must not change
        let ds = crate::data::synth_blobs(20, 2, 2.0, 5).unwrap();
        let prepared = prepare_classical(&ds, 0.5, 1).unwrap();
        let (train, _) = split(&ds, 0.5, 1, true).unwrap();
        let direct = fit_scaler(&train.features).unwrap();
        assert_eq!(prepared.scaler, direct);

        let mut mutated = ds.clone();
        let (train_m, _) = split(&mutated, 0.5, 1, true).unwrap();
        // find a row not in train and blow it up
        for row in mutated.features.iter_mut() {
            if !train_m.features.contains(row) {
                row[0] = 1e9;
                break;
            }
        }
        let prepared_m = prepare_classical(&mutated, 0.5, 1).unwrap();
        assert_eq!(prepared_m.scaler, prepared.scaler);
    }

    #[test]
    fn quantum_cap_records_subsample() {
        let ds = crate::data::synth_blobs(60, 2, 4.0, 2).unwrap();
        let prepared = prepare_quantum(&ds, 0.5, 0, 2, 10).unwrap();
        assert_eq!(prepared.subsample_cap, Some(10));
        assert!(prepared.train_y.len() <= 11); // rounding keeps it within one
        let uncapped = prepare_quantum(&ds, 0.5, 0, 2, 400).unwrap();
        assert_eq!(uncapped.subsample_cap, None);
    }

    #[test]
    fn determinism_modulo_timing() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = blob_config(dir.path());
        config.models = vec![ModelId::Svm, ModelId::Mlp];
        let a = run_benchmark(&config).unwrap();
        let b = run_benchmark(&config).unwrap();
        assert_eq!(a.config_hash, b.config_hash);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert_eq!(ra.model, rb.model);
            assert_eq!(ra.test_accuracy, rb.test_accuracy);
            assert_eq!(ra.train_rows_used, rb.train_rows_used);
            assert_eq!(ra.parameter_count, rb.parameter_count);
        }
    }

    #[test]
    fn attack_noise_on_classical_is_model_kind_error() {
        let dir = tempfile::tempdir().unwrap();
        let config = blob_config(dir.path());
        let err = attack_model(&config, ModelId::Svm, true).unwrap_err();
        assert!(matches!(err, Error::ModelKind(_)));
    }
}
