//! Config-driven benchmark: sweep training fractions for two models on
//! synthetic data and emit the report files (JSON, CSV, plot data).
//!
//! Run with: cargo run --release --example fraction_sweep

use qmlbench::bench::{emit_report, run_benchmark, BenchConfig, ALL_FORMATS};

fn main() -> qmlbench::Result<()> {
    let out_dir = std::env::temp_dir().join("qmlbench_sweep_example");
    let config: BenchConfig = serde_json::from_value(serde_json::json!({
        "version": 1,
        "data": { "blobs": { "m": 240, "d": 2, "separation": 2.5 } },
        "models": ["svm", "mlp", "qsvm"],
        "fractions": [0.2, 0.5, 0.8],
        "seed": 5,
        "feature_map": { "n_qubits": 2, "depth": 2, "entanglement": "linear", "kind": "zz" },
        "mlp": { "hidden": [8], "epochs": 120, "learning_rate": 0.05, "batch": 0 },
        "output_dir": out_dir.to_str().unwrap()
    }))
    .map_err(qmlbench::Error::from)?;

    let report = run_benchmark(&config)?;
    println!("model  fraction  accuracy  train-cpu-s");
    for row in &report.rows {
        println!(
            "{:>5}  {:>8.1}  {:>8}  {:>11}",
            row.model.as_str(),
            row.train_fraction,
            row.test_accuracy.map(|a| format!("{a:.4}")).unwrap_or_default(),
            row.train_cpu_seconds.map(|t| format!("{t:.4}")).unwrap_or_default(),
        );
    }
    let files = emit_report(&report, &ALL_FORMATS, &out_dir)?;
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
