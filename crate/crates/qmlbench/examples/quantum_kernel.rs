//! Fidelity-kernel Gram matrix on a few points, compared with the RBF
//! kernel, and exported as CSV for external cross-checking.
//!
//! Run with: cargo run --example quantum_kernel

use qmlbench::data::synth_blobs;
use qmlbench::encoding::{fit_scaler, scale_rows, FeatureMapSpec};
use qmlbench::kernel::{kernel_matrix, rbf_kernel_matrix};

fn main() -> qmlbench::Result<()> {
    let ds = synth_blobs(6, 2, 2.0, 11)?;
    let scaler = fit_scaler(&ds.features)?;
    let rows = scale_rows(&scaler, &ds.features)?;

    let spec = FeatureMapSpec::zz(2);
    let quantum = kernel_matrix(&rows, &spec)?;
    let rbf = rbf_kernel_matrix(&rows, 0.5)?;

    println!("quantum fidelity kernel (zz, depth 2):");
    for i in 0..quantum.m() {
        let line: Vec<String> = quantum.row(i).iter().map(|v| format!("{v:.4}")).collect();
        println!("  {}", line.join("  "));
    }
    println!("rbf kernel (gamma 0.5):");
    for i in 0..rbf.m() {
        let line: Vec<String> = rbf.row(i).iter().map(|v| format!("{v:.4}")).collect();
        println!("  {}", line.join("  "));
    }

    let path = std::env::temp_dir().join("qmlbench_kernel_example.csv");
    let mut buf = Vec::new();
    quantum.write_csv(&mut buf)?;
    std::fs::write(&path, buf)?;
    println!("wrote full-precision CSV to {}", path.display());
    Ok(())
}
