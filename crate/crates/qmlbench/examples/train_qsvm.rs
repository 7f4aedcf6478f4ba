//! Train a quantum-kernel SVM on quantum-separable synthetic data and
//! evaluate it on a held-out split.
//!
//! Run with: cargo run --release --example train_qsvm

use qmlbench::data::{split, synth_adhoc};
use qmlbench::encoding::FeatureMapSpec;
use qmlbench::kernel::{cross_kernel, kernel_matrix};
use qmlbench::svm::{predict, train_svm};

fn accuracy(preds: &[i8], labels: &[u8]) -> f64 {
    let hits = preds
        .iter()
        .zip(labels)
        .filter(|(&p, &y)| (p == 1) == (y == 1))
        .count();
    hits as f64 / labels.len() as f64
}

fn main() -> qmlbench::Result<()> {
    let spec = FeatureMapSpec::zz(2);
    let theta_star = [0.9, -1.2, 0.6, 0.4];
    let ds = synth_adhoc(200, &spec, &theta_star, 0.2, 12)?;
    let (train, test) = split(&ds, 0.5, 12, true)?;
    println!(
        "dataset: {} train / {} test, classes {:?}",
        train.len(),
        test.len(),
        ds.class_counts()
    );

    let gram = kernel_matrix(&train.features, &spec)?;
    let labels_pm: Vec<i8> = train.labels.iter().map(|&y| if y == 1 { 1 } else { -1 }).collect();
    let model = train_svm(&gram, &labels_pm, 100.0, 1e-4, 10_000, 12)?;
    println!(
        "SMO: {} iterations, converged = {}, {} support vectors",
        model.info.iterations,
        model.info.converged,
        model.support_indices.len()
    );

    let train_rows: Vec<Vec<f64>> = (0..gram.m()).map(|i| gram.row(i).to_vec()).collect();
    let train_acc = accuracy(&predict(&model, &train_rows)?, &train.labels);
    let test_rows = cross_kernel(&test.features, &train.features, &spec)?;
    let test_acc = accuracy(&predict(&model, &test_rows)?, &test.labels);
    println!("train accuracy = {train_acc:.4}");
    println!("test accuracy  = {test_acc:.4}");
    Ok(())
}
