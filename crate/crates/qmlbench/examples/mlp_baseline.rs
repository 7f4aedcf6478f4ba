//! Train the classical MLP baseline on Gaussian blobs.
//!
//! Run with: cargo run --release --example mlp_baseline

use qmlbench::data::{split, synth_blobs};
use qmlbench::encoding::{fit_scaler, scale_rows};
use qmlbench::mlp::{mlp_accuracy, mlp_train};

fn main() -> qmlbench::Result<()> {
    let ds = synth_blobs(200, 2, 2.0, 31)?;
    let (train, test) = split(&ds, 0.5, 31, true)?;
    let scaler = fit_scaler(&train.features)?;
    let train_x = scale_rows(&scaler, &train.features)?;
    let test_x = scale_rows(&scaler, &test.features)?;

    let out = mlp_train(&train_x, &train.labels, &[2, 8, 1], 0.05, 200, 0, 31)?;
    println!(
        "loss: initial {:.4} -> final {:.4} over {} epochs",
        out.loss_trace[0],
        out.loss_trace.last().unwrap(),
        out.loss_trace.len() - 1
    );
    println!(
        "train accuracy = {:.4}",
        mlp_accuracy(&out.model, &train_x, &train.labels)?
    );
    println!(
        "test accuracy  = {:.4}",
        mlp_accuracy(&out.model, &test_x, &test.labels)?
    );
    println!("parameters: {}", out.model.parameter_count());
    Ok(())
}
