//! FGSM robustness sweep against a trained MLP: accuracy versus
//! perturbation budget in scaled feature space.
//!
//! Run with: cargo run --release --example fgsm_attack

use std::f64::consts::PI;

use qmlbench::attack::robustness_sweep;
use qmlbench::data::{split, synth_blobs};
use qmlbench::encoding::{fit_scaler, scale_rows};
use qmlbench::mlp::mlp_train;

fn main() -> qmlbench::Result<()> {
    let ds = synth_blobs(400, 2, 2.0, 17)?;
    let (train, test) = split(&ds, 0.5, 17, true)?;
    let scaler = fit_scaler(&train.features)?;
    let train_x = scale_rows(&scaler, &train.features)?;
    let test_x = scale_rows(&scaler, &test.features)?;

    let out = mlp_train(&train_x, &train.labels, &[2, 8, 1], 0.05, 200, 0, 17)?;
    let epsilons = [0.0, 0.05 * PI, 0.1 * PI, 0.2 * PI, 0.3 * PI];
    let reports = robustness_sweep(&out.model, "mlp", &test_x, &test.labels, &epsilons, 17)?;

    println!("epsilon   clean    attacked  worst-norm");
    for r in &reports {
        let worst = r
            .perturbation_max_norms
            .iter()
            .cloned()
            .fold(0.0f64, f64::max);
        println!(
            "{:>7.4}   {:.4}   {:.4}    {worst:.4}",
            r.level.value(),
            r.clean_accuracy,
            r.attacked_accuracy
        );
    }
    Ok(())
}
