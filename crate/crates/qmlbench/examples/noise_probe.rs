//! Degrade a trained VQC with stochastic Pauli noise: accuracy falls
//! toward chance as the per-gate error probability rises.
//!
//! Run with: cargo run --release --example noise_probe

use qmlbench::attack::noise_degradation;
use qmlbench::data::{split, synth_adhoc};
use qmlbench::encoding::FeatureMapSpec;
use qmlbench::variational::{train, Optimizer, TrainConfig, VariationalKind};

fn main() -> qmlbench::Result<()> {
    let spec = FeatureMapSpec::zz(2);
    let ds = synth_adhoc(200, &spec, &[0.9, -1.2, 0.6, 0.4], 0.2, 12)?;
    let (train_set, test_set) = split(&ds, 0.5, 12, true)?;
    let config = TrainConfig {
        optimizer: Optimizer::GradientDescent,
        learning_rate: 0.1,
        iterations: 100,
        seed: 12,
        spsa: Default::default(),
    };
    let out = train(
        &train_set.features,
        &train_set.labels,
        VariationalKind::Vqc,
        &spec,
        2,
        &config,
    )?;

    let levels = [0.0, 0.02, 0.05, 0.1, 0.3, 1.0];
    let reports = noise_degradation(
        &out.model,
        "vqc",
        &test_set.features,
        &test_set.labels,
        &levels,
        200,
        12,
    )?;
    println!("noise_p   accuracy   (clean = {:.4})", reports[0].clean_accuracy);
    for r in &reports {
        println!("{:>7.3}   {:.4}", r.level.value(), r.attacked_accuracy);
    }
    Ok(())
}
