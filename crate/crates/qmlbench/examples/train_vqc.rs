//! Train a variational quantum classifier by gradient descent on the
//! parameter-shift gradient and watch the loss fall.
//!
//! Run with: cargo run --release --example train_vqc

use qmlbench::data::{split, synth_adhoc};
use qmlbench::encoding::FeatureMapSpec;
use qmlbench::variational::{accuracy, train, Optimizer, TrainConfig, VariationalKind};

fn main() -> qmlbench::Result<()> {
    let spec = FeatureMapSpec::zz(2);
    let theta_star = [0.9, -1.2, 0.6, 0.4];
    let ds = synth_adhoc(200, &spec, &theta_star, 0.2, 12)?;
    let (train_set, test_set) = split(&ds, 0.5, 12, true)?;

    let config = TrainConfig {
        optimizer: Optimizer::GradientDescent,
        learning_rate: 0.1,
        iterations: 200,
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

    println!("loss trace (every 25 iterations):");
    for (i, loss) in out.loss_trace.iter().enumerate().step_by(25) {
        println!("  iter {i:>3}: {loss:.5}");
    }
    println!("best loss: {:.5}", out.best_loss);
    let train_acc = accuracy(&out.model, &train_set.features, &train_set.labels)?;
    let test_acc = accuracy(&out.model, &test_set.features, &test_set.labels)?;
    println!("train accuracy = {train_acc:.4}");
    println!("test accuracy  = {test_acc:.4}");
    Ok(())
}
