//! QCNN parameter scaling: layer-shared convolution and pooling keep the
//! parameter count at 6·log₂(N), and the circuit still trains.
//!
//! Run with: cargo run --release --example qcnn_scaling

use qmlbench::data::synth_adhoc;
use qmlbench::encoding::FeatureMapSpec;
use qmlbench::variational::{
    accuracy, build_qcnn, train, Optimizer, QcnnSpec, TrainConfig, VariationalKind,
};

fn main() -> qmlbench::Result<()> {
    println!("qubits  layers  parameters  gates");
    for n in [2usize, 4, 8, 16] {
        let spec = QcnnSpec::new(n)?;
        let circuit = build_qcnn(&spec)?;
        println!(
            "{n:>6}  {:>6}  {:>10}  {:>5}",
            spec.layers(),
            circuit.n_params(),
            circuit.gates().len()
        );
    }

    // a quick end-to-end training run at N = 4
    let fm = FeatureMapSpec::zz(4);
    let ds = synth_adhoc(120, &fm, &[0.8, -0.5, 1.1, 0.3, -0.9, 0.2, 0.7, -1.3], 0.1, 21)?;
    let config = TrainConfig {
        optimizer: Optimizer::Spsa,
        learning_rate: 0.1,
        iterations: 120,
        seed: 21,
        spsa: Default::default(),
    };
    let out = train(&ds.features, &ds.labels, VariationalKind::Qcnn, &fm, 0, &config)?;
    println!(
        "qcnn N=4: initial loss {:.4} -> best loss {:.4}, train accuracy {:.3}",
        out.loss_trace[0],
        out.best_loss,
        accuracy(&out.model, &ds.features, &ds.labels)?
    );
    Ok(())
}
