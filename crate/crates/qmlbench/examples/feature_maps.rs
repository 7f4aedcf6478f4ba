//! Preprocessing pipeline: fit a scaler on training rows, scale into
//! [0, π], rank features against the label, and encode a vector with the
//! ZZ feature map.
//!
//! Run with: cargo run --example feature_maps

use qmlbench::encoding::{
    build_feature_map, fit_scaler, rank_features, reduce, scale, FeatureMapSpec,
};

fn main() -> qmlbench::Result<()> {
    let train = vec![
        vec![60.0, 0.0, 120.0],
        vec![90.0, 1.0, 180.0],
        vec![75.0, 1.0, 150.0],
        vec![65.0, 0.0, 130.0],
    ];
    let labels = vec![0, 1, 1, 0];

    let scaler = fit_scaler(&train)?;
    println!("per-feature (min, max): {:?}", scaler.ranges());
    let scaled = scale(&scaler, &[82.0, 1.0, 140.0])?;
    println!("scaled probe: {scaled:.5?}");

    let ranking = rank_features(&train, &labels)?;
    println!("feature ranking (index, |point-biserial|):");
    for (idx, score) in &ranking {
        println!("  f{idx}: {score:.4}");
    }
    let top2 = reduce(&train, &ranking, 2)?;
    println!("top-2 reduced first row: {:?}", top2[0]);

    let spec = FeatureMapSpec::zz(3);
    let circuit = build_feature_map(&scaled, &spec)?;
    let state = circuit.run(&[])?;
    println!(
        "zz feature map: {} gates on {} qubits, state norm² = {:.12}",
        circuit.gates().len(),
        circuit.n_qubits(),
        state.norm_sqr()
    );
    Ok(())
}
