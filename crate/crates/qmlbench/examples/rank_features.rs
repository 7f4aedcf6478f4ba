//! Rank the features of the bundled 40-row fixture (schema-compatible
//! with the 2,149-patient Alzheimer's CSV) by |point-biserial correlation|
//! with the diagnosis label.
//!
//! Run with: cargo run --example rank_features

use std::path::Path;

use qmlbench::data::load_csv;
use qmlbench::encoding::rank_features;

fn main() -> qmlbench::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/alzheimers_fixture_40.csv");
    let drops = vec!["PatientID".to_string(), "DoctorInCharge".to_string()];
    let load = load_csv(&path, "Diagnosis", &drops)?;
    println!(
        "{} rows, {} features ({} rejected)",
        load.dataset.len(),
        load.dataset.dim(),
        load.rejected_rows
    );
    let ranking = rank_features(&load.dataset.features, &load.dataset.labels)?;
    println!("top 10 features:");
    for (idx, score) in ranking.iter().take(10) {
        println!("  {:<26} {score:.4}", load.dataset.feature_names[*idx]);
    }
    Ok(())
}
