//! Benchmark report rows and the machine-readable emitters.
//!
//! Emission is a pure function of the report: re-emitting the same report
//! yields byte-identical files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::ModelId;
use super::metrics::MemoryKind;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub model: ModelId,
    pub train_fraction: f64,
    pub test_accuracy: Option<f64>,
    pub train_cpu_seconds: Option<f64>,
    pub predict_cpu_seconds: Option<f64>,
    pub peak_memory_bytes: Option<u64>,
    pub memory_kind: MemoryKind,
    pub n_qubits: Option<usize>,
    pub parameter_count: Option<usize>,
    /// Rows actually used for training (after the QML subsample cap).
    pub train_rows_used: usize,
    /// The cap that was applied, when it truncated the training set.
    pub subsample_cap: Option<usize>,
    pub seed: u64,
    pub config_hash: String,
    /// Set when this cell failed; the other fields are then absent.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub tool_version: String,
    pub config_hash: String,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn models(&self) -> Vec<ModelId> {
        let mut seen = Vec::new();
        for row in &self.rows {
            if !seen.contains(&row.model) {
                seen.push(row.model);
            }
        }
        seen
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Plotdata,
}

pub const ALL_FORMATS: [ReportFormat; 3] =
    [ReportFormat::Json, ReportFormat::Csv, ReportFormat::Plotdata];

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Write the report in the requested formats; returns the created paths.
/// JSON carries everything; CSV is one flat line per row; plotdata is one
/// two-column (fraction, accuracy) file per model for external plotting.
pub fn emit_report(
    report: &BenchReport,
    formats: &[ReportFormat],
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    if report.rows.is_empty() {
        return Err(Error::Data("refusing to emit an empty report".into()));
    }
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    for format in formats {
        match format {
            ReportFormat::Json => {
                let path = out_dir.join("report.json");
                fs::write(&path, serde_json::to_string_pretty(report)?)?;
                written.push(path);
            }
            ReportFormat::Csv => {
                let path = out_dir.join("report.csv");
                let mut text = String::from(
                    "model,train_fraction,test_accuracy,train_cpu_seconds,predict_cpu_seconds,\
                     peak_memory_bytes,memory_kind,n_qubits,parameter_count,train_rows_used,\
                     subsample_cap,seed,config_hash,error\n",
                );
                for r in &report.rows {
                    text.push_str(&format!(
                        "{},{},{},{},{},{},{:?},{},{},{},{},{},{},{}\n",
                        r.model.as_str(),
                        r.train_fraction,
                        opt(&r.test_accuracy),
                        opt(&r.train_cpu_seconds),
                        opt(&r.predict_cpu_seconds),
                        opt(&r.peak_memory_bytes),
                        r.memory_kind,
                        opt(&r.n_qubits),
                        opt(&r.parameter_count),
                        r.train_rows_used,
                        opt(&r.subsample_cap),
                        r.seed,
                        r.config_hash,
                        r.error.clone().unwrap_or_default().replace(',', ";"),
                    ));
                }
                fs::write(&path, text)?;
                written.push(path);
            }
            ReportFormat::Plotdata => {
                for model in report.models() {
                    let path = out_dir.join(format!("plot_{}.dat", model.as_str()));
                    let mut rows: Vec<&BenchRow> = report
                        .rows
                        .iter()
                        .filter(|r| r.model == model && r.error.is_none())
                        .collect();
                    rows.sort_by(|a, b| a.train_fraction.partial_cmp(&b.train_fraction).unwrap());
                    let mut text = String::from("# train_fraction test_accuracy\n");
                    for r in rows {
                        if let Some(acc) = r.test_accuracy {
                            text.push_str(&format!("{} {}\n", r.train_fraction, acc));
                        }
                    }
                    fs::write(&path, text)?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}
