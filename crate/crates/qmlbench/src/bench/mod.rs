//! Benchmark harness: configuration, execution, measurement, reporting
//! and the command-line surface.

pub mod cli;
mod config;
mod metrics;
mod report;
mod runner;

pub use config::{
    AdhocConfig, AttackConfig, BenchConfig, BlobsConfig, DataConfig, MlpConfig, ModelId,
    SchemaDescriptor, SvmConfig, VariationalConfig, CONFIG_VERSION, DATA_ENV_VAR,
};
pub use metrics::{cpu_seconds, peak_memory_bytes, theoretical_statevector_bytes, MemoryKind};
pub use report::{emit_report, BenchReport, BenchRow, ReportFormat, ALL_FORMATS};
pub use runner::{
    attack_model, kernel_dump, run_benchmark, sweep_fractions, write_attack_reports,
    ModelArtifact, ModelBundle,
};
