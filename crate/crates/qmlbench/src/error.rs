//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Requested state exceeds the simulator's memory guard.
    #[error(
        "cannot allocate a {n_qubits}-qubit statevector: {bytes} bytes required \
         (16·2^n), supported range is 1..=24 qubits"
    )]
    Capacity { n_qubits: usize, bytes: u128 },

    /// A gate still references an unbound parameter slot, or the bound
    /// parameter vector has the wrong length.
    #[error("parameter binding failed: {0}")]
    Binding(String),

    /// Qubit/target index outside the register.
    #[error("index {index} out of range for {n_qubits} qubits")]
    Index { index: usize, n_qubits: usize },

    /// Vector/matrix dimensions do not agree.
    #[error("dimension mismatch: expected {expected}, got {got}{}", ctx_suffix(.context))]
    Dimension {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    /// Scalar argument outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Dataset-level problem (empty, single-class, ...).
    #[error("data error: {0}")]
    Data(String),

    /// CSV file does not match the expected schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// Feature-map input was not scaled into [0, pi].
    #[error("encoding error: {0}")]
    Encoding(String),

    /// Kernel matrix fails a structural requirement (e.g. symmetry).
    #[error("kernel error: {0}")]
    Kernel(String),

    /// Optimizer produced a non-finite loss.
    #[error("training diverged at iteration {iteration}: {message}")]
    Training { iteration: usize, message: String },

    /// Synthetic generator could not satisfy its constraints.
    #[error("generation error: {0}")]
    Generation(String),

    /// A classical model was passed where a quantum one is required.
    #[error("model-kind error: {0}")]
    ModelKind(String),

    /// Benchmark configuration rejected; all problems listed.
    #[error("invalid config:\n{}", .0.join("\n"))]
    Config(Vec<String>),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

fn ctx_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
