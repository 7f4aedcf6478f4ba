//! Quantum vs classical machine-learning benchmark toolkit.
//!
//! Implements three quantum model families on an exact statevector
//! simulator — the fidelity-kernel SVM (QSVM), a variational quantum
//! classifier (VQC) and a quantum convolutional network (QCNN) — next to
//! classical baselines (RBF-kernel SVM via SMO, and an MLP), plus the
//! harness to compare them: training-fraction sweeps, CPU-time and memory
//! accounting, FGSM adversarial probes and quantum-noise degradation.
//!
//! Start with the runnable examples (`cargo run --example <name>`) or the
//! `qmlbench` binary; the library surface mirrors the pipeline:
//!
//! - [`sim`] — statevector simulation of parameterized circuits
//! - [`encoding`] — scaling, feature ranking, quantum feature maps
//! - [`kernel`] — fidelity and RBF Gram matrices
//! - [`svm`] — SMO-trained SVM on any precomputed kernel
//! - [`variational`] — VQC/QCNN ansätze, parameter-shift gradients, training
//! - [`mlp`] — classical MLP baseline with backpropagation
//! - [`data`] — CSV ingestion, stratified splits, synthetic generators
//! - [`attack`] — FGSM and noise robustness probes
//! - [`bench`] — config-driven benchmark runs and reports

pub mod attack;
pub mod bench;
pub mod data;
pub mod encoding;
pub mod error;
pub mod kernel;
pub mod mlp;
pub mod sim;
pub mod svm;
pub mod variational;

pub use error::{Error, Result};
