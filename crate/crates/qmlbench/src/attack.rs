//! Security probes: FGSM adversarial perturbations under a max-norm
//! budget, and quantum-noise degradation of variational models.
//!
//! Attacks run in scaled feature space ([0, π] per coordinate) so quantum
//! and classical models face identical budgets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::{kernel_entry, KernelProvenance};
use crate::mlp::{mlp_input_gradient, MlpModel};
use crate::sim::noisy_expectation_z;
use crate::svm::{decision_value, SvmModel};
use crate::variational::VqcModel;

const FD_STEP: f64 = 1e-4;

/// Anything FGSM can attack: a 0/1 classifier with a scalar loss over
/// scaled inputs. Models without an analytic input gradient fall back to
/// central finite differences on the loss, clamped to the scaled range at
/// the boundary.
pub trait Classifier: Sync {
    fn dim(&self) -> usize;
    fn predict_label(&self, x: &[f64]) -> Result<u8>;
    fn attack_loss(&self, x: &[f64], y: u8) -> Result<f64>;

    fn input_gradient(&self, x: &[f64], y: u8) -> Result<Vec<f64>> {
        finite_difference_gradient(|p| self.attack_loss(p, y), x, FD_STEP)
    }
}

/// Central finite differences with boundary-aware probe points.
pub fn finite_difference_gradient(
    f: impl Fn(&[f64]) -> Result<f64>,
    x: &[f64],
    h: f64,
) -> Result<Vec<f64>> {
    let mut grad = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[j] = (x[j] + h).min(PI);
        xm[j] = (x[j] - h).max(0.0);
        let span = xp[j] - xm[j];
        if span == 0.0 {
            grad.push(0.0);
            continue;
        }
        grad.push((f(&xp)? - f(&xm)?) / span);
    }
    Ok(grad)
}

impl Classifier for MlpModel {
    fn dim(&self) -> usize {
        self.layer_sizes[0]
    }

    fn predict_label(&self, x: &[f64]) -> Result<u8> {
        self.predict(x)
    }

    fn attack_loss(&self, x: &[f64], y: u8) -> Result<f64> {
        crate::mlp::mlp_loss(self, &[x.to_vec()], &[y])
    }

    // exact backpropagated gradient, no numeric differentiation
    fn input_gradient(&self, x: &[f64], y: u8) -> Result<Vec<f64>> {
        mlp_input_gradient(self, x, y)
    }
}

impl Classifier for VqcModel {
    fn dim(&self) -> usize {
        self.feature_map.n_qubits
    }

    fn predict_label(&self, x: &[f64]) -> Result<u8> {
        self.predict(x)
    }

    fn attack_loss(&self, x: &[f64], y: u8) -> Result<f64> {
        crate::variational::cost(self, &[x.to_vec()], &[y])
    }
}

/// SVM bundled with what it needs to evaluate a decision at a fresh point:
/// the scaled training rows and the kernel provenance.
pub struct SvmClassifier<'a> {
    pub model: &'a SvmModel,
    pub train_rows: &'a [Vec<f64>],
}

impl SvmClassifier<'_> {
    fn kernel_row(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self.model.provenance {
            KernelProvenance::Quantum(spec) => self
                .train_rows
                .iter()
                .map(|r| kernel_entry(x, r, &spec))
                .collect(),
            KernelProvenance::Rbf { gamma } => Ok(self
                .train_rows
                .iter()
                .map(|r| {
                    let d2: f64 = x.iter().zip(r).map(|(a, b)| (a - b) * (a - b)).sum();
                    (-gamma * d2).exp()
                })
                .collect()),
        }
    }

    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        decision_value(self.model, &self.kernel_row(x)?)
    }
}

impl Classifier for SvmClassifier<'_> {
    fn dim(&self) -> usize {
        self.train_rows.first().map_or(0, Vec::len)
    }

    fn predict_label(&self, x: &[f64]) -> Result<u8> {
        Ok(u8::from(self.decision(x)? >= 0.0))
    }

    /// Margin loss −y±·f(x): increasing it pushes x across the boundary.
    fn attack_loss(&self, x: &[f64], y: u8) -> Result<f64> {
        let y_pm = if y == 1 { 1.0 } else { -1.0 };
        Ok(-y_pm * self.decision(x)?)
    }
}

/// Single-step FGSM: x + ε·sign(∂loss/∂x), clamped to the scaled range.
/// The max-norm of the perturbation never exceeds ε.
pub fn fgsm(model: &dyn Classifier, x: &[f64], y: u8, epsilon: f64) -> Result<Vec<f64>> {
    if epsilon < 0.0 {
        return Err(Error::Parameter(format!("epsilon must be >= 0, got {epsilon}")));
    }
    if epsilon == 0.0 {
        return Ok(x.to_vec());
    }
    let grad = model.input_gradient(x, y)?;
    Ok(x.iter()
        .zip(&grad)
        .map(|(&v, &g)| {
            let step = if g > 0.0 {
                epsilon
            } else if g < 0.0 {
                -epsilon
            } else {
                0.0
            };
            (v + step).clamp(0.0, PI)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackLevel {
    Epsilon(f64),
    NoiseP(f64),
}

impl AttackLevel {
    pub fn value(self) -> f64 {
        match self {
            AttackLevel::Epsilon(v) | AttackLevel::NoiseP(v) => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub model_id: String,
    pub level: AttackLevel,
    pub clean_accuracy: f64,
    pub attacked_accuracy: f64,
    /// ‖x_adv − x‖∞ per sample; empty for noise probes.
    pub perturbation_max_norms: Vec<f64>,
    pub seed: u64,
}

fn clean_accuracy(model: &dyn Classifier, features: &[Vec<f64>], labels: &[u8]) -> Result<f64> {
    let mut hits = 0usize;
    for (x, &y) in features.iter().zip(labels) {
        if model.predict_label(x)? == y {
            hits += 1;
        }
    }
    Ok(hits as f64 / labels.len() as f64)
}

/// FGSM accuracy sweep over a list of budgets. The ε = 0 entry reproduces
/// the clean accuracy exactly.
pub fn robustness_sweep(
    model: &dyn Classifier,
    model_id: &str,
    features: &[Vec<f64>],
    labels: &[u8],
    epsilons: &[f64],
    seed: u64,
) -> Result<Vec<AttackReport>> {
    if features.is_empty() {
        return Err(Error::Data("robustness sweep needs a nonempty test set".into()));
    }
    let clean = clean_accuracy(model, features, labels)?;
    let mut reports = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let adv: Vec<Vec<f64>> = features
            .par_iter()
            .zip(labels.par_iter())
            .map(|(x, &y)| fgsm(model, x, y, eps))
            .collect::<Result<_>>()?;
        let norms: Vec<f64> = adv
            .iter()
            .zip(features)
            .map(|(a, x)| {
                a.iter()
                    .zip(x)
                    .map(|(u, v)| (u - v).abs())
                    .fold(0.0f64, f64::max)
            })
            .collect();
        let mut hits = 0usize;
        for (x_adv, &y) in adv.iter().zip(labels) {
            if model.predict_label(x_adv)? == y {
                hits += 1;
            }
        }
        reports.push(AttackReport {
            model_id: model_id.to_string(),
            level: AttackLevel::Epsilon(eps),
            clean_accuracy: clean,
            attacked_accuracy: hits as f64 / labels.len() as f64,
            perturbation_max_norms: norms,
            seed,
        });
    }
    Ok(reports)
}

fn mix_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed
        ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ b.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Accuracy of a variational model when the exact readout is replaced by
/// stochastic Pauli-noise trajectories at each noise level.
pub fn noise_degradation(
    model: &VqcModel,
    model_id: &str,
    features: &[Vec<f64>],
    labels: &[u8],
    noise_levels: &[f64],
    shots: usize,
    seed: u64,
) -> Result<Vec<AttackReport>> {
    if features.is_empty() {
        return Err(Error::Data("noise probe needs a nonempty test set".into()));
    }
    if shots < 100 {
        return Err(Error::Parameter(format!("noise probe needs shots >= 100, got {shots}")));
    }
    let clean = clean_accuracy(model, features, labels)?;
    let mut reports = Vec::with_capacity(noise_levels.len());
    for (li, &p) in noise_levels.iter().enumerate() {
        let preds: Vec<u8> = features
            .par_iter()
            .enumerate()
            .map(|(i, x)| {
                let circuit = model.composed_circuit(x)?;
                let z = noisy_expectation_z(
                    &circuit,
                    &model.theta,
                    model.readout_qubit,
                    p,
                    shots,
                    mix_seed(seed, li as u64, i as u64),
                )?;
                Ok(u8::from(z >= 0.0))
            })
            .collect::<Result<_>>()?;
        let hits = preds.iter().zip(labels).filter(|(p, y)| p == y).count();
        reports.push(AttackReport {
            model_id: model_id.to_string(),
            level: AttackLevel::NoiseP(p),
            clean_accuracy: clean,
            attacked_accuracy: hits as f64 / labels.len() as f64,
            perturbation_max_norms: Vec::new(),
            seed,
        });
    }
    Ok(reports)
}
