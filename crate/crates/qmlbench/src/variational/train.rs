//! Optimizer loop for the variational models: plain gradient descent on
//! the parameter-shift gradient, or SPSA with the standard decaying
//! schedule (two cost evaluations per step regardless of dimension).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{build_ansatz, build_qcnn, cost, grad_parameter_shift, QcnnSpec, VariationalKind, VqcModel};
use crate::encoding::FeatureMapSpec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimizer {
    GradientDescent,
    Spsa,
}

/// SPSA gain schedule: a_k = a/(k+A)^alpha, c_k = c/k^gamma.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpsaSchedule {
    pub a: f64,
    pub c: f64,
    pub big_a: f64,
    pub alpha: f64,
    pub gamma: f64,
}

impl Default for SpsaSchedule {
    fn default() -> Self {
        SpsaSchedule { a: 0.2, c: 0.1, big_a: 20.0, alpha: 0.602, gamma: 0.101 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub optimizer: Optimizer,
    pub learning_rate: f64,
    pub iterations: usize,
    pub seed: u64,
    pub spsa: SpsaSchedule,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            optimizer: Optimizer::GradientDescent,
            learning_rate: 0.1,
            iterations: 100,
            seed: 0,
            spsa: SpsaSchedule::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrainOutcome {
    /// Model carrying the best-loss θ seen during the run.
    pub model: VqcModel,
    /// Loss before training plus after every step (`iterations + 1` values).
    pub loss_trace: Vec<f64>,
    pub best_loss: f64,
}

/// One SPSA update. Deterministic for fixed (seed, k): the Rademacher
/// perturbation is drawn from a stream keyed by the iteration index.
pub fn spsa_step(
    theta: &[f64],
    cost_fn: impl Fn(&[f64]) -> Result<f64>,
    k: usize,
    schedule: &SpsaSchedule,
    seed: u64,
) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::Parameter("spsa iteration index starts at 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    let delta: Vec<f64> = (0..theta.len())
        .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect();
    let ck = schedule.c / (k as f64).powf(schedule.gamma);
    let ak = schedule.a / (k as f64 + schedule.big_a).powf(schedule.alpha);
    let plus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t + ck * d).collect();
    let minus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t - ck * d).collect();
    let diff = cost_fn(&plus)? - cost_fn(&minus)?;
    // 1/Δᵢ = Δᵢ for Rademacher perturbations
    Ok(theta
        .iter()
        .zip(&delta)
        .map(|(t, d)| t - ak * diff / (2.0 * ck) * d)
        .collect())
}

/// Train a VQC or QCNN on scaled features. θ₀ ~ Uniform(−π, π) seeded;
/// returns the best-loss parameters and the full loss trace.
pub fn train(
    features: &[Vec<f64>],
    labels: &[u8],
    kind: VariationalKind,
    feature_map: &FeatureMapSpec,
    ansatz_layers: usize,
    config: &TrainConfig,
) -> Result<TrainOutcome> {
    if config.iterations == 0 {
        return Err(Error::Parameter("iterations must be >= 1".into()));
    }
    if config.learning_rate <= 0.0 {
        return Err(Error::Parameter("learning rate must be > 0".into()));
    }
    let n_pos = labels.iter().filter(|&&y| y == 1).count();
    if n_pos == 0 || n_pos == labels.len() {
        return Err(Error::Data("training needs both classes present".into()));
    }
    let ansatz = match kind {
        VariationalKind::Vqc => build_ansatz(feature_map.n_qubits, ansatz_layers)?,
        VariationalKind::Qcnn => build_qcnn(&QcnnSpec::new(feature_map.n_qubits)?)?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let theta0: Vec<f64> = (0..ansatz.n_params()).map(|_| rng.gen_range(-PI..PI)).collect();
    let mut model = VqcModel::new(theta0, ansatz, *feature_map, 0, kind)?;

    let mut loss = cost(&model, features, labels)?;
    let mut trace = vec![loss];
    let mut best_theta = model.theta.clone();
    let mut best_loss = loss;

    for iter in 1..=config.iterations {
        match config.optimizer {
            Optimizer::GradientDescent => {
                let grad = grad_parameter_shift(&model, features, labels)?;
                for (t, g) in model.theta.iter_mut().zip(&grad) {
                    *t -= config.learning_rate * g;
                }
            }
            Optimizer::Spsa => {
                let probe = model.clone();
                model.theta = spsa_step(
                    &model.theta,
                    |th| {
                        let mut m = probe.clone();
                        m.theta = th.to_vec();
                        cost(&m, features, labels)
                    },
                    iter,
                    &config.spsa,
                    config.seed,
                )?;
            }
        }
        loss = cost(&model, features, labels)?;
        if !loss.is_finite() {
            return Err(Error::Training {
                iteration: iter,
                message: format!("loss became {loss}"),
            });
        }
        trace.push(loss);
        if loss < best_loss {
            best_loss = loss;
            best_theta = model.theta.clone();
        }
    }
    model.theta = best_theta;
    Ok(TrainOutcome { model, loss_trace: trace, best_loss })
}

/// Fraction of correct 0/1 predictions.
pub fn accuracy(model: &VqcModel, features: &[Vec<f64>], labels: &[u8]) -> Result<f64> {
    let hits: usize = features
        .iter()
        .zip(labels)
        .map(|(x, &y)| Ok(usize::from(model.predict(x)? == y)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(hits as f64 / labels.len().max(1) as f64)
}
