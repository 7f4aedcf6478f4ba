//! Classical multi-layer perceptron baseline: ReLU hidden layers, sigmoid
//! output, binary cross-entropy, plain backpropagation.
//!
//! Training defaults to full-batch gradient descent for determinism;
//! mini-batches are opt-in and use a seeded shuffle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MlpModel {
    /// Input size, hidden sizes…, then 1.
    pub layer_sizes: Vec<usize>,
    /// `weights[l][j][k]`: weight from unit k of layer l to unit j of layer l+1.
    pub weights: Vec<Vec<Vec<f64>>>,
    pub biases: Vec<Vec<f64>>,
}

#[derive(Clone, Debug)]
pub struct MlpTrainOutcome {
    pub model: MlpModel,
    /// Loss of the initial model plus after every epoch.
    pub loss_trace: Vec<f64>,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Per-layer weight gradients, shaped like `MlpModel::weights`.
type WeightGrads = Vec<Vec<Vec<f64>>>;
/// Per-layer vectors: bias gradients, activations, pre-activations.
type LayerValues = Vec<Vec<f64>>;

impl MlpModel {
    /// He-style seeded initialization: weights ~ N(0, 2/fan_in), zero biases.
    pub fn init(layer_sizes: &[usize], seed: u64) -> Result<Self> {
        if layer_sizes.len() < 2 {
            return Err(Error::Parameter("mlp needs input and output layers".into()));
        }
        if *layer_sizes.last().unwrap() != 1 {
            return Err(Error::Parameter("mlp output layer must have size 1".into()));
        }
        if layer_sizes.contains(&0) {
            return Err(Error::Parameter("mlp layer sizes must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weights = Vec::new();
        let mut biases = Vec::new();
        for w in layer_sizes.windows(2) {
            let (fan_in, fan_out) = (w[0], w[1]);
            let std = (2.0 / fan_in as f64).sqrt();
            weights.push(
                (0..fan_out)
                    .map(|_| (0..fan_in).map(|_| rng.sample::<f64, _>(StandardNormal) * std).collect())
                    .collect(),
            );
            biases.push(vec![0.0; fan_out]);
        }
        Ok(MlpModel { layer_sizes: layer_sizes.to_vec(), weights, biases })
    }

    pub fn parameter_count(&self) -> usize {
        self.layer_sizes.windows(2).map(|w| w[0] * w[1] + w[1]).sum()
    }

    /// Pre-activations and activations of every layer (input first).
    fn forward_trace(&self, x: &[f64]) -> Result<(LayerValues, LayerValues)> {
        if x.len() != self.layer_sizes[0] {
            return Err(Error::Dimension {
                expected: self.layer_sizes[0],
                got: x.len(),
                context: "mlp input",
            });
        }
        let n_layers = self.weights.len();
        let mut activations = vec![x.to_vec()];
        let mut pre = Vec::new();
        for l in 0..n_layers {
            let prev = activations.last().unwrap();
            let z: Vec<f64> = self.weights[l]
                .iter()
                .zip(&self.biases[l])
                .map(|(row, b)| row.iter().zip(prev).map(|(w, a)| w * a).sum::<f64>() + b)
                .collect();
            let act: Vec<f64> = if l + 1 == n_layers {
                z.iter().map(|&v| sigmoid(v)).collect()
            } else {
                z.iter().map(|&v| v.max(0.0)).collect()
            };
            pre.push(z);
            activations.push(act);
        }
        Ok((pre, activations))
    }

    pub fn forward(&self, x: &[f64]) -> Result<f64> {
        Ok(self.forward_trace(x)?.1.last().unwrap()[0])
    }

    pub fn predict(&self, x: &[f64]) -> Result<u8> {
        Ok(if self.forward(x)? >= 0.5 { 1 } else { 0 })
    }

    /// Backpropagate one sample. Returns (weight grads, bias grads, input grad)
    /// of the binary cross-entropy; with a sigmoid output the output delta
    /// collapses to p − y.
    fn backprop(&self, x: &[f64], y: u8) -> Result<(WeightGrads, LayerValues, Vec<f64>)> {
        let (pre, acts) = self.forward_trace(x)?;
        let n_layers = self.weights.len();
        let p = acts[n_layers][0];
        let mut delta = vec![p - y as f64];

        let mut w_grads: Vec<Vec<Vec<f64>>> = Vec::with_capacity(n_layers);
        let mut b_grads: Vec<Vec<f64>> = Vec::with_capacity(n_layers);
        for l in (0..n_layers).rev() {
            let prev_act = &acts[l];
            w_grads.push(
                delta
                    .iter()
                    .map(|d| prev_act.iter().map(|a| d * a).collect())
                    .collect(),
            );
            b_grads.push(delta.clone());
            // delta for layer below: Wᵀ·delta masked by ReLU' (or raw for input)
            let mut below: Vec<f64> = (0..self.layer_sizes[l])
                .map(|k| delta.iter().zip(&self.weights[l]).map(|(d, row)| d * row[k]).sum())
                .collect();
            if l > 0 {
                for (v, z) in below.iter_mut().zip(&pre[l - 1]) {
                    if *z <= 0.0 {
                        *v = 0.0;
                    }
                }
            }
            delta = below;
        }
        w_grads.reverse();
        b_grads.reverse();
        Ok((w_grads, b_grads, delta))
    }
}

/// ∂loss/∂x for one sample: the exact backpropagated input gradient.
pub fn mlp_input_gradient(model: &MlpModel, x: &[f64], y: u8) -> Result<Vec<f64>> {
    Ok(model.backprop(x, y)?.2)
}

/// Mean binary cross-entropy over a set.
pub fn mlp_loss(model: &MlpModel, features: &[Vec<f64>], labels: &[u8]) -> Result<f64> {
    let mut total = 0.0;
    for (x, &y) in features.iter().zip(labels) {
        let p = model.forward(x)?.clamp(1e-12, 1.0 - 1e-12);
        total += if y == 1 { -p.ln() } else { -(1.0 - p).ln() };
    }
    Ok(total / features.len().max(1) as f64)
}

/// Mini-batch gradient descent; `batch = 0` or `batch >= m` means full batch.
pub fn mlp_train(
    features: &[Vec<f64>],
    labels: &[u8],
    layer_sizes: &[usize],
    lr: f64,
    epochs: usize,
    batch: usize,
    seed: u64,
) -> Result<MlpTrainOutcome> {
    if lr <= 0.0 {
        return Err(Error::Parameter("learning rate must be > 0".into()));
    }
    let m = features.len();
    if m == 0 {
        return Err(Error::Data("training set is empty".into()));
    }
    let n_pos = labels.iter().filter(|&&y| y == 1).count();
    if n_pos == 0 || n_pos == m {
        return Err(Error::Data("training needs both classes present".into()));
    }
    let mut model = MlpModel::init(layer_sizes, seed)?;
    let mut trace = vec![mlp_loss(&model, features, labels)?];
    let batch = if batch == 0 { m } else { batch.min(m) };
    let mut order: Vec<usize> = (0..m).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));

    for epoch in 1..=epochs {
        if batch < m {
            // Fisher-Yates with the epoch-stream rng keeps runs reproducible
            for i in (1..m).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
        }
        for chunk in order.chunks(batch) {
            let mut w_acc: Vec<Vec<Vec<f64>>> = model
                .weights
                .iter()
                .map(|l| l.iter().map(|r| vec![0.0; r.len()]).collect())
                .collect();
            let mut b_acc: Vec<Vec<f64>> =
                model.biases.iter().map(|l| vec![0.0; l.len()]).collect();
            for &i in chunk {
                let (wg, bg, _) = model.backprop(&features[i], labels[i])?;
                for (acc_l, g_l) in w_acc.iter_mut().zip(&wg) {
                    for (acc_r, g_r) in acc_l.iter_mut().zip(g_l) {
                        for (a, g) in acc_r.iter_mut().zip(g_r) {
                            *a += g;
                        }
                    }
                }
                for (acc_l, g_l) in b_acc.iter_mut().zip(&bg) {
                    for (a, g) in acc_l.iter_mut().zip(g_l) {
                        *a += g;
                    }
                }
            }
            let scale = lr / chunk.len() as f64;
            for (w_l, acc_l) in model.weights.iter_mut().zip(&w_acc) {
                for (w_r, acc_r) in w_l.iter_mut().zip(acc_l) {
                    for (w, a) in w_r.iter_mut().zip(acc_r) {
                        *w -= scale * a;
                    }
                }
            }
            for (b_l, acc_l) in model.biases.iter_mut().zip(&b_acc) {
                for (b, a) in b_l.iter_mut().zip(acc_l) {
                    *b -= scale * a;
                }
            }
        }
        let loss = mlp_loss(&model, features, labels)?;
        if !loss.is_finite() {
            return Err(Error::Training { iteration: epoch, message: format!("loss became {loss}") });
        }
        trace.push(loss);
    }
    Ok(MlpTrainOutcome { model, loss_trace: trace })
}

pub fn mlp_accuracy(model: &MlpModel, features: &[Vec<f64>], labels: &[u8]) -> Result<f64> {
    let mut hits = 0usize;
    for (x, &y) in features.iter().zip(labels) {
        if model.predict(x)? == y {
            hits += 1;
        }
    }
    Ok(hits as f64 / labels.len().max(1) as f64)
}
