//! Variational quantum classifiers: forward evaluation, binary
//! cross-entropy cost and exact parameter-shift gradients.
//!
//! A model is a fully bound feature map followed by a parameterized ansatz;
//! the readout is ⟨Z⟩ on one qubit mapped to a probability (1+⟨Z⟩)/2.

mod ansatz;
mod train;

pub use ansatz::{build_ansatz, build_qcnn, QcnnSpec};
pub use train::{accuracy, spsa_step, train, Optimizer, SpsaSchedule, TrainConfig, TrainOutcome};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::encoding::{build_feature_map, FeatureMapSpec};
use crate::error::{Error, Result};
use crate::sim::{Angle, Circuit, Gate, GateKind, Statevector};

const PROB_CLAMP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariationalKind {
    Vqc,
    Qcnn,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VqcModel {
    pub theta: Vec<f64>,
    pub ansatz: Circuit,
    pub feature_map: FeatureMapSpec,
    pub readout_qubit: usize,
    pub kind: VariationalKind,
}

impl VqcModel {
    pub fn new(
        theta: Vec<f64>,
        ansatz: Circuit,
        feature_map: FeatureMapSpec,
        readout_qubit: usize,
        kind: VariationalKind,
    ) -> Result<Self> {
        if theta.len() != ansatz.n_params() {
            return Err(Error::Binding(format!(
                "theta has {} entries but the ansatz declares {} parameter slot(s)",
                theta.len(),
                ansatz.n_params()
            )));
        }
        if ansatz.n_qubits() != feature_map.n_qubits {
            return Err(Error::Dimension {
                expected: feature_map.n_qubits,
                got: ansatz.n_qubits(),
                context: "ansatz register vs feature map",
            });
        }
        if readout_qubit >= ansatz.n_qubits() {
            return Err(Error::Index { index: readout_qubit, n_qubits: ansatz.n_qubits() });
        }
        Ok(VqcModel { theta, ansatz, feature_map, readout_qubit, kind })
    }

    pub fn n_qubits(&self) -> usize {
        self.ansatz.n_qubits()
    }

    /// The encoded state before the ansatz.
    fn encode(&self, x: &[f64]) -> Result<Statevector> {
        build_feature_map(x, &self.feature_map)?.run(&[])
    }

    /// ⟨Z_readout⟩ after feature map and ansatz.
    pub fn z_value(&self, x: &[f64]) -> Result<f64> {
        let mut state = self.encode(x)?;
        self.ansatz.apply_to(&mut state, &self.theta)?;
        state.expectation_z(self.readout_qubit)
    }

    /// Class-1 probability (1 + ⟨Z⟩)/2 ∈ [0, 1].
    pub fn forward(&self, x: &[f64]) -> Result<f64> {
        Ok((1.0 + self.z_value(x)?) / 2.0)
    }

    /// Threshold at 0.5; an exact 0.5 maps to class 1.
    pub fn predict(&self, x: &[f64]) -> Result<u8> {
        Ok(if self.forward(x)? >= 0.5 { 1 } else { 0 })
    }

    /// The full circuit (feature map then ansatz) for one input, with the
    /// ansatz parameters left free. Used by the noise probes.
    pub fn composed_circuit(&self, x: &[f64]) -> Result<Circuit> {
        let mut c = build_feature_map(x, &self.feature_map)?;
        c.extend(&self.ansatz);
        Ok(c)
    }

    /// d⟨Z⟩/dθ for one encoded point, by the parameter-shift rule.
    ///
    /// Slots may feed several gates (QCNN layers share parameters), so each
    /// occurrence is shifted separately and the contributions summed. CRY
    /// occurrences are handled through the exact two-RY decomposition
    /// CRY(t) = [RY(t/2)·target, CX, RY(−t/2)·target, CX], whose halved
    /// angles make the plain ±π/2 rule applicable again.
    pub fn z_gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let bound = self.ansatz.bind(&self.theta)?;
        let base = self.encode(x)?;
        let mut grad = vec![0.0; self.theta.len()];
        for (g_idx, gate) in self.ansatz.gates().iter().enumerate() {
            let Some(slot) = gate.slot() else { continue };
            match gate.kind {
                GateKind::Rx | GateKind::Ry | GateKind::Rz => {
                    let plus = self.eval_shifted(&base, &bound, g_idx, FRAC_PI_2)?;
                    let minus = self.eval_shifted(&base, &bound, g_idx, -FRAC_PI_2)?;
                    grad[slot] += (plus - minus) / 2.0;
                }
                GateKind::Cry => {
                    for (sub, coeff) in [(0usize, 0.5), (1usize, -0.5)] {
                        let plus = self.eval_cry_shifted(&base, &bound, g_idx, sub, FRAC_PI_2)?;
                        let minus = self.eval_cry_shifted(&base, &bound, g_idx, sub, -FRAC_PI_2)?;
                        grad[slot] += coeff * (plus - minus) / 2.0;
                    }
                }
                // angle-free kinds cannot depend on the slot
                _ => {}
            }
        }
        Ok(grad)
    }

    fn eval_shifted(
        &self,
        base: &Statevector,
        bound: &[Gate],
        g_idx: usize,
        delta: f64,
    ) -> Result<f64> {
        let mut state = base.clone();
        for (k, gate) in bound.iter().enumerate() {
            if k == g_idx {
                let Some(Angle::Fixed(a)) = gate.angle else {
                    return Err(Error::Binding("shifted gate must be bound".into()));
                };
                let mut g = gate.clone();
                g.angle = Some(Angle::Fixed(a + delta));
                state.apply_gate(&g)?;
            } else {
                state.apply_gate(gate)?;
            }
        }
        state.expectation_z(self.readout_qubit)
    }

    fn eval_cry_shifted(
        &self,
        base: &Statevector,
        bound: &[Gate],
        g_idx: usize,
        sub: usize,
        delta: f64,
    ) -> Result<f64> {
        let mut state = base.clone();
        for (k, gate) in bound.iter().enumerate() {
            if k == g_idx {
                let Some(Angle::Fixed(a)) = gate.angle else {
                    return Err(Error::Binding("shifted gate must be bound".into()));
                };
                let (ctrl, tgt) = (gate.targets[0], gate.targets[1]);
                let first = a / 2.0 + if sub == 0 { delta } else { 0.0 };
                let second = -a / 2.0 + if sub == 1 { delta } else { 0.0 };
                state.apply_gate(&Gate::ry(tgt, Angle::Fixed(first)))?;
                state.apply_gate(&Gate::cx(ctrl, tgt))?;
                state.apply_gate(&Gate::ry(tgt, Angle::Fixed(second)))?;
                state.apply_gate(&Gate::cx(ctrl, tgt))?;
            } else {
                state.apply_gate(gate)?;
            }
        }
        state.expectation_z(self.readout_qubit)
    }
}

/// Mean binary cross-entropy of the model over a labelled set, with the
/// probability clamped away from {0, 1}.
pub fn cost(model: &VqcModel, features: &[Vec<f64>], labels: &[u8]) -> Result<f64> {
    validate_set(features, labels)?;
    let probs: Vec<f64> = features
        .par_iter()
        .map(|x| model.forward(x))
        .collect::<Result<_>>()?;
    Ok(probs
        .iter()
        .zip(labels)
        .map(|(&p, &y)| bce(p, y))
        .sum::<f64>()
        / labels.len() as f64)
}

fn bce(p: f64, y: u8) -> f64 {
    let p = p.clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
    if y == 1 {
        -p.ln()
    } else {
        -(1.0 - p).ln()
    }
}

/// Exact gradient of [`cost`] with respect to θ: parameter-shift on ⟨Z⟩
/// chained through the cross-entropy analytically.
pub fn grad_parameter_shift(
    model: &VqcModel,
    features: &[Vec<f64>],
    labels: &[u8],
) -> Result<Vec<f64>> {
    validate_set(features, labels)?;
    let per_point: Vec<(f64, Vec<f64>)> = features
        .par_iter()
        .zip(labels.par_iter())
        .map(|(x, &y)| {
            let p = model.forward(x)?.clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
            // dL/dp · dp/d⟨Z⟩ with dp/d⟨Z⟩ = 1/2
            let chain = (p - y as f64) / (p * (1.0 - p)) / 2.0;
            Ok((chain, model.z_gradient(x)?))
        })
        .collect::<Result<_>>()?;
    let mut grad = vec![0.0; model.theta.len()];
    for (chain, zg) in &per_point {
        for (g, z) in grad.iter_mut().zip(zg) {
            *g += chain * z;
        }
    }
    let m = labels.len() as f64;
    grad.iter_mut().for_each(|g| *g /= m);
    Ok(grad)
}

fn validate_set(features: &[Vec<f64>], labels: &[u8]) -> Result<()> {
    if features.is_empty() {
        return Err(Error::Data("dataset is empty".into()));
    }
    if features.len() != labels.len() {
        return Err(Error::Dimension {
            expected: features.len(),
            got: labels.len(),
            context: "labels",
        });
    }
    if labels.iter().any(|&y| y > 1) {
        return Err(Error::Data("labels must be 0 or 1".into()));
    }
    Ok(())
}
