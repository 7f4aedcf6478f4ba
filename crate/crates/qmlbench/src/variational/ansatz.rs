//! Ansatz constructions: the layered RY/CZ-ring circuit for the VQC and
//! the convolution/pooling circuit for the QCNN.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{Angle, Circuit, Gate};

/// Layered hardware-efficient ansatz: per layer, RY(θ) on every qubit
/// followed by a CZ ring (0–1, 1–2, …, n−1–0; no ring when n = 1).
/// Parameter count is `layers·n_qubits`.
pub fn build_ansatz(n_qubits: usize, layers: usize) -> Result<Circuit> {
    if n_qubits == 0 {
        return Err(Error::Parameter("ansatz needs at least one qubit".into()));
    }
    if layers == 0 {
        return Err(Error::Parameter("ansatz needs at least one layer".into()));
    }
    let mut c = Circuit::new(n_qubits);
    for layer in 0..layers {
        for q in 0..n_qubits {
            let slot = c.add_slot(format!("l{layer}_q{q}"));
            c.push(Gate::ry(q, Angle::Slot(slot)));
        }
        if n_qubits >= 2 {
            for i in 0..n_qubits {
                c.push(Gate::cz(i, (i + 1) % n_qubits));
            }
        }
    }
    Ok(c)
}

/// QCNN layer plan. Convolution and pooling each use three parameters per
/// layer, shared across all pairs within the layer — that sharing is what
/// keeps the total at 6·log₂(N) instead of O(N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QcnnSpec {
    pub n_qubits: usize,
    pub conv_params_per_layer: usize,
    pub pool_params_per_layer: usize,
}

impl QcnnSpec {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits < 2 || !n_qubits.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "qcnn needs a power-of-two qubit count >= 2, got {n_qubits}"
            )));
        }
        Ok(QcnnSpec { n_qubits, conv_params_per_layer: 3, pool_params_per_layer: 3 })
    }

    pub fn layers(&self) -> usize {
        self.n_qubits.trailing_zeros() as usize
    }

    pub fn param_count(&self) -> usize {
        self.layers() * (self.conv_params_per_layer + self.pool_params_per_layer)
    }
}

/// Build the QCNN circuit. Each layer convolves adjacent active pairs with
/// a shared two-qubit block (RY(a)⊗RY(b), CZ, RY(c) on the first qubit),
/// then pools by CRY(d) from each pair's second qubit onto the first and
/// drops the second, finishing with shared RZ(e), RY(f) on the survivor.
/// Repeats until one active qubit remains (qubit 0, the readout).
pub fn build_qcnn(spec: &QcnnSpec) -> Result<Circuit> {
    QcnnSpec::new(spec.n_qubits)?; // re-validate in case of hand-built specs
    let mut c = Circuit::new(spec.n_qubits);
    let mut active: Vec<usize> = (0..spec.n_qubits).collect();
    let mut layer = 0usize;
    while active.len() > 1 {
        let a = c.add_slot(format!("l{layer}_conv_a"));
        let b = c.add_slot(format!("l{layer}_conv_b"));
        let cc = c.add_slot(format!("l{layer}_conv_c"));
        let pairs: Vec<(usize, usize)> = active.chunks(2).map(|w| (w[0], w[1])).collect();
        for &(p, q) in &pairs {
            c.push(Gate::ry(p, Angle::Slot(a)));
            c.push(Gate::ry(q, Angle::Slot(b)));
            c.push(Gate::cz(p, q));
            c.push(Gate::ry(p, Angle::Slot(cc)));
        }
        let d = c.add_slot(format!("l{layer}_pool_d"));
        let e = c.add_slot(format!("l{layer}_pool_e"));
        let f = c.add_slot(format!("l{layer}_pool_f"));
        for &(p, q) in &pairs {
            c.push(Gate::cry(q, p, Angle::Slot(d)));
            c.push(Gate::rz(p, Angle::Slot(e)));
            c.push(Gate::ry(p, Angle::Slot(f)));
        }
        active = pairs.into_iter().map(|(p, _)| p).collect();
        layer += 1;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_qubit_ansatz() {
        let c = build_ansatz(1, 1).unwrap();
        assert_eq!(c.n_params(), 1);
        assert_eq!(c.gates().len(), 1); // RY only, no ring
    }

    #[test]
    fn param_count_is_layers_times_qubits() {
        let c = build_ansatz(4, 3).unwrap();
        assert_eq!(c.n_params(), 12);
    }

    #[test]
    fn zero_theta_on_uniform_input_reads_zero() {
        // RY(0) = I leaves only the CZ ring, which is diagonal and cannot
        // change |amplitude|², so ⟨Z⟩ on H^{⊗n}|0⟩ stays 0.
        let n = 3;
        let ansatz = build_ansatz(n, 2).unwrap();
        let mut state = crate::sim::Statevector::zero(n).unwrap();
        for q in 0..n {
            state.apply_gate(&Gate::h(q)).unwrap();
        }
        ansatz.apply_to(&mut state, &vec![0.0; ansatz.n_params()]).unwrap();
        assert_abs_diff_eq!(state.expectation_z(0).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn qcnn_param_scaling() {
        for (n, expect) in [(2usize, 6usize), (4, 12), (8, 18), (16, 24)] {
            let spec = QcnnSpec::new(n).unwrap();
            assert_eq!(spec.param_count(), expect);
            let c = build_qcnn(&spec).unwrap();
            assert_eq!(c.n_params(), expect);
        }
    }

    #[test]
    fn qcnn_rejects_bad_sizes() {
        assert!(QcnnSpec::new(1).is_err());
        assert!(QcnnSpec::new(3).is_err());
        assert!(QcnnSpec::new(12).is_err());
    }

    #[test]
    fn qcnn_two_qubits_single_layer() {
        let spec = QcnnSpec::new(2).unwrap();
        assert_eq!(spec.layers(), 1);
        let c = build_qcnn(&spec).unwrap();
        assert_eq!(c.n_params(), 6);
        // conv: RY RY CZ RY, pool: CRY RZ RY
        assert_eq!(c.gates().len(), 7);
    }

    #[test]
    fn qcnn_circuit_preserves_norm() {
        let spec = QcnnSpec::new(4).unwrap();
        let c = build_qcnn(&spec).unwrap();
        let theta: Vec<f64> = (0..c.n_params()).map(|i| 0.3 * i as f64 - 1.0).collect();
        let s = c.run(&theta).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }
}
