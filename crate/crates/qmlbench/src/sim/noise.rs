//! Stochastic Pauli-noise trajectories.
//!
//! Keeps the simulation pure-state: instead of evolving a density matrix,
//! each trajectory inserts a uniformly random Pauli (X, Y or Z) with
//! probability `noise_p` on every qubit a gate touched, and the Z
//! expectation is averaged over trajectories.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Circuit, Statevector};
use crate::error::{Error, Result};

/// Average of `expectation_z(qubit)` over `shots` noisy trajectories.
/// Deterministic for a fixed seed. `noise_p = 0` reproduces the noiseless
/// expectation exactly (every trajectory is identical).
pub fn noisy_expectation_z(
    circuit: &Circuit,
    params: &[f64],
    qubit: usize,
    noise_p: f64,
    shots: usize,
    seed: u64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&noise_p) {
        return Err(Error::Parameter(format!(
            "noise probability must be in [0, 1], got {noise_p}"
        )));
    }
    if shots == 0 {
        return Err(Error::Parameter("shots must be >= 1".into()));
    }
    if qubit >= circuit.n_qubits() {
        return Err(Error::Index { index: qubit, n_qubits: circuit.n_qubits() });
    }
    let bound = circuit.bind(params)?;
    if noise_p == 0.0 {
        // every trajectory is identical; evaluate once so the zero-noise
        // result equals the exact expectation bit-for-bit
        let mut state = Statevector::zero(circuit.n_qubits())?;
        for gate in &bound {
            state.apply_gate(gate)?;
        }
        return state.expectation_z(qubit);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0;
    for _ in 0..shots {
        let mut state = Statevector::zero(circuit.n_qubits())?;
        for gate in &bound {
            state.apply_gate(gate)?;
            for &t in &gate.targets {
                if rng.gen::<f64>() < noise_p {
                    let pauli = rng.gen_range(0..3usize);
                    state.apply_pauli(pauli, t);
                }
            }
        }
        acc += state.expectation_z(qubit)?;
    }
    Ok(acc / shots as f64)
}
