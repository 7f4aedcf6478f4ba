//! Exact statevector simulation of small parameterized quantum circuits.
//!
//! An `n`-qubit pure state is stored as `2^n` complex amplitudes
//! (16·2^n bytes). Qubit ordering is little-endian throughout: qubit 0 is
//! the least-significant bit of the amplitude index.

mod circuit;
mod gate;
mod noise;

pub use circuit::Circuit;
pub use gate::{Angle, Gate, GateKind};
pub use noise::noisy_expectation_z;

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Hard cap on register size. 24 qubits is 16·2^24 ≈ 268 MB, the largest
/// allocation this toolkit is willing to make; simulation memory is the
/// binding constraint for everything built on top.
pub const MAX_QUBITS: usize = 24;

/// Pure quantum state of `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// |0...0⟩ on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                n_qubits,
                bytes: 16u128 << n_qubits.min(127),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩ = Σ conj(aᵢ)·bᵢ.
    pub fn inner_product(&self, other: &Statevector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Dimension {
                expected: self.amps.len(),
                got: other.amps.len(),
                context: "inner product of statevectors",
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Expectation of Pauli-Z on one qubit: Σ ±|aᵢ|², sign from the
    /// qubit's bit in the amplitude index.
    pub fn expectation_z(&self, qubit: usize) -> Result<f64> {
        if qubit >= self.n_qubits {
            return Err(Error::Index { index: qubit, n_qubits: self.n_qubits });
        }
        let bit = 1usize << qubit;
        let mut val = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if i & bit == 0 {
                val += p;
            } else {
                val -= p;
            }
        }
        // norm is only 1 up to rounding; keep the contract range exact
        Ok(val.clamp(-1.0, 1.0))
    }

    /// Apply one fully bound gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let angle = match gate.angle {
            None => 0.0,
            Some(Angle::Fixed(a)) => a,
            Some(Angle::Slot(s)) => {
                return Err(Error::Binding(format!(
                    "gate {:?} references unbound parameter slot {s}",
                    gate.kind
                )))
            }
        };
        for &t in &gate.targets {
            if t >= self.n_qubits {
                return Err(Error::Index { index: t, n_qubits: self.n_qubits });
            }
        }
        if gate.targets.len() == 2 && gate.targets[0] == gate.targets[1] {
            return Err(Error::Parameter(format!(
                "gate {:?} targets must be distinct, got {:?}",
                gate.kind, gate.targets
            )));
        }
        match gate.kind {
            GateKind::H => {
                let f = FRAC_1_SQRT_2;
                self.map_pairs(gate.targets[0], |a, b| (f * (a + b), f * (a - b)));
            }
            GateKind::X => {
                self.map_pairs(gate.targets[0], |a, b| (b, a));
            }
            GateKind::Rx => {
                let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                let mis = Complex64::new(0.0, -s);
                self.map_pairs(gate.targets[0], |a, b| (c * a + mis * b, mis * a + c * b));
            }
            GateKind::Ry => {
                let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                self.map_pairs(gate.targets[0], |a, b| (c * a - s * b, s * a + c * b));
            }
            GateKind::Rz => {
                let phase0 = Complex64::from_polar(1.0, -angle / 2.0);
                let phase1 = Complex64::from_polar(1.0, angle / 2.0);
                self.map_pairs(gate.targets[0], |a, b| (phase0 * a, phase1 * b));
            }
            GateKind::Cx => {
                let (cbit, tbit) = (1usize << gate.targets[0], 1usize << gate.targets[1]);
                for i in 0..self.amps.len() {
                    if i & cbit != 0 && i & tbit == 0 {
                        self.amps.swap(i, i | tbit);
                    }
                }
            }
            GateKind::Cz => {
                let mask = (1usize << gate.targets[0]) | (1usize << gate.targets[1]);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a = -*a;
                    }
                }
            }
            GateKind::Cry => {
                let (cbit, tbit) = (1usize << gate.targets[0], 1usize << gate.targets[1]);
                let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                for i in 0..self.amps.len() {
                    if i & cbit != 0 && i & tbit == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | tbit]);
                        self.amps[i] = c * a - s * b;
                        self.amps[i | tbit] = s * a + c * b;
                    }
                }
            }
        }
        Ok(())
    }

    /// Visit all (bit=0, bit=1) amplitude pairs of one qubit.
    fn map_pairs(&mut self, qubit: usize, f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64)) {
        let bit = 1usize << qubit;
        for base in (0..self.amps.len()).step_by(bit << 1) {
            for i0 in base..base + bit {
                let i1 = i0 | bit;
                let (a, b) = f(self.amps[i0], self.amps[i1]);
                self.amps[i0] = a;
                self.amps[i1] = b;
            }
        }
    }

    // Pauli insertions for the stochastic noise model. Y and Z are not part
    // of the public gate set, so these stay private to the module.
    pub(crate) fn apply_pauli(&mut self, pauli: usize, qubit: usize) {
        match pauli {
            0 => self.map_pairs(qubit, |a, b| (b, a)),
            1 => self.map_pairs(qubit, |a, b| {
                (Complex64::new(0.0, -1.0) * b, Complex64::new(0.0, 1.0) * a)
            }),
            _ => self.map_pairs(qubit, |a, b| (a, -b)),
        }
    }
}

/// |0...0⟩ constructor matching the module-level operation vocabulary.
pub fn new_zero_state(n_qubits: usize) -> Result<Statevector> {
    Statevector::zero(n_qubits)
}
