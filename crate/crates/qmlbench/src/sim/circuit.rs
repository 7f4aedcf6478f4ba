//! Ordered gate list with named free parameters.

use serde::{Deserialize, Serialize};

use super::gate::{Angle, Gate};
use super::Statevector;
use crate::error::{Error, Result};

/// A circuit on a fixed register. Gates may reference named parameter
/// slots; binding a full parameter vector yields a parameter-free gate
/// list that can be applied to a state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    param_slots: Vec<String>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new(), param_slots: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn n_params(&self) -> usize {
        self.param_slots.len()
    }

    pub fn param_slots(&self) -> &[String] {
        &self.param_slots
    }

    /// Declare a named free parameter; returns its slot index. Gates added
    /// later may share the slot, which is how layer-wise parameter sharing
    /// is expressed.
    pub fn add_slot(&mut self, name: impl Into<String>) -> usize {
        self.param_slots.push(name.into());
        self.param_slots.len() - 1
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    /// Append another circuit's gates, remapping its parameter slots onto
    /// freshly declared slots of this circuit.
    pub fn extend(&mut self, other: &Circuit) {
        let offset = self.param_slots.len();
        self.param_slots.extend(other.param_slots.iter().cloned());
        for gate in &other.gates {
            let mut g = gate.clone();
            if let Some(Angle::Slot(s)) = g.angle {
                g.angle = Some(Angle::Slot(s + offset));
            }
            self.gates.push(g);
        }
    }

    /// Resolve every slot reference against `params`, yielding a fully
    /// bound gate list.
    pub fn bind(&self, params: &[f64]) -> Result<Vec<Gate>> {
        if params.len() != self.param_slots.len() {
            return Err(Error::Binding(format!(
                "circuit has {} parameter slot(s), got {} value(s)",
                self.param_slots.len(),
                params.len()
            )));
        }
        Ok(self
            .gates
            .iter()
            .map(|g| {
                let mut g = g.clone();
                if let Some(Angle::Slot(s)) = g.angle {
                    g.angle = Some(Angle::Fixed(params[s]));
                }
                g
            })
            .collect())
    }

    /// Apply all gates in order to `state`, binding `params` first.
    pub fn apply_to(&self, state: &mut Statevector, params: &[f64]) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Dimension {
                expected: self.n_qubits,
                got: state.n_qubits(),
                context: "circuit applied to state of different register size",
            });
        }
        for gate in self.bind(params)? {
            state.apply_gate(&gate)?;
        }
        Ok(())
    }

    /// Run the circuit on |0...0⟩.
    pub fn run(&self, params: &[f64]) -> Result<Statevector> {
        let mut state = Statevector::zero(self.n_qubits)?;
        self.apply_to(&mut state, params)?;
        Ok(state)
    }
}
