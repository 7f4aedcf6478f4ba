//! Gate vocabulary for the statevector simulator.
//!
//! The gate set is deliberately small: everything the feature maps and
//! ansätze below need, nothing else, so the dense test oracle stays tiny.

use serde::{Deserialize, Serialize};

/// Supported gate kinds.
///
/// Rotation conventions are fixed so results are bit-reproducible:
/// `RZ(t) = diag(e^{-it/2}, e^{+it/2})`,
/// `RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]`,
/// `RX(t) = [[cos t/2, -i sin t/2], [-i sin t/2, cos t/2]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Rx,
    Ry,
    Rz,
    Cx,
    Cz,
    Cry,
}

impl GateKind {
    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Cry)
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::H | GateKind::X | GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::Cx | GateKind::Cz | GateKind::Cry => 2,
        }
    }
}

/// Rotation angle: either a literal value or a reference to a named
/// parameter slot of the enclosing [`Circuit`](super::Circuit).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Angle {
    Fixed(f64),
    Slot(usize),
}

/// One gate instance. For two-qubit kinds `targets[0]` is the control
/// (`Cx`, `Cry`) or the first qubit (`Cz`, which is symmetric).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub angle: Option<Angle>,
}

impl Gate {
    pub fn h(q: usize) -> Self {
        Gate { kind: GateKind::H, targets: vec![q], angle: None }
    }

    pub fn x(q: usize) -> Self {
        Gate { kind: GateKind::X, targets: vec![q], angle: None }
    }

    pub fn rx(q: usize, angle: Angle) -> Self {
        Gate { kind: GateKind::Rx, targets: vec![q], angle: Some(angle) }
    }

    pub fn ry(q: usize, angle: Angle) -> Self {
        Gate { kind: GateKind::Ry, targets: vec![q], angle: Some(angle) }
    }

    pub fn rz(q: usize, angle: Angle) -> Self {
        Gate { kind: GateKind::Rz, targets: vec![q], angle: Some(angle) }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate { kind: GateKind::Cx, targets: vec![control, target], angle: None }
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Gate { kind: GateKind::Cz, targets: vec![a, b], angle: None }
    }

    pub fn cry(control: usize, target: usize, angle: Angle) -> Self {
        Gate { kind: GateKind::Cry, targets: vec![control, target], angle: Some(angle) }
    }

    /// The slot index this gate's angle references, if any.
    pub fn slot(&self) -> Option<usize> {
        match self.angle {
            Some(Angle::Slot(s)) => Some(s),
            _ => None,
        }
    }

    pub fn is_bound(&self) -> bool {
        !matches!(self.angle, Some(Angle::Slot(_)))
    }
}
