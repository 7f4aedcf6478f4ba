//! Dense-matrix reference oracle for the statevector simulator.
//!
//! Everything here is written from the gate formulas directly and shares
//! no code with the implementation under test: full 2^n x 2^n unitaries
//! are assembled per gate, chained by matrix multiplication, and applied
//! to the |0...0> column.
#![allow(dead_code)] // shared by several test binaries, each uses a subset

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use qmlbench::sim::{Angle, Circuit, Gate, GateKind};

pub const ALL_GATE_KINDS: [GateKind; 8] = [
    GateKind::H,
    GateKind::X,
    GateKind::Rx,
    GateKind::Ry,
    GateKind::Rz,
    GateKind::Cx,
    GateKind::Cz,
    GateKind::Cry,
];

#[derive(Clone, Debug)]
pub struct DenseMatrix {
    pub dim: usize,
    /// Row-major.
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        DenseMatrix { dim, data }
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..dim {
                    out[r * dim + c] += a * rhs.get(k, c);
                }
            }
        }
        DenseMatrix { dim, data: out }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    /// max |(U†U − I)[r][c]|
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.dim;
        let mut worst: f64 = 0.0;
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += self.get(k, r).conj() * self.get(k, c);
                }
                let expect = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((acc - Complex64::new(expect, 0.0)).norm());
            }
        }
        worst
    }
}

fn mat2(kind: GateKind, angle: f64) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(0.0, 0.0);
    match kind {
        GateKind::H => {
            let f = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
            [[f, f], [f, -f]]
        }
        GateKind::X => [[z, Complex64::new(1.0, 0.0)], [Complex64::new(1.0, 0.0), z]],
        GateKind::Rx => {
            let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
            [
                [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
            ]
        }
        GateKind::Ry => {
            let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
            [
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
            ]
        }
        GateKind::Rz => [
            [Complex64::from_polar(1.0, -angle / 2.0), z],
            [z, Complex64::from_polar(1.0, angle / 2.0)],
        ],
        _ => unreachable!("not a single-qubit kind"),
    }
}

/// Full 2^n x 2^n unitary of one bound gate, little-endian qubit order.
pub fn gate_unitary(gate: &Gate, n_qubits: usize) -> DenseMatrix {
    let dim = 1usize << n_qubits;
    let angle = match gate.angle {
        Some(Angle::Fixed(a)) => a,
        Some(Angle::Slot(_)) => panic!("oracle needs bound gates"),
        None => 0.0,
    };
    let mut m = DenseMatrix {
        dim,
        data: vec![Complex64::new(0.0, 0.0); dim * dim],
    };
    match gate.kind {
        GateKind::H | GateKind::X | GateKind::Rx | GateKind::Ry | GateKind::Rz => {
            let u = mat2(gate.kind, angle);
            let bit = 1usize << gate.targets[0];
            for col in 0..dim {
                let b = usize::from(col & bit != 0);
                for bp in 0..2 {
                    let row = (col & !bit) | (if bp == 1 { bit } else { 0 });
                    m.data[row * dim + col] += u[bp][b];
                }
            }
        }
        GateKind::Cx => {
            let (cbit, tbit) = (1usize << gate.targets[0], 1usize << gate.targets[1]);
            for col in 0..dim {
                let row = if col & cbit != 0 { col ^ tbit } else { col };
                m.data[row * dim + col] = Complex64::new(1.0, 0.0);
            }
        }
        GateKind::Cz => {
            let mask = (1usize << gate.targets[0]) | (1usize << gate.targets[1]);
            for col in 0..dim {
                let sign = if col & mask == mask { -1.0 } else { 1.0 };
                m.data[col * dim + col] = Complex64::new(sign, 0.0);
            }
        }
        GateKind::Cry => {
            let (cbit, tbit) = (1usize << gate.targets[0], 1usize << gate.targets[1]);
            let u = mat2(GateKind::Ry, angle);
            for col in 0..dim {
                if col & cbit == 0 {
                    m.data[col * dim + col] = Complex64::new(1.0, 0.0);
                } else {
                    let b = usize::from(col & tbit != 0);
                    for bp in 0..2 {
                        let row = (col & !tbit) | (if bp == 1 { tbit } else { 0 });
                        m.data[row * dim + col] += u[bp][b];
                    }
                }
            }
        }
    }
    m
}

/// Product of all gate unitaries (matrix chain), then applied to e0.
pub fn circuit_unitary(circuit: &Circuit, params: &[f64]) -> DenseMatrix {
    let n = circuit.n_qubits();
    let mut total = DenseMatrix::identity(1 << n);
    for gate in circuit.bind(params).expect("bindable") {
        total = gate_unitary(&gate, n).mul(&total);
    }
    total
}

pub fn oracle_amplitudes(circuit: &Circuit, params: &[f64]) -> Vec<Complex64> {
    let dim = 1usize << circuit.n_qubits();
    let mut e0 = vec![Complex64::new(0.0, 0.0); dim];
    e0[0] = Complex64::new(1.0, 0.0);
    circuit_unitary(circuit, params).apply(&e0)
}

/// Uniformly random bound circuit on `n` qubits.
pub fn random_circuit(rng: &mut ChaCha8Rng, n_qubits: usize, n_gates: usize) -> Circuit {
    let mut c = Circuit::new(n_qubits);
    for _ in 0..n_gates {
        let kind = loop {
            let k = ALL_GATE_KINDS[rng.gen_range(0..ALL_GATE_KINDS.len())];
            if n_qubits >= 2 || k.arity() == 1 {
                break k;
            }
        };
        let angle = Angle::Fixed(rng.gen_range(-PI..PI));
        let gate = match kind.arity() {
            1 => {
                let q = rng.gen_range(0..n_qubits);
                match kind {
                    GateKind::H => Gate::h(q),
                    GateKind::X => Gate::x(q),
                    GateKind::Rx => Gate::rx(q, angle),
                    GateKind::Ry => Gate::ry(q, angle),
                    GateKind::Rz => Gate::rz(q, angle),
                    _ => unreachable!(),
                }
            }
            _ => {
                let a = rng.gen_range(0..n_qubits);
                let b = loop {
                    let b = rng.gen_range(0..n_qubits);
                    if b != a {
                        break b;
                    }
                };
                match kind {
                    GateKind::Cx => Gate::cx(a, b),
                    GateKind::Cz => Gate::cz(a, b),
                    GateKind::Cry => Gate::cry(a, b, angle),
                    _ => unreachable!(),
                }
            }
        };
        c.push(gate);
    }
    c
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Max per-amplitude distance between implementation and oracle.
pub fn amplitude_distance(circuit: &Circuit, params: &[f64]) -> f64 {
    let oracle = oracle_amplitudes(circuit, params);
    let state = circuit.run(params).expect("runnable circuit");
    state
        .amplitudes()
        .iter()
        .zip(&oracle)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max)
}
