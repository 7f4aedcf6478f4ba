//! Build a small circuit, apply it to |00⟩, inspect amplitudes and
//! Z expectations, and probe the same circuit under stochastic Pauli noise.
//!
//! Run with: cargo run --example statevector_basics

use qmlbench::sim::{noisy_expectation_z, Angle, Circuit, Gate};

fn main() -> qmlbench::Result<()> {
    // entangling circuit with one free rotation
    let mut circuit = Circuit::new(2);
    let theta = circuit.add_slot("theta");
    circuit
        .push(Gate::ry(0, Angle::Slot(theta)))
        .push(Gate::cx(0, 1))
        .push(Gate::ry(1, Angle::Fixed(0.4)));

    let state = circuit.run(&[0.8])?;
    println!("amplitudes after RY(0, 0.8), CX(0,1), RY(1, 0.4):");
    for (i, a) in state.amplitudes().iter().enumerate() {
        println!("  |{:02b}⟩  {:+.6} {:+.6}i", i, a.re, a.im);
    }
    println!("norm² = {:.12}", state.norm_sqr());
    println!("⟨Z₀⟩ = {:+.6}", state.expectation_z(0)?);
    println!("⟨Z₁⟩ = {:+.6}", state.expectation_z(1)?);

    // the same readout, averaged over noisy trajectories
    for p in [0.0, 0.05, 0.2, 1.0] {
        let z = noisy_expectation_z(&circuit, &[0.8], 1, p, 2000, 7)?;
        println!("noisy ⟨Z₁⟩ at p = {p:>4}: {z:+.4}");
    }
    Ok(())
}
