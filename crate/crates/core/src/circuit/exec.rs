use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ops::{embed_operator, hadamard, pauli_y, pauli_z, phase_dagger};
use crate::linalg::{expectation, partial_trace, HermitianOperator, QuantumState};
use crate::noise::{apply_channel, depolarizing_channel, thermal_relaxation_channel, NoiseModel};
use crate::units::delay_to_us;

use super::{Basis, CircuitSpec, Gate};

/// Readout confusion matrix, `m[true][read]`, rows summing to one.
pub type Confusion = [[f64; 2]; 2];

/// Runs every gate of `circuit` on `initial`.
///
/// With a noise model, each gate is followed by its error channels:
/// - single-qubit gates: depolarizing with the qubit's `single_gate_error`;
/// - controlled gates: two-qubit depolarizing on (control, first target) with
///   the control's `two_qubit_gate_error`;
/// - delay evolutions: no depolarizing (free evolution);
/// - then thermal relaxation on every qubit with finite T1/T2, for the gate's
///   wall-clock duration (delays last `u·ħ`).
pub fn execute(
    circuit: &CircuitSpec,
    initial: &QuantumState,
    noise: Option<&NoiseModel>,
) -> Result<QuantumState> {
    let n = circuit.num_qubits();
    if initial.num_qubits() != n {
        return Err(Error::arg(format!(
            "{}-qubit state for a {n}-qubit circuit",
            initial.num_qubits()
        )));
    }
    if let Some(m) = noise {
        m.validate()?;
    }
    let mut state = initial.clone().with_roles(circuit.roles().to_vec())?;
    for gate in circuit.gates() {
        let full = embed_operator(&gate.local_matrix(), gate.targets(), gate.control(), n);
        state = state.conjugated(&full)?;
        if let Some(model) = noise {
            state = apply_gate_noise(state, gate, model)?;
        }
    }
    Ok(state)
}

fn apply_gate_noise(
    mut state: QuantumState,
    gate: &Gate,
    model: &NoiseModel,
) -> Result<QuantumState> {
    let n = state.num_qubits();
    let duration_us = if let crate::circuit::GateKind::DelayEvolution { duration, .. } = gate.kind()
    {
        delay_to_us(*duration)
    } else if gate.qubits().len() > 1 {
        model.durations.two_qubit_us
    } else {
        model.durations.single_us
    };

    if !gate.is_delay() {
        match gate.control() {
            Some((ctrl, _)) => {
                if let Some(q) = model.qubit(ctrl) {
                    if q.two_qubit_gate_error > 0.0 {
                        let ch = depolarizing_channel(q.two_qubit_gate_error, 2)?;
                        state = apply_channel(&state, &ch, &[ctrl, gate.targets()[0]])?;
                    }
                }
            }
            None => {
                for &t in gate.targets() {
                    if let Some(q) = model.qubit(t) {
                        if q.single_gate_error > 0.0 {
                            let ch = depolarizing_channel(q.single_gate_error, 1)?;
                            state = apply_channel(&state, &ch, &[t])?;
                        }
                    }
                }
            }
        }
    }

    if duration_us > 0.0 {
        for (&idx, q) in &model.qubits {
            if idx >= n || !q.relaxes() {
                continue;
            }
            let ch =
                thermal_relaxation_channel(q.t1_us, q.t2_us, duration_us, q.excited_equilibrium)?;
            state = apply_channel(&state, &ch, &[idx])?;
        }
    }
    Ok(state)
}

fn reduced_qubit(state: &QuantumState, qubit: usize) -> Result<QuantumState> {
    if qubit >= state.num_qubits() {
        return Err(Error::arg(format!("qubit {qubit} out of range")));
    }
    partial_trace(state, &[qubit])
}

/// Exact `⟨σz⟩` or `⟨σy⟩` of one qubit.
pub fn measure_expectation(state: &QuantumState, qubit: usize, basis: Basis) -> Result<f64> {
    let reduced = reduced_qubit(state, qubit)?;
    let obs = match basis {
        Basis::Z => pauli_z(),
        Basis::Y => pauli_y(),
    };
    expectation(&reduced, &HermitianOperator::new(obs)?)
}

/// Probability of reading 0 after rotating `basis` onto Z. The Y read-out is
/// realized by applying `S†` then `H`.
pub(crate) fn zero_probability(state: &QuantumState, qubit: usize, basis: Basis) -> Result<f64> {
    let mut reduced = reduced_qubit(state, qubit)?;
    if basis == Basis::Y {
        let rot = &hadamard() * &phase_dagger();
        reduced = reduced.conjugated(&rot)?;
    }
    Ok(reduced.matrix()[(0, 0)].re.clamp(0.0, 1.0))
}

/// Shot-sampled estimate of `⟨σz⟩` or `⟨σy⟩`.
///
/// Draws `shots` outcomes from the exact read-out probabilities, passes each
/// through the optional confusion matrix, then undoes the confusion on the
/// empirical frequencies by inverting the matrix. Deterministic in `seed`.
pub fn sample_expectation(
    state: &QuantumState,
    qubit: usize,
    basis: Basis,
    shots: u64,
    seed: u64,
    confusion: Option<&Confusion>,
) -> Result<f64> {
    if shots == 0 {
        return Err(Error::arg("shots must be at least 1"));
    }
    let p0 = zero_probability(state, qubit, basis)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut read = [0u64; 2];
    for _ in 0..shots {
        let truth = usize::from(rng.random::<f64>() >= p0);
        let outcome = match confusion {
            Some(m) => usize::from(rng.random::<f64>() < m[truth][1]),
            None => truth,
        };
        read[outcome] += 1;
    }
    let f0 = read[0] as f64 / shots as f64;
    let f1 = read[1] as f64 / shots as f64;
    let (t0, t1) = match confusion {
        None => (f0, f1),
        Some(m) => correct_readout(m, f0, f1)?,
    };
    Ok(t0 - t1)
}

/// Solves `f_obs = Mᵀ f_true` for the true outcome frequencies.
pub fn correct_readout(m: &Confusion, f0: f64, f1: f64) -> Result<(f64, f64)> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() < 1e-12 {
        return Err(Error::numerical("readout confusion matrix is singular"));
    }
    // Mᵀ = [[m00, m10], [m01, m11]]
    let t0 = (m[1][1] * f0 - m[1][0] * f1) / det;
    let t1 = (-m[0][1] * f0 + m[0][0] * f1) / det;
    Ok((t0, t1))
}

/// Derives an independent per-point seed from a base seed, a sweep index
/// and a basis, so shot sampling does not depend on evaluation order.
pub fn point_seed(base: u64, index: u64, basis: Basis) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ index) ^ basis.index())
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
