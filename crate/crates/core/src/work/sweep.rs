use num_complex::Complex64;
use rayon::prelude::*;

use crate::circuit::{
    build_interferometric_circuit, execute, measure_expectation, point_seed, sample_expectation,
    Basis,
};
use crate::error::{Error, Result};
use crate::linalg::ops::pauli_x;
use crate::linalg::{ComplexMatrix, HermitianOperator, QuantumState, QubitRole};
use crate::noise::{apply_channel, KrausChannel, NoiseModel};

/// Uniform delay grid `u_j = j·Δu`, `j = 0..count`, in μeV⁻¹.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UGrid {
    count: usize,
    delta_u: f64,
}

impl UGrid {
    pub fn from_count(count: usize, delta_u: f64) -> Result<Self> {
        if count < 2 {
            return Err(Error::arg("a delay sweep needs at least two points"));
        }
        if !(delta_u > 0.0) || !delta_u.is_finite() {
            return Err(Error::arg(format!("delta_u = {delta_u} must be positive")));
        }
        Ok(Self { count, delta_u })
    }

    /// Grid covering `[0, u_max]`: `floor(u_max/Δu) + 1` points.
    pub fn from_range(u_max: f64, delta_u: f64) -> Result<Self> {
        if !(delta_u > 0.0) || !(u_max >= delta_u) || !u_max.is_finite() {
            return Err(Error::arg(format!(
                "need 0 < delta_u <= u_max, got delta_u = {delta_u}, u_max = {u_max}"
            )));
        }
        let steps = (u_max / delta_u * (1.0 + 1e-12)).floor() as usize;
        Self::from_count(steps + 1, delta_u)
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn delta_u(&self) -> f64 {
        self.delta_u
    }

    pub fn u_max(&self) -> f64 {
        self.value(self.count - 1)
    }

    pub fn value(&self, j: usize) -> f64 {
        j as f64 * self.delta_u
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|j| self.value(j)).collect()
    }
}

/// How ancilla expectations are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// Exact expectation values of the simulated state.
    Exact,
    /// Finite-shot estimates, seeded per point and basis.
    Shots { shots: u64, seed: u64 },
}

/// Sampled characteristic function `g(u_j)` on a uniform grid starting at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct CharFnSamples {
    u: Vec<f64>,
    values: Vec<Complex64>,
    shots: u64,
    seed: u64,
}

impl CharFnSamples {
    /// `shots = 0` marks exact values.
    pub fn new(u: Vec<f64>, values: Vec<Complex64>, shots: u64, seed: u64) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::arg("characteristic-function samples are empty"));
        }
        if u.len() != values.len() {
            return Err(Error::arg(format!(
                "{} delays but {} values",
                u.len(),
                values.len()
            )));
        }
        if u[0].abs() > 1e-12 {
            return Err(Error::arg("the delay grid must start at u = 0"));
        }
        if u.len() > 1 {
            let du = u[1] - u[0];
            if !(du > 0.0) {
                return Err(Error::arg("delay grid must be increasing"));
            }
            let tol = 1e-9 * u[u.len() - 1].max(1.0);
            if u.iter()
                .enumerate()
                .any(|(j, x)| (x - j as f64 * du).abs() > tol)
            {
                return Err(Error::arg("delay grid must be uniformly spaced"));
            }
        }
        Ok(Self {
            u,
            values,
            shots,
            seed,
        })
    }

    /// Exact samples of an arbitrary function on `grid`.
    pub fn from_fn(grid: &UGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let u = grid.values();
        let values = u.iter().map(|&x| f(x)).collect();
        Self {
            u,
            values,
            shots: 0,
            seed: 0,
        }
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// Grid spacing, or 0 for a single sample.
    pub fn delta_u(&self) -> f64 {
        if self.u.len() > 1 {
            self.u[1] - self.u[0]
        } else {
            0.0
        }
    }

    /// Undoes the `(1 − 2p₁)` attenuation caused by an ancilla prepared with
    /// excited population `p₁`.
    pub fn corrected_for_ancilla(&self, p1: f64) -> Result<Self> {
        let factor = 1.0 - 2.0 * p1;
        if !(0.0..0.5).contains(&p1) {
            return Err(Error::arg(format!(
                "cannot undo ancilla damping for excited population {p1}"
            )));
        }
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v /= factor);
        Ok(out)
    }
}

/// Everything the interferometric sweep needs about the measured system.
#[derive(Clone, Debug)]
pub struct Interferometer {
    /// Bare Hamiltonian of system plus bath (system qubits first).
    pub h0: HermitianOperator,
    /// Drive unitary on the system qubits only.
    pub drive: ComplexMatrix,
    /// Initial state of system plus bath.
    pub initial: QuantumState,
    /// Excited population of the ancilla before the first Hadamard.
    pub ancilla_excited: f64,
}

impl Interferometer {
    pub fn new(
        h0: HermitianOperator,
        drive: ComplexMatrix,
        initial: QuantumState,
        ancilla_excited: f64,
    ) -> Result<Self> {
        if initial.dim() != h0.dim() {
            return Err(Error::arg(format!(
                "initial state dimension {} differs from h0 dimension {}",
                initial.dim(),
                h0.dim()
            )));
        }
        if !drive.is_unitary(1e-10) {
            return Err(Error::arg("drive is not unitary"));
        }
        if !(0.0..=1.0).contains(&ancilla_excited) {
            return Err(Error::arg(format!(
                "ancilla excited population {ancilla_excited} outside [0, 1]"
            )));
        }
        Ok(Self {
            h0,
            drive,
            initial,
            ancilla_excited,
        })
    }

    /// Index of the ancilla in the full register.
    pub fn ancilla(&self) -> usize {
        self.initial.num_qubits()
    }

    /// Full register state `initial ⊗ ancilla`, with preparation flips from
    /// the noise model applied to every listed qubit.
    pub fn register_state(&self, noise: Option<&NoiseModel>) -> Result<QuantumState> {
        let anc = QuantumState::qubit_mixture(self.ancilla_excited, QubitRole::Ancilla)?;
        let mut state = self.initial.tensor(&anc)?;
        if let Some(model) = noise {
            for (&q, params) in &model.qubits {
                if q < state.num_qubits() && params.initial_excited > 0.0 {
                    state = apply_channel(&state, &bit_flip(params.initial_excited)?, &[q])?;
                }
            }
        }
        Ok(state)
    }

    /// Exact `g(u)` from the trace formula, ignoring noise and the ancilla.
    pub fn char_fn_direct(&self, u: f64) -> Result<Complex64> {
        let n_sys = self
            .drive
            .qubit_count()
            .ok_or_else(|| Error::arg("drive dimension is not a power of two"))?;
        let bath_dim = self.h0.dim() >> n_sys;
        let full = self.drive.kron(&ComplexMatrix::identity(bath_dim));
        super::char_fn_direct(&self.initial, &self.h0, &full, u)
    }
}

fn bit_flip(p: f64) -> Result<KrausChannel> {
    KrausChannel::new(
        vec![
            ComplexMatrix::identity(2).scale_real((1.0 - p).sqrt()),
            pauli_x().scale_real(p.sqrt()),
        ],
        "preparation-flip",
    )
}

/// Runs the interferometric circuit once per delay and reads the ancilla in
/// both bases, returning `g(u_j) = ⟨σz⟩ + i⟨σy⟩`.
///
/// Points are evaluated in parallel and assembled in grid order. In shot mode
/// each (point, basis) pair draws from its own seed derived from the base
/// seed, and the ancilla's readout confusion (if any) is applied and then
/// inverted.
pub fn sweep_char_fn(
    setup: &Interferometer,
    grid: &UGrid,
    mode: SampleMode,
    noise: Option<&NoiseModel>,
) -> Result<CharFnSamples> {
    let initial = setup.register_state(noise)?;
    let ancilla = setup.ancilla();
    let confusion = noise
        .and_then(|m| m.qubit(ancilla))
        .filter(|q| q.has_readout_error())
        .map(|q| q.confusion);

    let values = (0..grid.count())
        .into_par_iter()
        .map(|j| {
            let u = grid.value(j);
            let circuit = build_interferometric_circuit(&setup.h0, &setup.drive, u, Basis::Z)?;
            let out = execute(&circuit, &initial, noise)?;
            let read = |basis| match mode {
                SampleMode::Exact => measure_expectation(&out, ancilla, basis),
                SampleMode::Shots { shots, seed } => sample_expectation(
                    &out,
                    ancilla,
                    basis,
                    shots,
                    point_seed(seed, j as u64, basis),
                    confusion.as_ref(),
                ),
            };
            Ok(Complex64::new(read(Basis::Z)?, read(Basis::Y)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let (shots, seed) = match mode {
        SampleMode::Exact => (0, 0),
        SampleMode::Shots { shots, seed } => (shots, seed),
    };
    CharFnSamples::new(grid.values(), values, shots, seed)
}
