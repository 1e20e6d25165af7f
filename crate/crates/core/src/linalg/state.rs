use serde::{Deserialize, Serialize};

use super::{ComplexMatrix, HermitianOperator};
use crate::error::{Error, Result};
use crate::linalg::ops::{c, sub_index};
use crate::units::MAX_QUBITS;

const STATE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QubitRole {
    System,
    Bath,
    Ancilla,
}

/// Density matrix of an n-qubit register. Qubit 0 is the most significant bit
/// of the computational-basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    matrix: ComplexMatrix,
    roles: Vec<QubitRole>,
}

impl QuantumState {
    /// Validates trace, Hermiticity and positivity (all to 1e-10).
    pub fn new(matrix: ComplexMatrix, roles: Vec<QubitRole>) -> Result<Self> {
        let state = Self::from_parts(matrix, roles)?;
        state.validate()?;
        Ok(state)
    }

    /// Shape checks only; used for states produced by trace-preserving maps.
    pub(crate) fn from_parts(matrix: ComplexMatrix, roles: Vec<QubitRole>) -> Result<Self> {
        let n = roles.len();
        if n == 0 {
            return Err(Error::arg("a state needs at least one qubit"));
        }
        if n > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: n,
                limit: MAX_QUBITS,
            });
        }
        if !matrix.is_square() || matrix.rows() != 1 << n {
            return Err(Error::arg(format!(
                "{}x{} matrix does not describe {n} qubits",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix, roles })
    }

    /// Pure state |ψ⟩⟨ψ| of a normalised amplitude vector.
    pub fn pure(amplitudes: &[num_complex::Complex64], roles: Vec<QubitRole>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::arg(format!("amplitudes have norm² {norm}")));
        }
        Self::new(ComplexMatrix::outer(amplitudes, amplitudes), roles)
    }

    /// Computational basis state |index⟩.
    pub fn basis(index: usize, roles: Vec<QubitRole>) -> Result<Self> {
        let dim = 1usize << roles.len();
        if index >= dim {
            return Err(Error::arg(format!("basis index {index} out of range")));
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(index, index)] = c(1.0, 0.0);
        Self::new(m, roles)
    }

    /// Single-qubit mixture of |0⟩ and |1⟩ with the given excited population.
    pub fn qubit_mixture(excited: f64, role: QubitRole) -> Result<Self> {
        if !(0.0..=1.0).contains(&excited) {
            return Err(Error::arg(format!(
                "excited population {excited} outside [0, 1]"
            )));
        }
        Self::new(
            ComplexMatrix::from_real_diagonal(&[1.0 - excited, excited]),
            vec![role],
        )
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn num_qubits(&self) -> usize {
        self.roles.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn with_roles(mut self, roles: Vec<QubitRole>) -> Result<Self> {
        if roles.len() != self.roles.len() {
            return Err(Error::arg("role list length differs from qubit count"));
        }
        self.roles = roles;
        Ok(self)
    }

    /// Register `self ⊗ other` (self's qubits first).
    pub fn tensor(&self, other: &QuantumState) -> Result<Self> {
        let mut roles = self.roles.clone();
        roles.extend_from_slice(&other.roles);
        Self::from_parts(self.matrix.kron(&other.matrix), roles)
    }

    /// Populations in the computational basis.
    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Checks the density-matrix invariants at 1e-10.
    pub fn validate(&self) -> Result<()> {
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::arg(format!("state trace is {tr}, expected 1")));
        }
        let herm_dev = self.matrix.max_abs_diff(&self.matrix.dagger());
        if herm_dev > STATE_TOL {
            return Err(Error::arg(format!(
                "state is not hermitian (deviation {herm_dev:e})"
            )));
        }
        let min_eig = HermitianOperator::new(self.matrix.hermitian_part())?
            .eigh()?
            .values[0];
        if min_eig < -STATE_TOL {
            return Err(Error::arg(format!(
                "state is not positive semidefinite (eigenvalue {min_eig:e})"
            )));
        }
        Ok(())
    }

    /// `U ρ U†` for a full-register operator.
    pub(crate) fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::from_parts(u.conjugate(&self.matrix)?, self.roles.clone())
    }
}

/// Reduced state over the qubits in `keep` (deduplicated, in ascending order).
pub fn partial_trace(state: &QuantumState, keep: &[usize]) -> Result<QuantumState> {
    if keep.is_empty() {
        return Err(Error::arg("partial trace needs at least one kept qubit"));
    }
    let n = state.num_qubits();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&q) = kept.iter().find(|&&q| q >= n) {
        return Err(Error::arg(format!(
            "qubit {q} outside a {n}-qubit register"
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
    let k = kept.len();
    let mut out = ComplexMatrix::zeros(1 << k, 1 << k);
    let rho = state.matrix();
    let dim = state.dim();
    for r in 0..dim {
        let rt = sub_index(r, &traced, n);
        let rk = sub_index(r, &kept, n);
        for col in 0..dim {
            if sub_index(col, &traced, n) != rt {
                continue;
            }
            out[(rk, sub_index(col, &kept, n))] += rho[(r, col)];
        }
    }
    let roles = kept.iter().map(|&q| state.roles()[q]).collect();
    QuantumState::from_parts(out, roles)
}

/// `Tr(obs · ρ)`; the imaginary residue (below 1e-10 for valid inputs) is dropped.
pub fn expectation(state: &QuantumState, obs: &HermitianOperator) -> Result<f64> {
    if obs.dim() != state.dim() {
        return Err(Error::arg(format!(
            "observable of dimension {} on a state of dimension {}",
            obs.dim(),
            state.dim()
        )));
    }
    let o = obs.matrix();
    let rho = state.matrix();
    let d = state.dim();
    let mut acc = c(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += o[(i, j)] * rho[(j, i)];
        }
    }
    Ok(acc.re)
}
