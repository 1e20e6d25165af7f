use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ops::{embed_operator, pauli_z, sigma_minus, sigma_plus};
use crate::linalg::{ComplexMatrix, HermitianOperator, QuantumState};
use crate::units::MAX_QUBITS;
use crate::work::MERGE_TOL;

/// Synthetic environment of spectator qubits coupled to the system qubit by
/// excitation exchange.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathSpec {
    /// Spectator transition energies ωₖ in μeV.
    #[serde(default)]
    pub frequencies_uev: Vec<f64>,
    /// Exchange couplings gₖ in μeV.
    #[serde(default)]
    pub couplings_uev: Vec<f64>,
    /// Bath temperature in mK.
    #[serde(default = "default_bath_temperature")]
    pub temperature_mk: f64,
    /// Start from the product state averaged over a long free evolution of
    /// system plus bath, rather than from the bare product state.
    #[serde(default = "default_equilibrate")]
    pub equilibrate: bool,
}

fn default_equilibrate() -> bool {
    true
}

fn default_bath_temperature() -> f64 {
    150.0
}

impl Default for BathSpec {
    fn default() -> Self {
        Self::none()
    }
}

impl BathSpec {
    pub fn none() -> Self {
        Self {
            frequencies_uev: vec![],
            couplings_uev: vec![],
            temperature_mk: default_bath_temperature(),
            equilibrate: default_equilibrate(),
        }
    }

    /// `k` identical spectators at `omega` with coupling `g`.
    pub fn resonant(k: usize, omega: f64, g: f64, temperature_mk: f64) -> Self {
        Self {
            frequencies_uev: vec![omega; k],
            couplings_uev: vec![g; k],
            temperature_mk,
            equilibrate: default_equilibrate(),
        }
    }

    pub fn num_spectators(&self) -> usize {
        self.frequencies_uev.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.frequencies_uev.len() != self.couplings_uev.len() {
            return Err(Error::Config(format!(
                "{} bath frequencies but {} couplings",
                self.frequencies_uev.len(),
                self.couplings_uev.len()
            )));
        }
        if self.couplings_uev.iter().any(|g| !(*g >= 0.0)) {
            return Err(Error::Config("bath couplings must be non-negative".into()));
        }
        if self.frequencies_uev.iter().any(|w| !w.is_finite()) {
            return Err(Error::Config("bath frequencies must be finite".into()));
        }
        if self.temperature_mk == 0.0 || self.temperature_mk.is_nan() {
            return Err(Error::Config("bath temperature must be non-zero".into()));
        }
        for (w, g) in self.frequencies_uev.iter().zip(&self.couplings_uev) {
            if *g > 0.1 * w.abs() {
                log::warn!("bath coupling g = {g} μeV is not weak against ω = {w} μeV");
            }
        }
        Ok(())
    }
}

/// Bare qubit Hamiltonian `−(ω/2)σz` (ground state |0⟩).
pub fn qubit_hamiltonian(omega: f64) -> HermitianOperator {
    HermitianOperator::new(pauli_z().scale_real(-omega / 2.0)).expect("σz is hermitian")
}

/// System-plus-bath Hamiltonian on qubits `[system, spectator 1, ...]`:
///
/// `H = −(ω/2)σz^S + Σₖ −(ωₖ/2)σz^{Bₖ} + Σₖ gₖ(σ₊^S σ₋^{Bₖ} + σ₋^S σ₊^{Bₖ})`.
///
/// The register size counts one extra ancilla qubit against the 8-qubit limit.
pub fn build_bath_hamiltonian(system_freq: f64, bath: &BathSpec) -> Result<HermitianOperator> {
    bath.validate()?;
    let n = 1 + bath.num_spectators();
    if n + 1 > MAX_QUBITS {
        return Err(Error::Capacity {
            requested: n + 1,
            limit: MAX_QUBITS,
        });
    }
    let z = pauli_z();
    let mut h = embed_operator(&z.scale_real(-system_freq / 2.0), &[0], None, n);
    let exchange = &sigma_plus().kron(&sigma_minus()) + &sigma_minus().kron(&sigma_plus());
    for (k, (w, g)) in bath
        .frequencies_uev
        .iter()
        .zip(&bath.couplings_uev)
        .enumerate()
    {
        let q = k + 1;
        h = &h + &embed_operator(&z.scale_real(-w / 2.0), &[q], None, n);
        if *g != 0.0 {
            h = &h + &embed_operator(&exchange.scale_real(*g), &[0, q], None, n);
        }
    }
    HermitianOperator::new(h)
}

/// Bare spectator Hamiltonian `Σₖ −(ωₖ/2)σz^{Bₖ}` on the spectator register alone.
pub(crate) fn spectator_hamiltonian(bath: &BathSpec) -> Option<HermitianOperator> {
    let mut it = bath.frequencies_uev.iter().map(|&w| qubit_hamiltonian(w));
    let first = it.next()?;
    let k = bath.num_spectators();
    let mut h = embed_operator(first.matrix(), &[0], None, k);
    for (i, hk) in it.enumerate() {
        h = &h + &embed_operator(hk.matrix(), &[i + 1], None, k);
    }
    HermitianOperator::new(h).ok()
}

/// Long-time average of `e^{−iht} ρ e^{iht}`: the state with every coherence
/// between distinct eigenvalues of `h` removed.
pub fn time_averaged_state(state: &QuantumState, h: &HermitianOperator) -> Result<QuantumState> {
    if state.dim() != h.dim() {
        return Err(Error::arg(format!(
            "state dimension {} differs from Hamiltonian dimension {}",
            state.dim(),
            h.dim()
        )));
    }
    let eig = h.eigh()?;
    let v = &eig.vectors;
    let r = v.dagger().matmul(state.matrix())?.matmul(v)?;
    let d = r.rows();
    let kept = ComplexMatrix::from_fn(d, d, |i, j| {
        if (eig.values[i] - eig.values[j]).abs() <= MERGE_TOL {
            r[(i, j)]
        } else {
            Default::default()
        }
    });
    let back = v.matmul(&kept)?.matmul(&v.dagger())?;
    QuantumState::new(back.hermitian_part(), state.roles().to_vec())
}
