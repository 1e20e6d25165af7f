use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Calibration-style noise parameters of one physical qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitNoise {
    /// Depolarizing probability after each single-qubit gate.
    #[serde(default)]
    pub single_gate_error: f64,
    /// Depolarizing probability after each two-qubit (controlled) gate in
    /// which this qubit is the control.
    #[serde(default)]
    pub two_qubit_gate_error: f64,
    /// Relaxation time in μs; `inf` disables relaxation.
    #[serde(default = "infinite")]
    pub t1_us: f64,
    /// Dephasing time in μs; must not exceed `2·t1_us`.
    #[serde(default = "infinite")]
    pub t2_us: f64,
    /// Excited population the qubit relaxes toward.
    #[serde(default)]
    pub excited_equilibrium: f64,
    /// Row-stochastic readout confusion matrix, `confusion[true][read]`.
    #[serde(default = "perfect_readout")]
    pub confusion: [[f64; 2]; 2],
    /// Probability that preparation leaves the qubit flipped from the
    /// intended computational state (the excited population of a nominal
    /// ground-state preparation).
    #[serde(default)]
    pub initial_excited: f64,
}

fn infinite() -> f64 {
    f64::INFINITY
}

fn perfect_readout() -> [[f64; 2]; 2] {
    [[1.0, 0.0], [0.0, 1.0]]
}

impl Default for QubitNoise {
    fn default() -> Self {
        Self {
            single_gate_error: 0.0,
            two_qubit_gate_error: 0.0,
            t1_us: f64::INFINITY,
            t2_us: f64::INFINITY,
            excited_equilibrium: 0.0,
            confusion: perfect_readout(),
            initial_excited: 0.0,
        }
    }
}

impl QubitNoise {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("single_gate_error", self.single_gate_error),
            ("two_qubit_gate_error", self.two_qubit_gate_error),
            ("excited_equilibrium", self.excited_equilibrium),
            ("initial_excited", self.initial_excited),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name} = {p} is not a probability")));
            }
        }
        if !(self.t1_us > 0.0) || !(self.t2_us > 0.0) {
            return Err(Error::Config("T1 and T2 must be positive".into()));
        }
        if self.t2_us > 2.0 * self.t1_us {
            return Err(Error::Config(format!(
                "T2 = {} μs exceeds 2·T1 = {} μs",
                self.t2_us,
                2.0 * self.t1_us
            )));
        }
        for row in &self.confusion {
            if row.iter().any(|p| !(0.0..=1.0).contains(p)) || (row[0] + row[1] - 1.0).abs() > 1e-9
            {
                return Err(Error::Config(format!(
                    "confusion row {row:?} is not stochastic"
                )));
            }
        }
        Ok(())
    }

    pub fn relaxes(&self) -> bool {
        self.t1_us.is_finite() || self.t2_us.is_finite()
    }

    pub fn has_readout_error(&self) -> bool {
        self.confusion != perfect_readout()
    }
}

/// Gate wall-clock durations in μs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateDurations {
    pub single_us: f64,
    pub two_qubit_us: f64,
}

impl Default for GateDurations {
    fn default() -> Self {
        // Typical fixed-frequency transmon figures.
        Self {
            single_us: 0.035,
            two_qubit_us: 0.533,
        }
    }
}

/// Per-qubit noise parameters keyed by register index. Qubits without an
/// entry are noiseless.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub qubits: BTreeMap<usize, QubitNoise>,
    #[serde(default)]
    pub durations: GateDurations,
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        for q in self.qubits.values() {
            q.validate()?;
        }
        if !(self.durations.single_us >= 0.0) || !(self.durations.two_qubit_us >= 0.0) {
            return Err(Error::Config("gate durations must be non-negative".into()));
        }
        Ok(())
    }

    pub fn qubit(&self, index: usize) -> Option<&QubitNoise> {
        self.qubits.get(&index)
    }

    /// True when every entry is noiseless.
    pub fn is_trivial(&self) -> bool {
        self.qubits.values().all(|q| {
            q.single_gate_error == 0.0
                && q.two_qubit_gate_error == 0.0
                && !q.relaxes()
                && !q.has_readout_error()
                && q.initial_excited == 0.0
        })
    }
}
