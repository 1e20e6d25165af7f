use crate::error::{Error, Result};
use crate::linalg::QubitRole;

use super::{Basis, Gate};

/// A gate sequence on a register with system, bath and exactly one ancilla
/// qubit, plus the bases in which qubits are read out.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitSpec {
    roles: Vec<QubitRole>,
    gates: Vec<Gate>,
    measurements: Vec<(usize, Basis)>,
}

impl CircuitSpec {
    pub fn new(roles: Vec<QubitRole>) -> Result<Self> {
        let ancillas = roles.iter().filter(|r| **r == QubitRole::Ancilla).count();
        if ancillas != 1 {
            return Err(Error::arg(format!(
                "circuit needs exactly one ancilla, found {ancillas}"
            )));
        }
        Ok(Self {
            roles,
            gates: vec![],
            measurements: vec![],
        })
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let n = self.num_qubits();
        if let Some(q) = gate.qubits().into_iter().find(|&q| q >= n) {
            return Err(Error::arg(format!(
                "gate touches qubit {q} of a {n}-qubit circuit"
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn measure(&mut self, qubit: usize, basis: Basis) -> Result<()> {
        if qubit >= self.num_qubits() {
            return Err(Error::arg(format!("cannot measure qubit {qubit}")));
        }
        self.measurements.push((qubit, basis));
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn measurements(&self) -> &[(usize, Basis)] {
        &self.measurements
    }

    pub fn ancilla(&self) -> usize {
        self.roles
            .iter()
            .position(|r| *r == QubitRole::Ancilla)
            .expect("validated at construction")
    }
}
