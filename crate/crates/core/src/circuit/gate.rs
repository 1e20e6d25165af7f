use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ops::{hadamard, pauli_x, sqrt_x};
use crate::linalg::{ComplexMatrix, HermitianOperator};

const UNITARY_TOL: f64 = 1e-10;

/// Measurement basis of a read-out qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Z,
    Y,
}

impl Basis {
    pub fn index(self) -> u64 {
        match self {
            Basis::Z => 0,
            Basis::Y => 1,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Z => "Z",
            Basis::Y => "Y",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    Hadamard,
    PauliX,
    SqrtX,
    /// Arbitrary unitary on the targets; with a control this is a
    /// controlled-unitary block.
    Unitary(ComplexMatrix),
    /// Free evolution `e^{−iHt}` under `hamiltonian` for a delay `duration`
    /// (μeV⁻¹). The propagator is computed once at construction.
    DelayEvolution {
        hamiltonian: HermitianOperator,
        duration: f64,
        propagator: ComplexMatrix,
    },
}

/// One gate of a [`CircuitSpec`](super::CircuitSpec). Targets are listed
/// most-significant first; an optional control `(qubit, value)` restricts the
/// gate to the subspace where the control qubit reads `value`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<usize>,
    control: Option<(usize, u8)>,
}

impl Gate {
    fn single(kind: GateKind, q: usize) -> Self {
        Self {
            kind,
            targets: vec![q],
            control: None,
        }
    }

    pub fn hadamard(q: usize) -> Self {
        Self::single(GateKind::Hadamard, q)
    }

    pub fn x(q: usize) -> Self {
        Self::single(GateKind::PauliX, q)
    }

    pub fn sqrt_x(q: usize) -> Self {
        Self::single(GateKind::SqrtX, q)
    }

    pub fn unitary(matrix: ComplexMatrix, targets: Vec<usize>) -> Result<Self> {
        check_targets(&targets, &matrix)?;
        if !matrix.is_unitary(UNITARY_TOL) {
            return Err(Error::arg("gate payload is not unitary within 1e-10"));
        }
        Ok(Self {
            kind: GateKind::Unitary(matrix),
            targets,
            control: None,
        })
    }

    pub fn delay(
        hamiltonian: HermitianOperator,
        duration: f64,
        targets: Vec<usize>,
    ) -> Result<Self> {
        if !duration.is_finite() {
            return Err(Error::arg("delay duration must be finite"));
        }
        let propagator = hamiltonian.evolution(duration)?;
        check_targets(&targets, &propagator)?;
        Ok(Self {
            kind: GateKind::DelayEvolution {
                hamiltonian,
                duration,
                propagator,
            },
            targets,
            control: None,
        })
    }

    /// Adds a control on `qubit` with control value `value` (0 or 1).
    pub fn controlled_on(mut self, qubit: usize, value: u8) -> Result<Self> {
        if value > 1 {
            return Err(Error::arg("control value must be 0 or 1"));
        }
        if self.targets.contains(&qubit) {
            return Err(Error::arg(format!(
                "control qubit {qubit} is also a target"
            )));
        }
        self.control = Some((qubit, value));
        Ok(self)
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn control(&self) -> Option<(usize, u8)> {
        self.control
    }

    /// Targets plus control.
    pub fn qubits(&self) -> Vec<usize> {
        let mut q = self.targets.clone();
        if let Some((c, _)) = self.control {
            q.push(c);
        }
        q
    }

    pub fn is_delay(&self) -> bool {
        matches!(self.kind, GateKind::DelayEvolution { .. })
    }

    /// The operator on the targets alone (control not included).
    pub fn local_matrix(&self) -> ComplexMatrix {
        match &self.kind {
            GateKind::Hadamard => hadamard(),
            GateKind::PauliX => pauli_x(),
            GateKind::SqrtX => sqrt_x(),
            GateKind::Unitary(m) => m.clone(),
            GateKind::DelayEvolution { propagator, .. } => propagator.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            GateKind::Hadamard => "h",
            GateKind::PauliX => "x",
            GateKind::SqrtX => "sx",
            GateKind::Unitary(_) => "unitary",
            GateKind::DelayEvolution { .. } => "delay_evolution",
        }
    }
}

fn check_targets(targets: &[usize], m: &ComplexMatrix) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::arg("gate needs at least one target"));
    }
    for (i, t) in targets.iter().enumerate() {
        if targets[..i].contains(t) {
            return Err(Error::arg(format!("duplicate target {t}")));
        }
    }
    if m.qubit_count() != Some(targets.len()) {
        return Err(Error::arg(format!(
            "{}x{} payload does not act on {} qubits",
            m.rows(),
            m.cols(),
            targets.len()
        )));
    }
    Ok(())
}
