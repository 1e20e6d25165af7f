use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator, QubitRole};

use super::{Basis, CircuitSpec, Gate};

/// Builds the interferometric circuit for delay `u` (μeV⁻¹).
///
/// The register is `[system.., bath.., ancilla]`: `drive` acts on the leading
/// system qubits (identity on the bath) and `h0` on system plus bath. With
/// `V = drive ⊗ 𝟙_B` the gate sequence is
///
/// 1. `H` on the ancilla,
/// 2. ancilla = 1: `V`, then `e^{−iu·h0}` (net `e^{−iu·h0}·V`),
/// 3. ancilla = 0: `e^{−iu·h0}`, then `V` (net `V·e^{−iu·h0}`),
/// 4. `H` on the ancilla, then read-out in `basis`.
///
/// After step 4, `⟨σz⟩ + i⟨σy⟩` of the ancilla equals
/// `Tr[V† e^{iu·h0} V e^{−iu·h0} ρ]`. Delay gates are omitted for `u = 0`.
pub fn build_interferometric_circuit(
    h0: &HermitianOperator,
    drive: &ComplexMatrix,
    u: f64,
    basis: Basis,
) -> Result<CircuitSpec> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::arg(format!(
            "delay u = {u} must be a finite non-negative value"
        )));
    }
    let sb_qubits = h0
        .matrix()
        .qubit_count()
        .ok_or_else(|| Error::arg("h0 dimension is not a power of two"))?;
    let sys_qubits = drive
        .qubit_count()
        .ok_or_else(|| Error::arg("drive dimension is not a power of two"))?;
    if sys_qubits == 0 || sys_qubits > sb_qubits {
        return Err(Error::arg(format!(
            "drive on {sys_qubits} qubits does not fit a {sb_qubits}-qubit system+bath"
        )));
    }
    let ancilla = sb_qubits;
    let mut roles = vec![QubitRole::System; sys_qubits];
    roles.extend(std::iter::repeat(QubitRole::Bath).take(sb_qubits - sys_qubits));
    roles.push(QubitRole::Ancilla);
    if roles.len() > crate::units::MAX_QUBITS {
        return Err(Error::Capacity {
            requested: roles.len(),
            limit: crate::units::MAX_QUBITS,
        });
    }

    let system: Vec<usize> = (0..sys_qubits).collect();
    let system_bath: Vec<usize> = (0..sb_qubits).collect();
    let drive_gate = Gate::unitary(drive.clone(), system)?;
    let delay_gate = (u > 0.0)
        .then(|| Gate::delay(h0.clone(), u, system_bath))
        .transpose()?;

    let mut c = CircuitSpec::new(roles)?;
    c.push(Gate::hadamard(ancilla))?;
    c.push(drive_gate.clone().controlled_on(ancilla, 1)?)?;
    if let Some(d) = &delay_gate {
        c.push(d.clone().controlled_on(ancilla, 1)?)?;
        c.push(d.clone().controlled_on(ancilla, 0)?)?;
    }
    c.push(drive_gate.controlled_on(ancilla, 0)?)?;
    c.push(Gate::hadamard(ancilla))?;
    c.measure(ancilla, basis)?;
    Ok(c)
}
