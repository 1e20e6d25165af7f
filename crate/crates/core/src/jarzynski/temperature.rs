use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ops::c;
use crate::linalg::{HermitianOperator, QuantumState, QubitRole};
use crate::units::BOLTZMANN_UEV_PER_MK as K_B;

/// Temperature in mK. Negative values describe population inversion; zero is
/// excluded.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(mk: f64) -> Result<Self> {
        if mk == 0.0 || !mk.is_finite() {
            return Err(Error::arg(format!(
                "temperature {mk} mK must be finite and non-zero"
            )));
        }
        Ok(Self(mk))
    }

    pub fn mk(self) -> f64 {
        self.0
    }

    /// Inverse temperature `1/(k_B T)` in μeV⁻¹.
    pub fn beta(self) -> f64 {
        1.0 / (K_B * self.0)
    }

    /// The temperature whose inverse is `beta` (μeV⁻¹).
    pub fn from_beta(beta: f64) -> Result<Self> {
        Self::new(1.0 / (K_B * beta))
    }
}

impl TryFrom<f64> for Temperature {
    type Error = Error;

    fn try_from(mk: f64) -> Result<Self> {
        Self::new(mk)
    }
}

impl From<Temperature> for f64 {
    fn from(t: Temperature) -> f64 {
        t.0
    }
}

impl fmt::Display for Temperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mK", self.0)
    }
}

/// Gibbs state `e^{−βh}/Z`; every qubit gets the `System` role.
pub fn thermal_state(h: &HermitianOperator, temp: Temperature) -> Result<QuantumState> {
    let eig = h.eigh()?;
    let beta = temp.beta();
    // Shift the exponent by its maximum so neither sign of T overflows.
    let top = eig
        .values
        .iter()
        .map(|e| -beta * e)
        .fold(f64::NEG_INFINITY, f64::max);
    let z: f64 = eig.values.iter().map(|e| (-beta * e - top).exp()).sum();
    let rho = eig.reassemble(|e| c((-beta * e - top).exp() / z, 0.0));
    let n = rho
        .qubit_count()
        .ok_or_else(|| Error::arg("Hamiltonian dimension is not a power of two"))?;
    QuantumState::new(rho.hermitian_part(), vec![QubitRole::System; n])
}

/// Excited-to-ground population ratio `e^{−ħω/(k_B T)}` of a two-level system
/// with splitting `omega` (μeV).
pub fn population_ratio(omega: f64, temp: Temperature) -> f64 {
    (-omega * temp.beta()).exp()
}

/// Excited population `1/(1 + e^{ħωβ})` of a two-level system.
pub fn excited_population(omega: f64, temp: Temperature) -> f64 {
    fermi(omega * temp.beta())
}

pub(crate) fn fermi(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::noise::qubit_hamiltonian;
    use proptest::prelude::*;

    const OMEGA: f64 = 20.04;

    fn t(mk: f64) -> Temperature {
        Temperature::new(mk).unwrap()
    }

    #[test]
    fn zero_and_nan_temperatures_are_rejected() {
        assert!(Temperature::new(0.0).is_err());
        assert!(Temperature::new(f64::NAN).is_err());
        assert!(Temperature::new(-87.0).is_ok());
    }

    #[test]
    fn qubit_at_67_mk_is_mostly_ground() {
        let rho = thermal_state(&qubit_hamiltonian(OMEGA), t(67.0)).unwrap();
        let p = rho.populations();
        assert!((p[0] - 0.97).abs() < 0.005, "p0 = {}", p[0]);
        let r = population_ratio(OMEGA, t(67.0));
        assert!((r - 0.031).abs() < 0.001, "ratio = {r}");
        assert!((p[1] / p[0] - r).abs() < 1e-14);
    }

    #[test]
    fn very_hot_state_is_maximally_mixed() {
        let rho = thermal_state(&qubit_hamiltonian(OMEGA), t(1e9)).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5))
                < 1e-6
        );
        assert!((population_ratio(OMEGA, t(1e12)) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn negative_temperature_inverts_populations() {
        let rho = thermal_state(&qubit_hamiltonian(OMEGA), t(-87.0)).unwrap();
        let p = rho.populations();
        assert!(p[1] > 0.5);
        let ratio = population_ratio(OMEGA, t(-87.0));
        assert!(ratio > 1.0);
        assert!((p[1] / p[0] - ratio).abs() < 1e-12 * ratio);
    }

    #[test]
    fn fermi_is_stable_at_extremes() {
        assert_eq!(fermi(1000.0), 0.0);
        assert_eq!(fermi(-1000.0), 1.0);
        assert!((fermi(0.0) - 0.5).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn ratio_times_mirror_is_one(mk in 1.0f64..1000.0, omega in 1.0f64..50.0) {
            let prod = population_ratio(omega, t(mk)) * population_ratio(omega, t(-mk));
            prop_assert!((prod - 1.0).abs() < 1e-12);
        }

        #[test]
        fn diagonal_gibbs_populations_follow_boltzmann(
            energies in proptest::collection::vec(-30.0f64..30.0, 4),
            mk in prop_oneof![5.0f64..500.0, -500.0f64..-5.0],
        ) {
            let h = HermitianOperator::new(ComplexMatrix::from_real_diagonal(&energies)).unwrap();
            let p = thermal_state(&h, t(mk)).unwrap().populations();
            let beta = t(mk).beta();
            for i in 0..4 {
                for j in 0..4 {
                    let expect = (-beta * (energies[i] - energies[j])).exp();
                    prop_assert!((p[i] / p[j] - expect).abs() <= 1e-12 * expect.max(1.0));
                }
            }
        }
    }
}
