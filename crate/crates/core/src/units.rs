//! Physical constants in the crate's unit system.
//!
//! Energies are in μeV, delay times `u` in μeV⁻¹ (ħ = 1), temperatures in mK
//! and wall-clock durations in μs.

/// Boltzmann constant in μeV per mK (86.17 μeV/K).
pub const BOLTZMANN_UEV_PER_MK: f64 = 0.08617;

/// Planck constant in μeV per GHz.
pub const PLANCK_UEV_PER_GHZ: f64 = 4.1357;

/// Reduced Planck constant in μeV·μs, converts a delay `u` (μeV⁻¹) to μs.
pub const HBAR_UEV_US: f64 = 6.582_119_569e-4;

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 8;

/// Photon energy hf in μeV for a transition frequency in GHz.
pub fn ghz_to_uev(frequency_ghz: f64) -> f64 {
    frequency_ghz * PLANCK_UEV_PER_GHZ
}

/// Wall-clock duration in μs of a free evolution over delay `u` (μeV⁻¹).
pub fn delay_to_us(u: f64) -> f64 {
    u * HBAR_UEV_US
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transmon_frequency_matches_quoted_energy() {
        // 4.85 GHz is quoted alongside 20.04 μeV; the rounded constants agree to 0.1 %.
        let e = ghz_to_uev(4.85);
        assert!((e - 20.04).abs() / 20.04 < 1e-3, "{e}");
    }

    #[test]
    fn boltzmann_in_kelvin() {
        assert!((BOLTZMANN_UEV_PER_MK * 1000.0 - 86.17).abs() < 1e-12);
    }
}
