use log::warn;

use crate::work::WorkDistribution;

use super::Temperature;

/// Exponents `|βw|` beyond this are dropped from grid integrals.
pub const CLIP_EXPONENT: f64 = 50.0;

/// Value of the Jarzynski integral with integration diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JarzynskiValue {
    pub value: f64,
    /// `∫|p(w)| dw` over the clipped region (grid densities only).
    pub clipped_mass: f64,
    /// Total probability of the PDF.
    pub mass: f64,
}

/// `J(T) = ∫ p(w) e^{−w/(k_B T)} dw`.
pub fn jarzynski_integral(pdf: &WorkDistribution, temp: Temperature) -> f64 {
    jarzynski_integral_detailed(pdf, temp).value
}

/// As [`jarzynski_integral`], also reporting clipped and total mass. Delta
/// combs are summed exactly; grid densities use the trapezoid rule on the
/// grid nodes, skipping nodes where `|w|/(k_B T)` exceeds [`CLIP_EXPONENT`].
pub fn jarzynski_integral_detailed(pdf: &WorkDistribution, temp: Temperature) -> JarzynskiValue {
    let v = evaluate(pdf, temp);
    warn_unnormalized(v.mass);
    v
}

pub(crate) fn warn_unnormalized(mass: f64) {
    if (mass - 1.0).abs() > 1e-6 {
        warn!("work PDF carries total probability {mass:.6}, not 1");
    }
}

/// The integral without the normalization warning.
pub(crate) fn evaluate(pdf: &WorkDistribution, temp: Temperature) -> JarzynskiValue {
    let beta = temp.beta();
    let mass = pdf.total_mass();
    match pdf {
        WorkDistribution::DeltaComb(comb) => JarzynskiValue {
            value: comb
                .peaks()
                .iter()
                .map(|&(w, p)| p * (-beta * w).exp())
                .sum(),
            clipped_mass: 0.0,
            mass,
        },
        WorkDistribution::Grid(g) => {
            let h = g.step();
            let last = g.grid().len() - 1;
            let mut value = 0.0;
            let mut clipped_mass = 0.0;
            for (k, (&w, &d)) in g.grid().iter().zip(g.density()).enumerate() {
                let c = if k == 0 || k == last { 0.5 * h } else { h };
                let x = -beta * w;
                if x.abs() > CLIP_EXPONENT {
                    clipped_mass += c * d.abs();
                } else {
                    value += c * d * x.exp();
                }
            }
            JarzynskiValue {
                value,
                clipped_mass,
                mass,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jarzynski::{population_ratio, thermal_state};
    use crate::linalg::ops::sqrt_x;
    use crate::noise::qubit_hamiltonian;
    use crate::work::{linspace, tpm_work_pdf, DeltaComb, GridDensity};

    const OMEGA: f64 = 20.04;

    fn t(mk: f64) -> Temperature {
        Temperature::new(mk).unwrap()
    }

    #[test]
    fn cyclic_closed_drive_satisfies_identity() {
        let h0 = qubit_hamiltonian(OMEGA);
        for mk in [10.0, 67.0, 83.0, 290.0, -87.0] {
            let rho = thermal_state(&h0, t(mk)).unwrap();
            let pdf = WorkDistribution::DeltaComb(tpm_work_pdf(&rho, &h0, &sqrt_x()).unwrap());
            let j = jarzynski_integral(&pdf, t(mk));
            assert!((j - 1.0).abs() < 1e-12, "T = {mk}: J = {j}");
        }
    }

    #[test]
    fn delta_at_zero_gives_one() {
        let pdf = WorkDistribution::DeltaComb(DeltaComb::new(vec![(0.0, 1.0)]).unwrap());
        assert_eq!(jarzynski_integral(&pdf, t(42.0)), 1.0);
    }

    #[test]
    fn mismatched_temperature_breaks_identity() {
        let h0 = qubit_hamiltonian(OMEGA);
        let rho = thermal_state(&h0, t(67.0)).unwrap();
        let pdf = WorkDistribution::DeltaComb(tpm_work_pdf(&rho, &h0, &sqrt_x()).unwrap());
        let j = jarzynski_integral(&pdf, t(134.0));
        // Three peaks: p1/2 at −ω, 1/2 at 0, p0/2 at +ω.
        let q = population_ratio(OMEGA, t(67.0));
        let (p0, p1) = (1.0 / (1.0 + q), q / (1.0 + q));
        let x = OMEGA * t(134.0).beta();
        let expect = 0.5 * p1 * x.exp() + 0.5 + 0.5 * p0 * (-x).exp();
        assert!((j - expect).abs() < 1e-14);
        assert!((j - 1.0).abs() > 1e-3);
    }

    #[test]
    fn grid_integral_clips_far_tails() {
        let grid = linspace(-100.0, 100.0, 201);
        let dens = vec![1.0 / 200.0; 201];
        let pdf = WorkDistribution::Grid(GridDensity::new(grid, dens).unwrap());
        let v = jarzynski_integral_detailed(&pdf, t(10.0));
        assert!(v.clipped_mass > 0.0);
        assert!(v.value.is_finite());
        assert!((v.mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_integral_of_narrow_peak_matches_point_value() {
        let grid = linspace(-40.0, 40.0, 8001);
        let sigma: f64 = 0.2;
        let dens = grid
            .iter()
            .map(|w| {
                (-(w - 20.0f64).powi(2) / (2.0 * sigma * sigma)).exp()
                    / (sigma * (2.0 * std::f64::consts::PI).sqrt())
            })
            .collect();
        let pdf = WorkDistribution::Grid(GridDensity::new(grid, dens).unwrap());
        let beta = t(100.0).beta();
        let expect = (-beta * 20.0 + 0.5 * beta * beta * sigma * sigma).exp();
        assert!((jarzynski_integral(&pdf, t(100.0)) - expect).abs() < 1e-6);
    }
}
