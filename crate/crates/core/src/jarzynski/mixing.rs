use crate::error::{Error, Result};
use crate::work::{DeltaComb, GridDensity, WorkDistribution, MERGE_TOL};

use super::temperature::{excited_population, fermi};
use super::Temperature;
use crate::units::BOLTZMANN_UEV_PER_MK as K_B;

/// Convex combination `r·pdf_cold + (1 − r)·pdf_hot` of two work PDFs measured
/// from qubit preparations at `t0` and `t1`.
#[derive(Clone, Debug)]
pub struct MixedPdfSpec {
    pub pdf_cold: WorkDistribution,
    pub pdf_hot: WorkDistribution,
    pub r: f64,
    pub t0: Temperature,
    pub t1: Temperature,
    /// Qubit splitting ħω in μeV.
    pub omega: f64,
}

/// Temperature of the qubit state `r·ρ(t0) + (1 − r)·ρ(t1)`.
///
/// With `f(x) = 1/(1 + eˣ)` the mixed excited population is
/// `P₁ = r f(ħωβ₀) + (1 − r) f(ħωβ₁)`, and the temperature follows from
/// `P₁/P₀ = e^{−ħω/(k_B T)}`, i.e. `T = ħω / (k_B ln(P₀/P₁))`.
pub fn mixed_temperature(
    omega: f64,
    r: f64,
    t0: Temperature,
    t1: Temperature,
) -> Result<Temperature> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::arg(format!("mixing weight r = {r} outside [0, 1]")));
    }
    if r == 1.0 {
        return Ok(t0);
    }
    if r == 0.0 {
        return Ok(t1);
    }
    let p1 = r * fermi(omega * t0.beta()) + (1.0 - r) * fermi(omega * t1.beta());
    let p0 = r * fermi(-omega * t0.beta()) + (1.0 - r) * fermi(-omega * t1.beta());
    let log = (p0 / p1).ln();
    if log == 0.0 || !log.is_finite() {
        return Err(Error::numerical(format!(
            "mixture at r = {r} has equal populations (infinite temperature)"
        )));
    }
    Temperature::new(omega / (K_B * log))
}

/// Mixes the PDFs and returns the mixture with its temperature.
pub fn mix_pdfs(spec: &MixedPdfSpec) -> Result<(WorkDistribution, Temperature)> {
    let temp = mixed_temperature(spec.omega, spec.r, spec.t0, spec.t1)?;
    let r = spec.r;
    let mixed = match (&spec.pdf_cold, &spec.pdf_hot) {
        (WorkDistribution::DeltaComb(a), WorkDistribution::DeltaComb(b)) => {
            let same = a.peaks().len() == b.peaks().len()
                && a.positions()
                    .zip(b.positions())
                    .all(|(x, y)| (x - y).abs() <= MERGE_TOL);
            if !same {
                return Err(Error::arg("delta combs to mix have different supports"));
            }
            WorkDistribution::DeltaComb(DeltaComb::new(
                a.peaks()
                    .iter()
                    .zip(b.peaks())
                    .map(|(&(w, p), &(_, q))| (w, r * p + (1.0 - r) * q))
                    .collect(),
            )?)
        }
        (WorkDistribution::Grid(a), WorkDistribution::Grid(b)) => {
            if !a.same_grid(b) {
                return Err(Error::arg(
                    "grid densities to mix live on different work grids",
                ));
            }
            WorkDistribution::Grid(GridDensity::new(
                a.grid().to_vec(),
                a.density()
                    .iter()
                    .zip(b.density())
                    .map(|(p, q)| r * p + (1.0 - r) * q)
                    .collect(),
            )?)
        }
        _ => return Err(Error::arg("cannot mix a delta comb with a grid density")),
    };
    Ok((mixed, temp))
}

/// Maps a target qubit temperature to the mixing weight `r` that produces it
/// from preparations at `t0` and `t1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingCurve {
    pub omega: f64,
    pub t0: Temperature,
    pub t1: Temperature,
}

impl MixingCurve {
    pub fn new(omega: f64, t0: Temperature, t1: Temperature) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::arg(format!(
                "splitting {omega} μeV must be positive"
            )));
        }
        let curve = Self { omega, t0, t1 };
        if (curve.p1(t0) - curve.p1(t1)).abs() < 1e-15 {
            return Err(Error::arg("end temperatures give identical populations"));
        }
        Ok(curve)
    }

    fn p1(&self, t: Temperature) -> f64 {
        excited_population(self.omega, t)
    }

    /// The excited population is linear in `r`, so the weight follows in
    /// closed form. Temperatures outside the reachable range are rejected.
    pub fn weight_for(&self, temp: Temperature) -> Result<f64> {
        let r = (self.p1(temp) - self.p1(self.t1)) / (self.p1(self.t0) - self.p1(self.t1));
        let slack = 1e-12;
        if !(-slack..=1.0 + slack).contains(&r) {
            return Err(Error::arg(format!(
                "{temp} is not reachable by mixing {} and {}",
                self.t0, self.t1
            )));
        }
        Ok(r.clamp(0.0, 1.0))
    }
}

/// Builds `T ↦ p(w, T)` by mixing two measured PDFs at the weight that
/// produces each requested temperature.
pub fn mixing_builder(
    pdf_cold: WorkDistribution,
    pdf_hot: WorkDistribution,
    curve: MixingCurve,
) -> impl Fn(Temperature) -> Result<WorkDistribution> + Sync {
    move |temp| {
        let spec = MixedPdfSpec {
            pdf_cold: pdf_cold.clone(),
            pdf_hot: pdf_hot.clone(),
            r: curve.weight_for(temp)?,
            t0: curve.t0,
            t1: curve.t1,
            omega: curve.omega,
        };
        mix_pdfs(&spec).map(|(pdf, _)| pdf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jarzynski::population_ratio;

    const OMEGA: f64 = 20.04;

    fn t(mk: f64) -> Temperature {
        Temperature::new(mk).unwrap()
    }

    fn comb(p: [f64; 3]) -> WorkDistribution {
        WorkDistribution::DeltaComb(
            DeltaComb::new(vec![(-OMEGA, p[0]), (0.0, p[1]), (OMEGA, p[2])]).unwrap(),
        )
    }

    /// Mixes excited populations, then inverts the Boltzmann ratio.
    fn constructive(r: f64, t0: f64, t1: f64) -> f64 {
        let pe = |mk: f64| {
            let q = population_ratio(OMEGA, t(mk));
            q / (1.0 + q)
        };
        let p1 = r * pe(t0) + (1.0 - r) * pe(t1);
        let ratio = p1 / (1.0 - p1);
        -OMEGA / (K_B * ratio.ln())
    }

    #[test]
    fn end_weights_return_end_points() {
        let cold = comb([0.01, 0.5, 0.49]);
        let hot = comb([0.4, 0.5, 0.1]);
        for (r, expect_pdf, expect_t) in [(1.0, &cold, 83.0), (0.0, &hot, -87.0)] {
            let (pdf, temp) = mix_pdfs(&MixedPdfSpec {
                pdf_cold: cold.clone(),
                pdf_hot: hot.clone(),
                r,
                t0: t(83.0),
                t1: t(-87.0),
                omega: OMEGA,
            })
            .unwrap();
            assert_eq!(&pdf, expect_pdf);
            assert_eq!(temp.mk(), expect_t);
        }
    }

    #[test]
    fn closed_form_matches_population_mixing() {
        for k in 0..=10 {
            let r = k as f64 / 10.0;
            let closed = mixed_temperature(OMEGA, r, t(83.0), t(-87.0)).unwrap().mk();
            let built = constructive(r, 83.0, -87.0);
            assert!(
                (closed - built).abs() <= 1e-9 * built.abs(),
                "r = {r}: {closed} vs {built}"
            );
        }
    }

    #[test]
    fn half_mixture_is_very_hot() {
        let temp = mixed_temperature(OMEGA, 0.5, t(83.0), t(-87.0)).unwrap();
        assert!(temp.mk() > 1000.0, "{temp}");
    }

    #[test]
    fn mismatched_supports_are_rejected() {
        let a = comb([0.0, 0.5, 0.5]);
        let b = WorkDistribution::DeltaComb(DeltaComb::new(vec![(0.0, 1.0)]).unwrap());
        let spec = MixedPdfSpec {
            pdf_cold: a,
            pdf_hot: b,
            r: 0.3,
            t0: t(83.0),
            t1: t(-87.0),
            omega: OMEGA,
        };
        assert!(mix_pdfs(&spec).is_err());
        assert!(mixed_temperature(OMEGA, 1.5, t(83.0), t(-87.0)).is_err());
    }

    #[test]
    fn curve_inverts_mixed_temperature() {
        let curve = MixingCurve::new(OMEGA, t(83.0), t(-87.0)).unwrap();
        for mk in [83.0, 100.0, 150.0, 290.0, 5000.0, -200.0, -87.0] {
            let r = curve.weight_for(t(mk)).unwrap();
            let back = mixed_temperature(OMEGA, r, t(83.0), t(-87.0)).unwrap().mk();
            assert!(
                (back - mk).abs() < 1e-6 * mk.abs(),
                "{mk} -> r = {r} -> {back}"
            );
        }
        assert!(curve.weight_for(t(50.0)).is_err());
        assert!(curve.weight_for(t(-50.0)).is_err());
    }
}
