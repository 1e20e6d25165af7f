use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::{CharFnSamples, GridDensity};

/// Optional taper applied to `g(u)` before the transform.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Window {
    /// Plain truncated sum.
    #[default]
    None,
    /// Half-Hann taper `cos²(π u / 2u_max)`, reaching zero at the last sample.
    Hann,
}

/// Reconstructs the work density `2·Re q_>(w)` on `w_grid` from samples of
/// `g(u)` at `u ≥ 0`.
///
/// `q_>(w) = (Δu/2π) Σ_j c_j e^{−iu_j w} g(u_j)` with `c_0 = ½` and `c_j = 1`
/// otherwise (rectangle rule for a half-line integral). Each grid point is an
/// independent sequential sum, so the result does not depend on the thread
/// count.
pub fn half_inverse_fourier(
    samples: &CharFnSamples,
    w_grid: &[f64],
    window: Window,
) -> Result<GridDensity> {
    if samples.len() < 2 {
        return Err(Error::arg(
            "half-inverse Fourier transform needs at least two samples",
        ));
    }
    let du = samples.delta_u();
    let u_max = samples.u()[samples.len() - 1];
    let weighted: Vec<(f64, num_complex::Complex64)> = samples
        .u()
        .iter()
        .zip(samples.values())
        .enumerate()
        .map(|(j, (&u, &g))| {
            let mut c = if j == 0 { 0.5 } else { 1.0 };
            if window == Window::Hann {
                c *= (PI * u / (2.0 * u_max)).cos().powi(2);
            }
            (u, g * c)
        })
        .collect();
    let density = w_grid
        .par_iter()
        .map(|&w| {
            // Re[e^{−iuw} g] = g.re·cos(uw) + g.im·sin(uw)
            let s: f64 = weighted
                .iter()
                .map(|&(u, g)| {
                    let (sin, cos) = (u * w).sin_cos();
                    g.re * cos + g.im * sin
                })
                .sum();
            du / PI * s
        })
        .collect();
    GridDensity::new(w_grid.to_vec(), density)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ops::c;
    use crate::work::{default_work_grid, extract_peaks, UGrid};
    use num_complex::Complex64;
    use proptest::prelude::*;

    const OMEGA: f64 = 20.04;

    fn paper_grid() -> UGrid {
        UGrid::from_count(900, 0.013).unwrap()
    }

    #[test]
    fn two_peak_input_recovers_half_weights() {
        let s = CharFnSamples::from_fn(&paper_grid(), |u| {
            c(0.5, 0.0) + Complex64::from_polar(0.5, u * OMEGA)
        });
        let d = half_inverse_fourier(&s, &default_work_grid(OMEGA), Window::None).unwrap();
        let peaks = extract_peaks(&d, &[-OMEGA, 0.0, OMEGA], 0.4 * OMEGA).unwrap();
        assert!(peaks[0].weight.abs() < 0.02);
        assert!((peaks[1].weight - 0.5).abs() < 0.02);
        assert!((peaks[2].weight - 0.5).abs() < 0.02);
    }

    #[test]
    fn constant_input_gives_unit_peak_at_zero() {
        let s = CharFnSamples::from_fn(&paper_grid(), |_| c(1.0, 0.0));
        for window in [Window::None, Window::Hann] {
            let d = half_inverse_fourier(&s, &default_work_grid(OMEGA), window).unwrap();
            let p = extract_peaks(&d, &[0.0], 0.4 * OMEGA).unwrap();
            assert!((p[0].weight - 1.0).abs() < 0.02, "{window:?}");
        }
    }

    #[test]
    fn density_is_symmetric_for_real_symmetric_spectrum() {
        // g real ⇒ density even in w.
        let s = CharFnSamples::from_fn(&paper_grid(), |u| c((u * OMEGA).cos(), 0.0));
        let d = half_inverse_fourier(&s, &default_work_grid(OMEGA), Window::None).unwrap();
        let v = d.density();
        for k in 0..v.len() {
            assert!((v[k] - v[v.len() - 1 - k]).abs() < 1e-9);
        }
    }

    #[test]
    fn matches_single_threaded_reference() {
        let s = CharFnSamples::from_fn(&UGrid::from_count(50, 0.1).unwrap(), |u| {
            Complex64::from_polar(0.7, 3.0 * u) + c(0.3, 0.0)
        });
        let grid: Vec<f64> = (0..41).map(|k| -10.0 + 0.5 * k as f64).collect();
        let d = half_inverse_fourier(&s, &grid, Window::None).unwrap();
        for (w, got) in grid.iter().zip(d.density()) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, (&u, &g)) in s.u().iter().zip(s.values()).enumerate() {
                let cj = if j == 0 { 0.5 } else { 1.0 };
                acc += Complex64::from_polar(cj, -u * w) * g;
            }
            let expect = 2.0 * (acc * 0.1 / (2.0 * PI)).re;
            assert!((expect - got).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_single_sample() {
        let s = CharFnSamples::new(vec![0.0], vec![c(1.0, 0.0)], 0, 0).unwrap();
        assert!(half_inverse_fourier(&s, &[0.0, 1.0], Window::None).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn synthetic_comb_weights_are_recovered(
            weights in proptest::collection::vec(0.0f64..1.0, 3),
            shift in -0.3f64..0.3,
        ) {
            let total: f64 = weights.iter().sum::<f64>().max(1e-6);
            let positions = [-OMEGA + shift, shift, OMEGA + shift];
            let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
            let s = CharFnSamples::from_fn(&paper_grid(), |u| {
                positions.iter().zip(&probs).map(|(&w, &p)| Complex64::from_polar(p, u * w)).sum()
            });
            let d = half_inverse_fourier(&s, &default_work_grid(OMEGA), Window::None).unwrap();
            let peaks = extract_peaks(&d, &positions, 0.4 * OMEGA).unwrap();
            for (pk, p) in peaks.iter().zip(&probs) {
                prop_assert!((pk.weight - p).abs() < 0.02, "{} vs {}", pk.weight, p);
            }
        }
    }
}
