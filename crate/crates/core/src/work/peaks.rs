use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::GridDensity;

/// Default threshold on the per-window asymmetry score.
pub const DEFAULT_COHERENCE_THRESHOLD: f64 = 0.1;

/// Integrated weight of the density inside one window.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeakWeight {
    pub position: f64,
    pub weight: f64,
}

/// Outcome of the symmetry test around the expected peaks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    /// True when every window scores below the threshold.
    pub symmetric: bool,
    /// Largest per-window score.
    pub asymmetry_score: f64,
    /// Score of each window, in the order of the expected positions.
    pub window_scores: Vec<f64>,
    pub threshold: f64,
}

fn check_windows(dist: &GridDensity, positions: &[f64], half_width: f64) -> Result<()> {
    if !(half_width > 0.0) {
        return Err(Error::arg(format!(
            "window half-width {half_width} must be positive"
        )));
    }
    let (lo, hi) = dist.range();
    let slack = 1e-9 * (hi - lo);
    for &p in positions {
        if p - half_width < lo - slack || p + half_width > hi + slack {
            return Err(Error::arg(format!(
                "window [{}, {}] leaves the work grid [{lo}, {hi}]",
                p - half_width,
                p + half_width
            )));
        }
    }
    let mut sorted = positions.to_vec();
    sorted.sort_by(f64::total_cmp);
    if let Some(pair) = sorted
        .windows(2)
        .find(|s| s[1] - s[0] < 2.0 * half_width - slack)
    {
        return Err(Error::arg(format!(
            "windows around {} and {} overlap at half-width {half_width}",
            pair[0], pair[1]
        )));
    }
    Ok(())
}

/// Integrates `dist` over `[p − h, p + h]` for each expected position `p`.
pub fn extract_peaks(
    dist: &GridDensity,
    positions: &[f64],
    half_width: f64,
) -> Result<Vec<PeakWeight>> {
    check_windows(dist, positions, half_width)?;
    Ok(positions
        .iter()
        .map(|&p| PeakWeight {
            position: p,
            weight: dist.integrate(p - half_width, p + half_width),
        })
        .collect())
}

/// Scores how antisymmetric the density is around each expected peak.
///
/// Around position `p`, the density splits into even and odd parts in
/// `x = w − p`. The odd part's energy `∫₀ʰ o(x)² dx` is divided by the
/// largest total energy `∫₀ʰ (e² + o²) dx` among all windows, so windows with
/// no peak score close to zero instead of amplifying noise.
pub fn detect_coherence_signature(
    dist: &GridDensity,
    positions: &[f64],
    half_width: f64,
    threshold: f64,
) -> Result<CoherenceReport> {
    check_windows(dist, positions, half_width)?;
    let step = dist.step();
    let steps = ((half_width / step).floor() as usize).max(1);
    let dx = half_width / steps as f64;
    let energies: Vec<(f64, f64)> = positions
        .iter()
        .map(|&p| {
            let mut odd = 0.0;
            let mut total = 0.0;
            for i in 0..=steps {
                let x = i as f64 * dx;
                let right = dist.value_at(p + x).unwrap_or(0.0);
                let left = dist.value_at(p - x).unwrap_or(0.0);
                let c = if i == 0 || i == steps { 0.5 } else { 1.0 };
                odd += c * (0.5 * (right - left)).powi(2);
                total += c * 0.5 * (right * right + left * left);
            }
            (odd * dx, total * dx)
        })
        .collect();
    let norm = energies.iter().map(|e| e.1).fold(0.0, f64::max);
    let window_scores: Vec<f64> = energies
        .iter()
        .map(|&(odd, _)| if norm > 0.0 { odd / norm } else { 0.0 })
        .collect();
    let asymmetry_score = window_scores.iter().copied().fold(0.0, f64::max);
    Ok(CoherenceReport {
        symmetric: asymmetry_score < threshold,
        asymmetry_score,
        window_scores,
        threshold,
    })
}
