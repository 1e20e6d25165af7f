use crate::error::{Error, Result};

/// Positions closer than this (μeV) are the same work value.
pub const MERGE_TOL: f64 = 1e-9;

/// A work distribution, either as an exact comb of weighted delta peaks or as
/// a density sampled on a uniform work grid.
#[derive(Clone, Debug, PartialEq)]
pub enum WorkDistribution {
    DeltaComb(DeltaComb),
    Grid(GridDensity),
}

impl WorkDistribution {
    /// Total probability (sum of weights, or trapezoidal integral).
    pub fn total_mass(&self) -> f64 {
        match self {
            WorkDistribution::DeltaComb(c) => c.total_weight(),
            WorkDistribution::Grid(g) => g.total_mass(),
        }
    }
}

/// Delta peaks `(w, weight)` sorted by position, positions distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaComb {
    peaks: Vec<(f64, f64)>,
}

impl DeltaComb {
    /// Sorts by position and merges entries within [`MERGE_TOL`].
    pub fn new(mut peaks: Vec<(f64, f64)>) -> Result<Self> {
        if peaks.iter().any(|(w, p)| !w.is_finite() || !p.is_finite()) {
            return Err(Error::arg("delta comb entries must be finite"));
        }
        peaks.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64, usize)> = Vec::with_capacity(peaks.len());
        for (w, p) in peaks {
            match merged.last_mut() {
                Some((w0, p0, count)) if (w - *w0 / *count as f64).abs() <= MERGE_TOL => {
                    *w0 += w;
                    *p0 += p;
                    *count += 1;
                }
                _ => merged.push((w, p, 1)),
            }
        }
        Ok(Self {
            peaks: merged
                .into_iter()
                .map(|(w, p, count)| (w / count as f64, p))
                .collect(),
        })
    }

    pub fn peaks(&self) -> &[(f64, f64)] {
        &self.peaks
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        self.peaks.iter().map(|p| p.0)
    }

    pub fn total_weight(&self) -> f64 {
        self.peaks.iter().map(|p| p.1).sum()
    }

    /// Weight at `w` (zero if no peak sits within `tol`).
    pub fn weight_at(&self, w: f64, tol: f64) -> f64 {
        self.peaks
            .iter()
            .filter(|(x, _)| (x - w).abs() <= tol)
            .map(|(_, p)| p)
            .sum()
    }

    /// True when weights sum to one within 1e-9 and none is below −1e-12.
    pub fn is_proper(&self) -> bool {
        (self.total_weight() - 1.0).abs() <= 1e-9 && self.peaks.iter().all(|(_, p)| *p >= -1e-12)
    }

    /// `Σ weight·e^{iuw}`, the characteristic function of the comb.
    pub fn characteristic(&self, u: f64) -> num_complex::Complex64 {
        self.peaks
            .iter()
            .map(|&(w, p)| num_complex::Complex64::from_polar(p, u * w))
            .sum()
    }
}

/// Density (per μeV) sampled on a uniform, strictly increasing work grid (μeV).
#[derive(Clone, Debug, PartialEq)]
pub struct GridDensity {
    grid: Vec<f64>,
    density: Vec<f64>,
}

impl GridDensity {
    pub fn new(grid: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        if grid.len() < 2 || grid.len() != density.len() {
            return Err(Error::arg(
                "grid density needs at least two points and one value per point",
            ));
        }
        let step = grid[1] - grid[0];
        if !(step > 0.0) {
            return Err(Error::arg("work grid must be strictly increasing"));
        }
        let span = grid[grid.len() - 1] - grid[0];
        let tol = 1e-9 * span.abs().max(1.0);
        for (k, w) in grid.iter().enumerate() {
            if (w - (grid[0] + k as f64 * step)).abs() > tol {
                return Err(Error::arg("work grid must be uniformly spaced"));
            }
        }
        Ok(Self { grid, density })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn step(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    pub fn range(&self) -> (f64, f64) {
        (self.grid[0], self.grid[self.grid.len() - 1])
    }

    pub fn same_grid(&self, other: &GridDensity) -> bool {
        self.grid.len() == other.grid.len()
            && self
                .grid
                .iter()
                .zip(&other.grid)
                .all(|(a, b)| (a - b).abs() <= MERGE_TOL)
    }

    /// Linear interpolation; `None` outside the grid.
    pub fn value_at(&self, w: f64) -> Option<f64> {
        let (lo, hi) = self.range();
        if w < lo - MERGE_TOL || w > hi + MERGE_TOL {
            return None;
        }
        let x = ((w - lo) / self.step()).clamp(0.0, (self.grid.len() - 1) as f64);
        let i = (x.floor() as usize).min(self.grid.len() - 2);
        let t = x - i as f64;
        Some(self.density[i] * (1.0 - t) + self.density[i + 1] * t)
    }

    /// Trapezoidal integral of the piecewise-linear density over `[a, b] ∩ grid`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        self.integrate_weighted(a, b, |_| 1.0)
    }

    /// Trapezoidal integral of `density(w)·f(w)` over `[a, b] ∩ grid`, with the
    /// interval ends interpolated.
    pub fn integrate_weighted(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (lo, hi) = self.range();
        let (a, b) = (a.max(lo), b.min(hi));
        if b <= a {
            return 0.0;
        }
        let mut nodes = vec![a];
        nodes.extend(self.grid.iter().copied().filter(|&w| w > a && w < b));
        nodes.push(b);
        nodes
            .windows(2)
            .map(|s| {
                let (x0, x1) = (s[0], s[1]);
                let y0 = self.value_at(x0).unwrap_or(0.0) * f(x0);
                let y1 = self.value_at(x1).unwrap_or(0.0) * f(x1);
                0.5 * (x1 - x0) * (y0 + y1)
            })
            .sum()
    }

    pub fn total_mass(&self) -> f64 {
        let (lo, hi) = self.range();
        self.integrate(lo, hi)
    }
}

/// `points` evenly spaced values on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|k| lo + k as f64 * step).collect()
}

/// Default work grid `[−2.5ħω, +2.5ħω]` with 1001 points.
pub fn default_work_grid(omega: f64) -> Vec<f64> {
    linspace(-2.5 * omega, 2.5 * omega, 1001)
}
