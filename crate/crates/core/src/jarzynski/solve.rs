use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::work::WorkDistribution;

use super::integral::{evaluate, warn_unnormalized};
use super::Temperature;

/// Sampled `J(T)` curve, ordered by temperature.
#[derive(Clone, Debug, PartialEq)]
pub struct JCurve {
    pub points: Vec<(f64, f64)>,
}

impl JCurve {
    /// Evaluates `J(T)` at each temperature in parallel, keeping input order.
    pub fn sample<F>(builder: &F, temps: &[Temperature]) -> Result<Self>
    where
        F: Fn(Temperature) -> Result<WorkDistribution> + Sync,
    {
        let points = temps
            .par_iter()
            .map(|&t| {
                let pdf = builder(t)?;
                Ok((t.mk(), evaluate(&pdf, t).value, pdf.total_mass()))
            })
            .collect::<Result<Vec<(f64, f64, f64)>>>()?;
        if let Some(worst) = points
            .iter()
            .map(|p| p.2)
            .max_by(|a, b| (a - 1.0).abs().total_cmp(&(b - 1.0).abs()))
        {
            warn_unnormalized(worst);
        }
        Ok(Self {
            points: points.into_iter().map(|(t, j, _)| (t, j)).collect(),
        })
    }

    /// Columns `T_mK, J`.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let io = |e: csv::Error| Error::Config(format!("{}: {e}", path.display()));
        w.write_record(["T_mK", "J"]).map_err(io)?;
        for (t, j) in &self.points {
            w.write_record([t.to_string(), j.to_string()]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Fails with [`Error::NonMonotonic`] at the first step where `J` does
    /// not strictly decrease.
    pub fn check_decreasing(&self) -> Result<()> {
        for pair in self.points.windows(2) {
            if !(pair[1].1 < pair[0].1) {
                return Err(Error::NonMonotonic {
                    at_mk: pair[1].0,
                    j_prev: pair[0].1,
                    j_next: pair[1].1,
                });
            }
        }
        Ok(())
    }
}

/// Controls the curve sampling and the bisection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Number of evenly spaced temperatures on the sampled curve.
    pub curve_points: usize,
    /// Bisection stops once the bracket is narrower than this (mK).
    pub resolution_mk: f64,
    /// Require the sampled curve to decrease strictly before solving.
    pub require_monotone: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            curve_points: 41,
            resolution_mk: 0.1,
            require_monotone: true,
        }
    }
}

/// Root of `J(T) = 1` with the evidence used to find it.
#[derive(Clone, Debug, PartialEq)]
pub struct ThermometryResult {
    pub root: Temperature,
    /// Final bisection bracket in mK.
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub curve: JCurve,
}

impl ThermometryResult {
    /// `key=value` lines describing the root.
    pub fn report(&self, curve_file: Option<&str>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "root_mK={}", self.root.mk());
        let _ = writeln!(s, "bracket_lo_mK={}", self.bracket.0);
        let _ = writeln!(s, "bracket_hi_mK={}", self.bracket.1);
        let _ = writeln!(s, "iterations={}", self.iterations);
        let _ = writeln!(s, "curve_points={}", self.curve.points.len());
        if let Some(f) = curve_file {
            let _ = writeln!(s, "curve_file={f}");
        }
        s
    }
}

/// Solves `J(T) = 1` for `T` in `[lo, hi]`.
///
/// The curve is first sampled on `options.curve_points` temperatures and
/// checked for a strict decrease. The sampled interval whose ends straddle 1
/// is then bisected, calling `builder` at each midpoint, until narrower than
/// `options.resolution_mk`.
pub fn solve_bath_temperature<F>(
    builder: &F,
    lo: Temperature,
    hi: Temperature,
    options: SolveOptions,
) -> Result<ThermometryResult>
where
    F: Fn(Temperature) -> Result<WorkDistribution> + Sync,
{
    let (a, b) = (lo.mk(), hi.mk());
    if !(a < b) || a.signum() != b.signum() {
        return Err(Error::arg(format!(
            "search range [{a}, {b}] mK must be increasing and must not contain 0"
        )));
    }
    if options.curve_points < 2 || !(options.resolution_mk > 0.0) {
        return Err(Error::arg(
            "need at least two curve points and a positive resolution",
        ));
    }
    let n = options.curve_points;
    let temps = (0..n)
        .map(|k| Temperature::new(a + (b - a) * k as f64 / (n - 1) as f64))
        .collect::<Result<Vec<_>>>()?;
    let curve = JCurve::sample(builder, &temps)?;
    if options.require_monotone {
        curve.check_decreasing()?;
    }
    let (first, last) = (curve.points[0], curve.points[n - 1]);
    if (first.1 - 1.0).signum() == (last.1 - 1.0).signum() {
        return Err(Error::NoSignChange {
            lo_mk: a,
            hi_mk: b,
            j_lo: first.1,
            j_hi: last.1,
        });
    }
    let k = curve
        .points
        .windows(2)
        .position(|s| (s[0].1 - 1.0).signum() != (s[1].1 - 1.0).signum())
        .expect("endpoints straddle 1, so some interval does");
    let (mut x0, mut f0) = (curve.points[k].0, curve.points[k].1 - 1.0);
    let mut x1 = curve.points[k + 1].0;
    let mut iterations = 0;
    while x1 - x0 > options.resolution_mk {
        let mid = 0.5 * (x0 + x1);
        let t = Temperature::new(mid)?;
        let fm = evaluate(&builder(t)?, t).value - 1.0;
        iterations += 1;
        if fm == 0.0 {
            x0 = mid;
            x1 = mid;
            break;
        }
        if fm.signum() == f0.signum() {
            x0 = mid;
            f0 = fm;
        } else {
            x1 = mid;
        }
    }
    Ok(ThermometryResult {
        root: Temperature::new(0.5 * (x0 + x1))?,
        bracket: (x0, x1),
        iterations,
        curve,
    })
}
