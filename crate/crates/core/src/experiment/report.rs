use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::work::{CoherenceReport, PeakWeight};

use super::ExperimentConfig;

/// Output files of a run, relative to the output directory.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportFiles {
    pub config: String,
    pub char_fn: String,
    pub work_pdf: String,
    pub tpm_reference: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub jarzynski: Vec<String>,
}

/// Outcome of the thermometry stage.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JarzynskiReport {
    pub t0_mk: f64,
    pub t1_mk: f64,
    pub root_mk: f64,
    pub bracket_mk: (f64, f64),
    pub iterations: usize,
    pub curve_file: String,
}

/// Everything a scenario run measured, as written to `report.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub config: ExperimentConfig,
    pub omega_uev: f64,
    pub frequency_ghz: f64,
    pub u_points: usize,
    pub delta_u: f64,
    pub u_max: f64,
    /// Shots per expectation value; 0 for exact mode.
    pub shots: u64,
    pub seed: u64,
    /// `1 − 2p₁` for the configured ancilla excitation.
    pub damping_factor: f64,
    pub damping_corrected: bool,
    pub noise_active: bool,
    pub files: ReportFiles,
    pub peaks: Vec<PeakWeight>,
    pub peak_half_width_uev: f64,
    pub coherence: CoherenceReport,
    /// Integral of the reconstructed density over the whole work grid.
    pub total_pdf_mass: f64,
    /// Sum of the window-integrated peak weights.
    pub peak_mass: f64,
    pub jarzynski: Option<JarzynskiReport>,
    pub notes: Vec<String>,
}

impl ScenarioReport {
    /// Weight of the window around `position` (μeV), if it was measured.
    pub fn peak_weight(&self, position: f64) -> Option<f64> {
        self.peaks
            .iter()
            .find(|p| (p.position - position).abs() < 1e-9)
            .map(|p| p.weight)
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario {}", self.scenario);
        let _ = writeln!(
            s,
            "  hw = {:.4} μeV ({:.4} GHz), {} delays, du = {} μeV^-1, u_max = {:.4} μeV^-1",
            self.omega_uev, self.frequency_ghz, self.u_points, self.delta_u, self.u_max
        );
        for p in &self.peaks {
            let _ = writeln!(
                s,
                "  peak at w = {:+.3} μeV: weight {:.4}",
                p.position, p.weight
            );
        }
        let _ = writeln!(
            s,
            "  total PDF mass {:.4}, peak mass {:.4}",
            self.total_pdf_mass, self.peak_mass
        );
        let _ = writeln!(
            s,
            "  coherence: symmetric = {}, score {:.4} (threshold {})",
            self.coherence.symmetric, self.coherence.asymmetry_score, self.coherence.threshold
        );
        if let Some(j) = &self.jarzynski {
            let _ = writeln!(s, "  J(T) = 1 at T = {:.1} mK", j.root_mk);
        }
        s
    }
}
