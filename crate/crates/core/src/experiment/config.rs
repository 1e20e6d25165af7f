use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jarzynski::{thermal_state, Temperature};
use crate::linalg::ops::{c, hadamard, pauli_x, sqrt_x};
use crate::linalg::{ComplexMatrix, QuantumState, QubitRole};
use crate::noise::{qubit_hamiltonian, BathSpec, GateDurations, NoiseModel, QubitNoise};
use crate::units::{ghz_to_uev, MAX_QUBITS, PLANCK_UEV_PER_GHZ};
use crate::work::{linspace, SampleMode, UGrid, Window, DEFAULT_COHERENCE_THRESHOLD};

/// Complete description of one scenario run, read from TOML.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: String,
    #[serde(default)]
    pub description: String,
    pub system: SystemConfig,
    #[serde(default)]
    pub ancilla: AncillaConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub bath: BathSpec,
    #[serde(default)]
    pub noise: Option<NoiseConfig>,
    #[serde(default)]
    pub jarzynski: Option<JarzynskiConfig>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// The measured qubit. Give exactly one of `frequency_ghz` and `energy_uev`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    #[serde(default)]
    pub frequency_ghz: Option<f64>,
    #[serde(default)]
    pub energy_uev: Option<f64>,
    #[serde(default)]
    pub drive: Drive,
    pub preparation: Preparation,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Drive {
    #[default]
    SqrtX,
    X,
    Hadamard,
}

impl Drive {
    pub fn matrix(self) -> ComplexMatrix {
        match self {
            Drive::SqrtX => sqrt_x(),
            Drive::X => pauli_x(),
            Drive::Hadamard => hadamard(),
        }
    }
}

/// Initial state of the system qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Preparation {
    Ground,
    Excited,
    CoherentPlus,
    Thermal { temperature_mk: f64 },
}

impl Preparation {
    /// Single-qubit state for a splitting `omega` (μeV).
    pub fn state(self, omega: f64) -> Result<QuantumState> {
        let roles = vec![QubitRole::System];
        match self {
            Preparation::Ground => QuantumState::basis(0, roles),
            Preparation::Excited => QuantumState::basis(1, roles),
            Preparation::CoherentPlus => {
                let a = std::f64::consts::FRAC_1_SQRT_2;
                QuantumState::pure(&[c(a, 0.0), c(a, 0.0)], roles)
            }
            Preparation::Thermal { temperature_mk } => {
                thermal_state(&qubit_hamiltonian(omega), Temperature::new(temperature_mk)?)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AncillaConfig {
    /// Excited population of the ancilla before the circuit.
    #[serde(default)]
    pub excited_population: f64,
    /// Divide the measured `g(u)` by `1 − 2·excited_population`.
    #[serde(default)]
    pub correct_damping: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeKind {
    #[default]
    Exact,
    Shots,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Number of delays `N`; `u_j = j·Δu` for `j < N`.
    #[serde(default = "default_points")]
    pub points: usize,
    /// Delay step Δu in μeV⁻¹.
    #[serde(default = "default_delta_u")]
    pub delta_u: f64,
    #[serde(default)]
    pub mode: ModeKind,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
}

fn default_points() -> usize {
    900
}

fn default_delta_u() -> f64 {
    0.013
}

fn default_shots() -> u64 {
    1024
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            points: default_points(),
            delta_u: default_delta_u(),
            mode: ModeKind::Exact,
            shots: default_shots(),
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowKind {
    #[default]
    None,
    Hann,
}

/// Reconstruction and peak-analysis settings. Lengths are in units of ħω.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default = "default_w_min")]
    pub w_min: f64,
    #[serde(default = "default_w_max")]
    pub w_max: f64,
    #[serde(default = "default_w_points")]
    pub w_points: usize,
    #[serde(default)]
    pub window: WindowKind,
    #[serde(default = "default_peak_half_width")]
    pub peak_half_width: f64,
    #[serde(default = "default_threshold")]
    pub coherence_threshold: f64,
}

fn default_w_min() -> f64 {
    -2.5
}

fn default_w_max() -> f64 {
    2.5
}

fn default_w_points() -> usize {
    1001
}

fn default_peak_half_width() -> f64 {
    0.4
}

fn default_threshold() -> f64 {
    DEFAULT_COHERENCE_THRESHOLD
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            w_min: default_w_min(),
            w_max: default_w_max(),
            w_points: default_w_points(),
            window: WindowKind::None,
            peak_half_width: default_peak_half_width(),
            coherence_threshold: default_threshold(),
        }
    }
}

/// Noise parameters by qubit role; `bath` applies to every spectator.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    #[serde(default)]
    pub system: Option<QubitNoise>,
    #[serde(default)]
    pub ancilla: Option<QubitNoise>,
    #[serde(default)]
    pub bath: Option<QubitNoise>,
    #[serde(default)]
    pub durations: GateDurations,
}

/// Bath thermometry from two preparations at `t0_mk` and `t1_mk`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JarzynskiConfig {
    pub t0_mk: f64,
    pub t1_mk: f64,
    pub search_lo_mk: f64,
    pub search_hi_mk: f64,
    #[serde(default = "default_curve_points")]
    pub curve_points: usize,
    #[serde(default = "default_resolution")]
    pub resolution_mk: f64,
}

fn default_curve_points() -> usize {
    41
}

fn default_resolution() -> f64 {
    0.1
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Qubit splitting ħω in μeV.
    pub fn omega(&self) -> f64 {
        match (self.system.energy_uev, self.system.frequency_ghz) {
            (Some(e), _) => e,
            (None, Some(f)) => ghz_to_uev(f),
            (None, None) => f64::NAN,
        }
    }

    /// Qubit frequency in GHz (derived from the energy when only that is set).
    pub fn frequency_ghz(&self) -> f64 {
        self.system
            .frequency_ghz
            .unwrap_or_else(|| self.omega() / PLANCK_UEV_PER_GHZ)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.scenario.trim().is_empty() {
            return bad("scenario name is empty".into());
        }
        match (self.system.frequency_ghz, self.system.energy_uev) {
            (Some(_), Some(_)) => return bad("give frequency_ghz or energy_uev, not both".into()),
            (None, None) => return bad("system needs frequency_ghz or energy_uev".into()),
            _ => {}
        }
        let omega = self.omega();
        if !(omega > 0.0) || !omega.is_finite() {
            return bad(format!("qubit energy {omega} μeV must be positive"));
        }
        if let Preparation::Thermal { temperature_mk } = self.system.preparation {
            Temperature::new(temperature_mk).map_err(|e| Error::Config(e.to_string()))?;
        }
        let p1 = self.ancilla.excited_population;
        if !(0.0..=1.0).contains(&p1) {
            return bad(format!(
                "ancilla excited_population {p1} is not a probability"
            ));
        }
        if self.ancilla.correct_damping && p1 >= 0.5 {
            return bad(format!(
                "cannot correct damping for excited_population {p1} >= 0.5"
            ));
        }
        if self.sweep.points < 2 {
            return bad(format!(
                "sweep needs at least 2 points, got {}",
                self.sweep.points
            ));
        }
        if !(self.sweep.delta_u > 0.0) || !self.sweep.delta_u.is_finite() {
            return bad(format!("delta_u = {} must be positive", self.sweep.delta_u));
        }
        if self.sweep.mode == ModeKind::Shots && self.sweep.shots == 0 {
            return bad("shot mode needs shots >= 1".into());
        }
        let a = &self.analysis;
        if !(a.w_min < a.w_max) || a.w_points < 2 {
            return bad("work grid needs w_min < w_max and at least 2 points".into());
        }
        if !(a.peak_half_width > 0.0) || !(a.coherence_threshold > 0.0) {
            return bad("peak_half_width and coherence_threshold must be positive".into());
        }
        if a.w_min > -1.0 - a.peak_half_width || a.w_max < 1.0 + a.peak_half_width {
            return bad("work grid must contain the windows around -ħω, 0 and +ħω".into());
        }
        if a.peak_half_width > 0.5 {
            return bad("peak windows overlap for peak_half_width > 0.5 ħω".into());
        }
        self.bath.validate()?;
        if 2 + self.bath.num_spectators() > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: 2 + self.bath.num_spectators(),
                limit: MAX_QUBITS,
            });
        }
        self.noise_model()?.map(|m| m.validate()).transpose()?;
        if let Some(j) = &self.jarzynski {
            for t in [j.t0_mk, j.t1_mk, j.search_lo_mk, j.search_hi_mk] {
                Temperature::new(t).map_err(|e| Error::Config(e.to_string()))?;
            }
            if !(j.search_lo_mk < j.search_hi_mk)
                || j.search_lo_mk.signum() != j.search_hi_mk.signum()
            {
                return bad("jarzynski search range must be increasing and exclude 0".into());
            }
            if j.curve_points < 2 || !(j.resolution_mk > 0.0) {
                return bad("jarzynski needs curve_points >= 2 and resolution_mk > 0".into());
            }
        }
        Ok(())
    }

    pub fn u_grid(&self) -> Result<UGrid> {
        UGrid::from_count(self.sweep.points, self.sweep.delta_u)
    }

    pub fn sample_mode(&self) -> SampleMode {
        match self.sweep.mode {
            ModeKind::Exact => SampleMode::Exact,
            ModeKind::Shots => SampleMode::Shots {
                shots: self.sweep.shots,
                seed: self.sweep.seed,
            },
        }
    }

    pub fn window(&self) -> Window {
        match self.analysis.window {
            WindowKind::None => Window::None,
            WindowKind::Hann => Window::Hann,
        }
    }

    /// Work grid in μeV.
    pub fn w_grid(&self) -> Vec<f64> {
        let omega = self.omega();
        linspace(
            self.analysis.w_min * omega,
            self.analysis.w_max * omega,
            self.analysis.w_points,
        )
    }

    /// Expected peak positions `−ħω, 0, +ħω` in μeV.
    pub fn peak_positions(&self) -> [f64; 3] {
        let omega = self.omega();
        [-omega, 0.0, omega]
    }

    pub fn peak_half_width_uev(&self) -> f64 {
        self.analysis.peak_half_width * self.omega()
    }

    /// Per-qubit noise on the register `[system, bath.., ancilla]`, or `None`
    /// without a `noise` section.
    pub fn noise_model(&self) -> Result<Option<NoiseModel>> {
        let Some(cfg) = &self.noise else {
            return Ok(None);
        };
        let k = self.bath.num_spectators();
        let mut qubits = BTreeMap::new();
        if let Some(q) = &cfg.system {
            qubits.insert(0, q.clone());
        }
        if let Some(q) = &cfg.bath {
            for i in 0..k {
                qubits.insert(1 + i, q.clone());
            }
        }
        if let Some(q) = &cfg.ancilla {
            qubits.insert(1 + k, q.clone());
        }
        Ok(Some(NoiseModel {
            qubits,
            durations: cfg.durations,
        }))
    }

    /// Copy with command-line style overrides applied.
    pub fn with_overrides(
        mut self,
        seed: Option<u64>,
        out: Option<PathBuf>,
        mode: Option<ModeKind>,
        shots: Option<u64>,
    ) -> Result<Self> {
        if let Some(s) = seed {
            self.sweep.seed = s;
        }
        if let Some(o) = out {
            self.output_dir = o;
        }
        if let Some(m) = mode {
            self.sweep.mode = m;
        }
        if let Some(n) = shots {
            self.sweep.shots = n;
            if mode.is_none() {
                self.sweep.mode = ModeKind::Shots;
            }
        }
        self.validate()?;
        Ok(self)
    }
}
