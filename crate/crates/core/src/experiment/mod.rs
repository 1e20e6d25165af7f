//! Configuration-driven scenarios: presets, end-to-end runs and artefact
//! output.

mod config;
mod pipeline;
mod presets;
mod report;

pub use config::{
    AnalysisConfig, AncillaConfig, Drive, ExperimentConfig, JarzynskiConfig, ModeKind, NoiseConfig,
    Preparation, SweepConfig, SystemConfig, WindowKind,
};
pub use pipeline::{
    build_setup, exact_model, export_circuits, run_noisy_emulation, run_scenario, run_thermometry,
};
pub use presets::{
    device_like_noise, preset, PRESET_BATH_MK, PRESET_COUPLING_UEV, PRESET_ENERGY_UEV, SCENARIOS,
};
pub use report::{JarzynskiReport, ReportFiles, ScenarioReport};
