use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::noise::{BathSpec, GateDurations, QubitNoise};

use super::config::{
    AnalysisConfig, AncillaConfig, Drive, ExperimentConfig, JarzynskiConfig, NoiseConfig,
    Preparation, SweepConfig, SystemConfig,
};

/// Qubit energy used by every preset, in μeV.
pub const PRESET_ENERGY_UEV: f64 = 20.04;

/// Spectator coupling used by the open-system presets (g/ω = 0.02), in μeV.
pub const PRESET_COUPLING_UEV: f64 = 0.4;

/// Synthetic bath temperature of the open-system presets, in mK.
pub const PRESET_BATH_MK: f64 = 150.0;

/// Names of the shipped scenarios with one-line descriptions.
pub const SCENARIOS: [(&str, &str); 5] = [
    (
        "fig2a-closed-ideal",
        "noise-free closed qubit from the ground state: two peaks of weight 1/2",
    ),
    (
        "fig2a-inset-coherent",
        "closed qubit prepared in |+>: antisymmetric wings flag initial coherence",
    ),
    (
        "fig2b-open-bath",
        "qubit at 67 mK exchanging with a resonant spectator at 150 mK: third peak at -hw",
    ),
    (
        "fig3-jarzynski-sweep",
        "preparations at 83 mK and -87 mK mixed to locate J(T) = 1 (synthetic bath at 150 mK; the hardware estimate ~290 mK is not reproducible here)",
    ),
    (
        "fig4-noisy-emulation",
        "qubit at 10.7 mK through a calibrated-style noise model: total PDF mass below one",
    ),
];

fn base(name: &str, preparation: Preparation) -> ExperimentConfig {
    let description = SCENARIOS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, d)| d.to_string())
        .unwrap_or_default();
    ExperimentConfig {
        scenario: name.to_string(),
        description,
        system: SystemConfig {
            frequency_ghz: None,
            energy_uev: Some(PRESET_ENERGY_UEV),
            drive: Drive::SqrtX,
            preparation,
        },
        ancilla: AncillaConfig::default(),
        sweep: SweepConfig::default(),
        analysis: AnalysisConfig::default(),
        bath: BathSpec::none(),
        noise: None,
        jarzynski: None,
        output_dir: PathBuf::from("out").join(name),
    }
}

fn resonant_bath() -> BathSpec {
    BathSpec::resonant(1, PRESET_ENERGY_UEV, PRESET_COUPLING_UEV, PRESET_BATH_MK)
}

/// Noise of the order reported for current transmon devices. Each controlled
/// gate of the interferometer stands for a compiled sequence of several native
/// two-qubit gates, so its error is a few times a native one.
pub fn device_like_noise() -> NoiseConfig {
    let qubit = QubitNoise {
        single_gate_error: 3e-4,
        two_qubit_gate_error: 0.02,
        t1_us: 260.0,
        t2_us: 180.0,
        excited_equilibrium: 0.0,
        confusion: [[0.985, 0.015], [0.03, 0.97]],
        initial_excited: 0.0,
    };
    NoiseConfig {
        system: Some(qubit.clone()),
        ancilla: Some(qubit),
        bath: None,
        durations: GateDurations::default(),
    }
}

/// Configuration of a shipped scenario.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let cfg = match name {
        "fig2a-closed-ideal" => base(name, Preparation::Ground),
        "fig2a-inset-coherent" => base(name, Preparation::CoherentPlus),
        "fig2b-open-bath" => ExperimentConfig {
            bath: resonant_bath(),
            ..base(
                name,
                Preparation::Thermal {
                    temperature_mk: 67.0,
                },
            )
        },
        "fig3-jarzynski-sweep" => ExperimentConfig {
            bath: resonant_bath(),
            jarzynski: Some(JarzynskiConfig {
                t0_mk: 83.0,
                t1_mk: -87.0,
                search_lo_mk: 90.0,
                search_hi_mk: 250.0,
                curve_points: 41,
                resolution_mk: 0.1,
            }),
            ..base(
                name,
                Preparation::Thermal {
                    temperature_mk: 83.0,
                },
            )
        },
        "fig4-noisy-emulation" => ExperimentConfig {
            noise: Some(device_like_noise()),
            ..base(
                name,
                Preparation::Thermal {
                    temperature_mk: 10.7,
                },
            )
        },
        other => {
            let known: Vec<&str> = SCENARIOS.iter().map(|s| s.0).collect();
            return Err(Error::Config(format!(
                "unknown scenario `{other}` (known: {})",
                known.join(", ")
            )));
        }
    };
    cfg.validate()?;
    Ok(cfg)
}
