use std::fs;
use std::path::{Path, PathBuf};

use log::info;

use crate::circuit::qasm::to_openqasm3;
use crate::circuit::{build_interferometric_circuit, Basis};
use crate::error::{Error, Result, StageExt};
use crate::jarzynski::thermal_state;
use crate::jarzynski::{
    mixing_builder, solve_bath_temperature, MixingCurve, SolveOptions, Temperature,
};
use crate::linalg::{ComplexMatrix, HermitianOperator, QuantumState, QubitRole};
use crate::noise::{build_bath_hamiltonian, spectator_hamiltonian, time_averaged_state};
use crate::work::{
    detect_coherence_signature, extract_peaks, half_inverse_fourier, sweep_char_fn, tpm_work_pdf,
    write_char_fn_csv, write_delta_comb_csv, write_grid_density_csv, CharFnSamples, GridDensity,
    Interferometer, WorkDistribution,
};

use super::config::Preparation;
use super::report::{JarzynskiReport, ReportFiles, ScenarioReport};
use super::ExperimentConfig;

/// Bath thermal state on the spectator register, if there is one.
fn bath_state(cfg: &ExperimentConfig) -> Result<Option<QuantumState>> {
    let Some(h) = spectator_hamiltonian(&cfg.bath) else {
        return Ok(None);
    };
    let rho = thermal_state(&h, Temperature::new(cfg.bath.temperature_mk)?)?;
    let k = cfg.bath.num_spectators();
    Ok(Some(rho.with_roles(vec![QubitRole::Bath; k])?))
}

/// Interferometer for the configured system with the given preparation.
pub fn build_setup(cfg: &ExperimentConfig, preparation: Preparation) -> Result<Interferometer> {
    let omega = cfg.omega();
    let h0 = build_bath_hamiltonian(omega, &cfg.bath)?;
    let mut initial = preparation.state(omega)?;
    if let Some(bath) = bath_state(cfg)? {
        initial = initial.tensor(&bath)?;
        if cfg.bath.equilibrate {
            initial = time_averaged_state(&initial, &h0)?;
        }
    }
    Interferometer::new(
        h0,
        cfg.system.drive.matrix(),
        initial,
        cfg.ancilla.excited_population,
    )
}

fn full_drive(setup: &Interferometer) -> ComplexMatrix {
    let bath_dim = setup.h0.dim() / setup.drive.rows();
    setup.drive.kron(&ComplexMatrix::identity(bath_dim))
}

/// Sweeps `g(u)`, undoes ancilla damping when asked, and reconstructs the
/// density on the configured grid.
fn measure(cfg: &ExperimentConfig, setup: &Interferometer) -> Result<(CharFnSamples, GridDensity)> {
    let noise = cfg.noise_model().stage("setup")?;
    let grid = cfg.u_grid().stage("setup")?;
    let mut samples =
        sweep_char_fn(setup, &grid, cfg.sample_mode(), noise.as_ref()).stage("sweep")?;
    if cfg.ancilla.correct_damping && cfg.ancilla.excited_population > 0.0 {
        samples = samples
            .corrected_for_ancilla(cfg.ancilla.excited_population)
            .stage("damping-correction")?;
    }
    let density =
        half_inverse_fourier(&samples, &cfg.w_grid(), cfg.window()).stage("reconstruction")?;
    Ok((samples, density))
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Runs the full pipeline and writes every artefact to `cfg.output_dir`:
/// `config.toml`, `char_fn.csv`, `work_pdf.csv`, `tpm_reference.csv`,
/// `report.json`, plus the thermometry files when configured.
pub fn run_scenario(cfg: &ExperimentConfig) -> Result<ScenarioReport> {
    cfg.validate().stage("config")?;
    let out = cfg.output_dir.clone();
    create_dir(&out).stage("output")?;
    info!("scenario {}: writing to {}", cfg.scenario, out.display());

    let setup = build_setup(cfg, cfg.system.preparation).stage("setup")?;
    let (samples, density) = measure(cfg, &setup)?;

    let positions = cfg.peak_positions();
    let half_width = cfg.peak_half_width_uev();
    let peaks = extract_peaks(&density, &positions, half_width).stage("peaks")?;
    let coherence = detect_coherence_signature(
        &density,
        &positions,
        half_width,
        cfg.analysis.coherence_threshold,
    )
    .stage("coherence")?;
    let reference =
        tpm_work_pdf(&setup.initial, &setup.h0, &full_drive(&setup)).stage("reference")?;

    let mut files = ReportFiles {
        config: "config.toml".into(),
        char_fn: "char_fn.csv".into(),
        work_pdf: "work_pdf.csv".into(),
        tpm_reference: "tpm_reference.csv".into(),
        jarzynski: vec![],
    };
    let jarzynski = match &cfg.jarzynski {
        Some(_) => {
            let (report, written) = run_thermometry(cfg)?;
            files.jarzynski = written;
            Some(report)
        }
        None => None,
    };

    let write = || -> Result<()> {
        write_text(&out.join(&files.config), &cfg.to_toml_string()?)?;
        write_char_fn_csv(out.join(&files.char_fn), &samples)?;
        write_grid_density_csv(out.join(&files.work_pdf), &density)?;
        write_delta_comb_csv(out.join(&files.tpm_reference), &reference)
    };
    write().stage("output")?;

    let mut notes = vec![format!(
        "work grid [{}, {}]·hw with {} points",
        cfg.analysis.w_min, cfg.analysis.w_max, cfg.analysis.w_points
    )];
    if cfg.bath.num_spectators() > 0 && cfg.bath.equilibrate {
        notes.push("system+bath start from the time-averaged product state".into());
    }
    let grid = cfg.u_grid().stage("setup")?;
    let noise_active = cfg
        .noise_model()
        .stage("setup")?
        .is_some_and(|m| !m.is_trivial());
    let report = ScenarioReport {
        scenario: cfg.scenario.clone(),
        config: cfg.clone(),
        omega_uev: cfg.omega(),
        frequency_ghz: cfg.frequency_ghz(),
        u_points: grid.count(),
        delta_u: grid.delta_u(),
        u_max: grid.u_max(),
        shots: samples.shots(),
        seed: samples.seed(),
        damping_factor: 1.0 - 2.0 * cfg.ancilla.excited_population,
        damping_corrected: cfg.ancilla.correct_damping,
        noise_active,
        total_pdf_mass: density.total_mass(),
        peak_mass: peaks.iter().map(|p| p.weight).sum(),
        peaks,
        peak_half_width_uev: half_width,
        coherence,
        jarzynski,
        files,
        notes,
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Config(format!("cannot serialise report: {e}")))
        .stage("output")?;
    write_text(&out.join("report.json"), &(json + "\n")).stage("output")?;
    Ok(report)
}

/// Runs the pipeline with the configured noise channels. Fails unless the
/// configuration carries a non-trivial noise model.
pub fn run_noisy_emulation(cfg: &ExperimentConfig) -> Result<ScenarioReport> {
    let active = cfg
        .noise_model()
        .stage("config")?
        .is_some_and(|m| !m.is_trivial());
    if !active {
        return Err(Error::Config(
            "noisy emulation needs a non-trivial [noise] section".into(),
        ))
        .stage("config");
    }
    run_scenario(cfg)
}

/// Measures PDFs for preparations at `t0` and `t1`, mixes them to scan the
/// presumed temperature, and solves `J(T) = 1`. Writes the per-preparation
/// samples and densities, `j_curve.csv` and `jarzynski_root.txt`.
pub fn run_thermometry(cfg: &ExperimentConfig) -> Result<(JarzynskiReport, Vec<String>)> {
    let jc = cfg
        .jarzynski
        .as_ref()
        .ok_or_else(|| Error::Config("configuration has no [jarzynski] section".into()))
        .stage("config")?;
    let out = cfg.output_dir.clone();
    create_dir(&out).stage("output")?;
    let mut written = Vec::new();
    let mut pdfs = Vec::new();
    for (label, mk) in [("t0", jc.t0_mk), ("t1", jc.t1_mk)] {
        let setup = build_setup(cfg, Preparation::Thermal { temperature_mk: mk }).stage("setup")?;
        let (samples, density) = measure(cfg, &setup)?;
        let (g, p) = (
            format!("char_fn_{label}.csv"),
            format!("work_pdf_{label}.csv"),
        );
        write_char_fn_csv(out.join(&g), &samples).stage("output")?;
        write_grid_density_csv(out.join(&p), &density).stage("output")?;
        written.extend([g, p]);
        pdfs.push(WorkDistribution::Grid(density));
    }
    let hot = pdfs.pop().expect("two preparations");
    let cold = pdfs.pop().expect("two preparations");
    let t = |mk: f64| Temperature::new(mk).stage("jarzynski");
    let curve = MixingCurve::new(cfg.omega(), t(jc.t0_mk)?, t(jc.t1_mk)?).stage("jarzynski")?;
    let builder = mixing_builder(cold, hot, curve);
    let options = SolveOptions {
        curve_points: jc.curve_points,
        resolution_mk: jc.resolution_mk,
        require_monotone: true,
    };
    let result =
        solve_bath_temperature(&builder, t(jc.search_lo_mk)?, t(jc.search_hi_mk)?, options)
            .stage("jarzynski")?;

    let curve_file = "j_curve.csv".to_string();
    result
        .curve
        .write_csv(out.join(&curve_file))
        .stage("output")?;
    let root_file = "jarzynski_root.txt".to_string();
    write_text(&out.join(&root_file), &result.report(Some(&curve_file))).stage("output")?;
    written.extend([curve_file.clone(), root_file]);
    info!("J(T) = 1 at {}", result.root);
    Ok((
        JarzynskiReport {
            t0_mk: jc.t0_mk,
            t1_mk: jc.t1_mk,
            root_mk: result.root.mk(),
            bracket_mk: result.bracket,
            iterations: result.iterations,
            curve_file,
        },
        written,
    ))
}

/// Writes one OpenQASM 3 file per delay of the sweep (Z-basis read-out) into
/// `dir` and returns the paths in sweep order.
pub fn export_circuits(cfg: &ExperimentConfig, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    cfg.validate().stage("config")?;
    let dir = dir.as_ref();
    create_dir(dir).stage("output")?;
    let setup = build_setup(cfg, cfg.system.preparation).stage("setup")?;
    let grid = cfg.u_grid().stage("setup")?;
    let width = grid.count().saturating_sub(1).to_string().len().max(4);
    (0..grid.count())
        .map(|j| {
            let u = grid.value(j);
            let circuit = build_interferometric_circuit(&setup.h0, &setup.drive, u, Basis::Z)
                .stage("circuit")?;
            let comment = format!(
                "scenario {}\ndelay index {j}, u = {u} μeV^-1, hw = {} μeV",
                cfg.scenario,
                cfg.omega()
            );
            let path = dir.join(format!("circuit_{j:0width$}.qasm"));
            write_text(&path, &to_openqasm3(&circuit, &comment)).stage("output")?;
            Ok(path)
        })
        .collect()
}

/// Hamiltonian and full-register drive of the configured system, for callers
/// that want exact references.
pub fn exact_model(
    cfg: &ExperimentConfig,
) -> Result<(QuantumState, HermitianOperator, ComplexMatrix)> {
    let setup = build_setup(cfg, cfg.system.preparation)?;
    let drive = full_drive(&setup);
    Ok((setup.initial, setup.h0, drive))
}
