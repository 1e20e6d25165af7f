use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::error;

use qworkstat::experiment::{
    export_circuits, preset, run_noisy_emulation, run_scenario, run_thermometry, ExperimentConfig,
    ModeKind, SCENARIOS,
};
use qworkstat::Error;

#[derive(Parser, Debug)]
#[command(
    name = "qworkstat",
    version,
    about = "Interferometric work statistics of driven open qubits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scenario end to end and write its CSVs and report.json.
    Run(RunArgs),
    /// Write one OpenQASM 3 circuit per delay of the sweep.
    ExportCircuits(RunArgs),
    /// Run only the bath-thermometry stage (J(T) curve and its root).
    Jarzynski(RunArgs),
    /// List the built-in scenarios.
    ListScenarios,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// TOML configuration file.
    #[arg(long, conflicts_with = "scenario")]
    config: Option<PathBuf>,
    /// Built-in scenario name (see list-scenarios).
    #[arg(long)]
    scenario: Option<String>,
    /// Base seed for shot sampling.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Expectation values: exact or shot-sampled.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Shots per expectation value (implies --mode shots unless given).
    #[arg(long)]
    shots: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Shots,
}

impl RunArgs {
    fn load(&self) -> qworkstat::Result<ExperimentConfig> {
        let cfg = match (&self.config, &self.scenario) {
            (Some(path), _) => ExperimentConfig::load(path)?,
            (None, Some(name)) => preset(name)?,
            (None, None) => {
                return Err(Error::Config(
                    "pass --config FILE or --scenario NAME".into(),
                ))
            }
        };
        let mode = self.mode.map(|m| match m {
            Mode::Exact => ModeKind::Exact,
            Mode::Shots => ModeKind::Shots,
        });
        cfg.with_overrides(self.seed, self.out.clone(), mode, self.shots)
    }
}

fn run(cli: Cli) -> qworkstat::Result<()> {
    match cli.command {
        Command::ListScenarios => {
            for (name, description) in SCENARIOS {
                println!("{name:<22} {description}");
            }
        }
        Command::Run(args) => {
            let cfg = args.load()?;
            let noisy = cfg.noise_model()?.is_some_and(|m| !m.is_trivial());
            let report = if noisy {
                run_noisy_emulation(&cfg)?
            } else {
                run_scenario(&cfg)?
            };
            print!("{}", report.summary());
            println!("  report: {}", cfg.output_dir.join("report.json").display());
        }
        Command::ExportCircuits(args) => {
            let cfg = args.load()?;
            let files = export_circuits(&cfg, &cfg.output_dir)?;
            println!(
                "wrote {} circuits to {}",
                files.len(),
                cfg.output_dir.display()
            );
        }
        Command::Jarzynski(args) => {
            let cfg = args.load()?;
            let (report, files) = run_thermometry(&cfg)?;
            println!("root_mK={}", report.root_mk);
            println!("bracket_mK={},{}", report.bracket_mk.0, report.bracket_mk.1);
            println!("iterations={}", report.iterations);
            for f in files {
                println!("wrote {}", cfg.output_dir.join(f).display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{e}");
            eprintln!("error: {e}");
            if e.is_config_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
