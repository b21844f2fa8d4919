use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracgalerkin_cli::config::{parse_config, ConfigError, Experiment};
use fracgalerkin_cli::run::{density_csv, run, RunError};

#[derive(Parser)]
#[command(
    name = "fracgalerkin",
    version,
    about = "Spectral Galerkin solver for space-time fractional Fokker-Planck equations on the torus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve once and write snapshots, modes and diagnostics.
    Solve { config: PathBuf },
    /// Solve for every value of `sweep_key`, in parallel.
    Sweep { config: PathBuf },
    /// Spatial and temporal refinement study.
    Convergence { config: PathBuf },
    /// Constants, inequality audits, energy norms and the Grönwall check.
    Diagnose { config: PathBuf },
    /// Density of the symmetric 2β-stable law on a symmetric grid.
    StableDensity {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 40.0)]
        xmax: f64,
        #[arg(long, default_value_t = 1601)]
        n: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &PathBuf, experiment: Experiment) -> Result<fracgalerkin_cli::RunConfig, RunError> {
    let text = fs::read_to_string(path).map_err(|source| RunError::Io { path: path.clone(), source })?;
    let mut cfg = parse_config(&text)?;
    cfg.experiment = experiment;
    cfg.validate()?;
    Ok(cfg)
}

fn execute(command: Command) -> Result<(), RunError> {
    let (path, experiment) = match command {
        Command::Solve { config } => (config, Experiment::Solve),
        Command::Sweep { config } => (config, Experiment::Sweep),
        Command::Convergence { config } => (config, Experiment::Convergence),
        Command::Diagnose { config } => (config, Experiment::Diagnose),
        Command::StableDensity { beta, xmax, n, out } => {
            if !(xmax > 0.0 && xmax.is_finite()) || n < 2 {
                return Err(RunError::Config(ConfigError {
                    line: None,
                    key: Some("xmax".into()),
                    message: "need xmax > 0 and n ≥ 2".into(),
                }));
            }
            let csv = density_csv(beta, xmax, n)?;
            return match out {
                Some(path) => csv.write(&path).map_err(|source| RunError::Io { path, source }),
                None => {
                    print!("{}", csv.as_str());
                    Ok(())
                }
            };
        }
    };
    let cfg = load(&path, experiment)?;
    for file in run(&cfg)? {
        println!("{}", file.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            eprintln!("{}", e.machine_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
