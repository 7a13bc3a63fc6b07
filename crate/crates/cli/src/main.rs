use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weno_dp_cli::{catalog, output_root, run, CliError, RunConfig, RunSummary, OUTPUT_ENV};

#[derive(Parser)]
#[command(name = "weno-dp", version, about = "WENO solvers for the DP and muDP equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a config file or a built-in experiment by name.
    Run { config: String },
    /// Run a convergence study (the config's `n` must be a list).
    Convergence { config: String },
    /// List the built-in experiments.
    List,
    /// Print a built-in experiment as a config file.
    Show { name: String },
}

fn load(arg: &str) -> Result<RunConfig, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return RunConfig::from_toml(&std::fs::read_to_string(path)?);
    }
    catalog::find(arg).ok_or_else(|| CliError::UnknownExperiment(arg.to_string()))
}

fn report(summary: &RunSummary) {
    println!("wrote {}", summary.dir.display());
    for g in &summary.metadata.grids {
        let norms = match (g.l1, g.linf) {
            (Some(l1), Some(linf)) => format!(" l1={l1:.3e} linf={linf:.3e}"),
            _ => String::new(),
        };
        println!("  n={} steps={} mass drift={:.2e}{norms}", g.n, g.steps, g.mass_drift);
    }
    for r in &summary.table {
        let order = r.order_l1.map(|o| format!("{o:.2}")).unwrap_or_else(|| "-".into());
        println!("  n={:>6} l1={:.3e} order={order}", r.n, r.l1);
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let root: PathBuf = output_root();
    match cli.command {
        Command::List => {
            for c in catalog::catalog() {
                println!("{:<22} {}", c.name, c.description);
            }
            println!("\noutputs go to ${OUTPUT_ENV} (default ./output)");
        }
        Command::Show { name } => {
            let cfg = catalog::find(&name).ok_or(CliError::UnknownExperiment(name))?;
            print!("{}", cfg.to_toml());
        }
        Command::Run { config } => report(&run(&load(&config)?, &root)?),
        Command::Convergence { config } => {
            let cfg = load(&config)?;
            if !cfg.is_convergence() {
                return Err(CliError::Config {
                    field: "n".into(),
                    message: "convergence needs a list of grid sizes".into(),
                });
            }
            report(&run(&cfg, &root)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
