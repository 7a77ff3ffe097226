//! `teleport-sr`: command-line front end for the noisy-teleportation model.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod output;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{Outcome, SweepOptions};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Format;

const THREADS_VAR: &str = "TELEPORT_SR_THREADS";

#[derive(Debug, Parser)]
#[command(name = "teleport-sr", version, about = "Teleportation over a noisy threshold channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Overrides the config seed.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Output directory for sweep files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Write the sweep SVG (default).
    #[arg(long, global = true, overrides_with = "no_svg")]
    svg: bool,

    /// Skip the sweep SVG.
    #[arg(long = "no-svg", global = true, overrides_with = "svg")]
    no_svg: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pauli weights of the input state.
    Weights,
    /// Forbidden interval and whether a noise benefit is predicted.
    CheckInterval,
    /// Detection probabilities of the channel.
    Probs,
    /// Monte Carlo fidelity estimate at the configured noise scale.
    Simulate,
    /// Fidelity sweep over noise scales, written as CSV, JSON and SVG.
    Sweep,
    /// Noise scale maximizing the fidelity.
    Optimum,
    /// Zero-noise limit of the fidelity.
    TheoremCheck,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("{THREADS_VAR}: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    let cfg = RunConfig::load(path)?.validate(cli.seed)?;
    let format = cli.format;
    match cli.command {
        Command::Weights => Ok(commands::weights(&cfg, format)),
        Command::CheckInterval => Ok(commands::check_interval(&cfg, format)),
        Command::Probs => commands::probs(&cfg, format),
        Command::Simulate => commands::simulate(&cfg, format),
        Command::Sweep => {
            let opts = SweepOptions {
                out: cli.out.clone(),
                svg: !cli.no_svg,
            };
            commands::sweep_cmd(&cfg, &opts, format)
        }
        Command::Optimum => commands::optimum(&cfg, format),
        Command::TheoremCheck => commands::theorem_check(&cfg, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(outcome.stdout.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("teleport-sr: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
