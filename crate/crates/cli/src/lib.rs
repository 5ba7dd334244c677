//! Experiment front end for the `latblow` crate: JSON configs in, CSV and
//! JSON artifacts out.

pub mod commands;
pub mod config;
pub mod fieldfile;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::Status;
pub use config::{ConfigError, ExperimentConfig};

#[derive(Debug, Parser)]
#[command(
    name = "latblow",
    version,
    about = "Blow-up and global existence experiments for the discrete semilinear heat equation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the nonlinear dynamics until blow-up or the step limit.
    Simulate(CommonArgs),
    /// Check the majorant comparison on the normalized system.
    Verify(CommonArgs),
    /// Evaluate the small-data series bound for the data.
    Bound(CommonArgs),
    /// Bisect the blow-up amplitude of the configured profile.
    Threshold(CommonArgs),
    /// Simulate and bound every point of an (alpha, amplitude) grid.
    Sweep(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; defaults to `outputs.dir` from the config, then `.`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for `random` initial profiles.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Step limit, replacing `steps` from the config.
    #[arg(long)]
    pub steps: Option<usize>,
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Simulate(a)
            | Command::Verify(a)
            | Command::Bound(a)
            | Command::Threshold(a)
            | Command::Sweep(a) => a,
        }
    }
}

/// Loads the config named by the arguments and runs the command.
pub fn run(command: &Command) -> anyhow::Result<Status> {
    let args = command.args();
    let mut config = ExperimentConfig::load(&args.config)?;
    config.apply_overrides(args.seed, args.steps);
    let out = args
        .out
        .clone()
        .or_else(|| config.outputs.dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    match command {
        Command::Simulate(_) => commands::cmd_simulate(&config, &out),
        Command::Verify(_) => commands::cmd_verify(&config, &out),
        Command::Bound(_) => commands::cmd_bound(&config, &out),
        Command::Threshold(_) => commands::cmd_threshold(&config, &out),
        Command::Sweep(_) => commands::cmd_sweep(&config, &out),
    }
}
