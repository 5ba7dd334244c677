use std::process::ExitCode;

use clap::Parser;
use latblow_cli::{run, Cli, ConfigError, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(status) => ExitCode::from(status.code()),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<ConfigError>().is_some() {
                ExitCode::from(Status::CONFIG_ERROR)
            } else {
                ExitCode::from(Status::RUNTIME_ERROR)
            }
        }
    }
}
