mod args;
mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: &Cli) -> Result<(), CliError> {
    let args = &cli.config;
    match &cli.command {
        Command::Build => commands::build(args),
        Command::Table => commands::table(args),
        Command::Verify { orthonormality } => commands::verify(args, *orthonormality),
        Command::Ode => commands::ode(args),
        Command::Spectrum => commands::spectrum(args),
        Command::Classify => commands::classify(args),
        Command::Epsilons => commands::epsilons(args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("HC_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::debug!("exit code {}", e.exit_code());
            match &e {
                CliError::CheckFailed { report, .. } => eprintln!("{report}"),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
