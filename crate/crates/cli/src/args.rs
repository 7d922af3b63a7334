use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hc",
    version,
    about = "Build and verify generalized Hermite polynomial systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub config: RunArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the governing sequence and its validation summary.
    Build,
    /// Tabulate recurrence data and monic coefficients.
    Table,
    /// Run the verification suite.
    Verify {
        /// Print the Gram deviation matrix as CSV instead of the report.
        #[arg(long)]
        orthonormality: bool,
    },
    /// Residuals of the second-order equation on the sample grid.
    Ode,
    /// Energy levels of the oscillator Hamiltonian.
    Spectrum,
    /// Compare the reducedness test with family membership.
    Classify,
    /// Coefficients of the derivation operator.
    Epsilons,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[allow(clippy::enum_variant_names)]
pub enum Family {
    Hermite,
    Classical,
    Family,
    Order2,
    Order3,
    CustomFile,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, global = true, default_value = "hermite")]
    pub family: Family,
    #[arg(long, global = true)]
    pub gamma: Option<String>,
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true)]
    pub v1: Option<String>,
    #[arg(long, global = true)]
    pub v2: Option<String>,
    #[arg(long = "b0-squared", global = true)]
    pub b0_squared: Option<String>,
    #[arg(long = "n-max", global = true, default_value_t = 12)]
    pub n_max: usize,
    #[arg(long, global = true, default_value_t = 40)]
    pub dim: usize,
    #[arg(long, value_enum, global = true, default_value = "csv")]
    pub format: Format,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Horizon of the derivation-operator series.
    #[arg(short = 'K', global = true)]
    pub k: Option<usize>,
    #[arg(long = "seed-file", global = true)]
    pub seed_file: Option<PathBuf>,
}
