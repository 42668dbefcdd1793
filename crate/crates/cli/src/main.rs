//! `emb`: compute entanglement measures of pure states, tabulate the GHZ–W′
//! family and run the inequality checks.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "emb", version, about = "Entanglement measurement bound and companion measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one measure of one state.
    Compute {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        measure: Measure,
        /// Parties on one side of the cut (1-based, comma separated) for `ebi` and `schmidt`.
        #[arg(long, value_delimiter = ',')]
        cut: Option<Vec<usize>>,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Tabulate the GHZ–W′ family against x = sin α as CSV.
    Sweep {
        /// Only `GHZ-W` is available.
        #[arg(long, default_value = "GHZ-W")]
        family: String,
        #[arg(long, default_value_t = 41)]
        points: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the row ordering checks.
        #[arg(long)]
        no_assert: bool,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Check the inequality chain on random states, or on one given state.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        state: OptionalStateArgs,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Schmidt coefficients across a cut.
    Schmidt {
        #[command(flatten)]
        state: StateArgs,
        /// Parties on one side of the cut (1-based, comma separated); default `1`.
        #[arg(long, value_delimiter = ',')]
        cut: Option<Vec<usize>>,
    },
}

#[derive(Args, Debug, Clone)]
#[group(skip)]
pub struct StateArgs {
    /// JSON state file: {"dims":[..],"amplitudes":[[re,im],..]}.
    #[arg(long, conflicts_with = "named", required_unless_present = "named")]
    pub state: Option<PathBuf>,
    /// Named state: GHZ, W, Wprime, Omega, Omega1, Omega2, Bell, GHZ-W, standard.
    #[arg(long)]
    pub named: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Clone)]
#[group(skip)]
pub struct OptionalStateArgs {
    /// Check this state file instead of random states.
    #[arg(long, conflicts_with = "named")]
    pub state: Option<PathBuf>,
    /// Check this named state instead of random states.
    #[arg(long)]
    pub named: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Clone)]
#[group(skip)]
pub struct ParamArgs {
    /// Mixing angle α of GHZ-W.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "q")]
    pub alpha: Option<f64>,
    /// Parameters of a named family, e.g. q0,q1,q2,q3,q4,gamma for `standard`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub q: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone)]
#[group(skip)]
pub struct OptArgs {
    /// Seed for optimizer restarts and random states.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid points per angle.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Objective evaluations per restart.
    #[arg(long)]
    pub max_evals: Option<usize>,
    /// Objective tolerance of the local refinement.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Treat optimizer non-convergence as an error.
    #[arg(long)]
    pub strict: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Emb,
    Ehmin,
    Egeom,
    Ebi,
    #[value(name = "tangle-ghzw")]
    TangleGhzw,
    Elocc,
    Sandwich,
    Schmidt,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
