use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod output;
mod run;

/// Exact certificates for the lattice in `[z, 1+z^3)` acting on `T3 x T3`.
#[derive(Parser, Debug)]
#[command(name = "quatlattice", version, about)]
pub struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every certificate; exit 1 if any fails.
    Verify {
        #[arg(long, default_value_t = quatlattice::suite::DEFAULT_RADIUS)]
        radius: u32,
        #[arg(long)]
        parallel: bool,
        /// Also compare the JSON report with the golden file in the fixture directory.
        #[arg(long)]
        golden: bool,
        #[arg(long, env = "QLATTICE_FIXTURES")]
        fixtures: Option<PathBuf>,
    },
    /// Print a presentation.
    Present {
        #[arg(value_enum)]
        which: Which,
    },
    /// Check that words of length <= L act injectively on the ball around the standard vertex.
    BallCheck {
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        parallel: bool,
    },
    /// Cell counts, Chern numbers, kernels of the boundary map and Gamma^ab.
    Invariants {
        #[arg(long = "N", visible_alias = "n")]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long = "ell", num_args = 1.., default_values_t = [2u64, 5, 7])]
        ell: Vec<u64>,
    },
    /// Write the square complex or its links as JSON or Graphviz.
    Export {
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long, value_enum)]
        what: What,
        /// Output file; stdout if omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Lambda,
    Gr,
    Gamma,
    Orbifold,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum What {
    Complex,
    Links,
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors before anything is computed
    let cli = Cli::parse();
    run::run(cli)
}
