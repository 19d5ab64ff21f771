//! `ecp`: enriched chain polytope computations from the command line.
//!
//! Exit codes: 0 on success, 1 on bad input or an exceeded guard, 2 when
//! an identity check fails.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use enriched_chain::Guards;

use render::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{file}:{line}: parse error: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error(transparent)]
    Core(#[from] enriched_chain::Error),
    #[error("{0}")]
    Usage(String),
    /// A check ran to completion and failed; the report was still printed.
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_alarm() => 2,
            CliError::CheckFailed(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ecp", version, about = "Lattice point, Ehrhart and Gröbner computations on the enriched chain polytope of a poset")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json", env = "ECP_FORMAT")]
    format: Format,

    /// Largest poset size generated by `verify-all`.
    #[arg(long, global = true, env = "ECP_MAX_N")]
    max_n: Option<usize>,

    /// Largest dilation / partition bound.
    #[arg(long, global = true, default_value_t = 4, env = "ECP_MAX_M")]
    max_m: u64,

    /// Number of series terms compared, `x^0..=x^M`.
    #[arg(long, global = true, default_value_t = 8, env = "ECP_TRUNCATION")]
    truncation: usize,

    /// Largest point box a lattice point or partition count may scan.
    #[arg(long, global = true, env = "ECP_GUARD_POINTS")]
    guard_points: Option<u128>,

    /// Largest number of S-pairs a Buchberger check may reduce.
    #[arg(long, global = true, env = "ECP_GUARD_SPAIRS")]
    guard_spairs: Option<u128>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Antichains of the poset.
    Antichains { input: PathBuf },
    /// Linear extensions of the poset.
    Extensions { input: PathBuf },
    /// Ehrhart polynomial, h*, γ and normalized volume.
    Ehrhart { input: PathBuf },
    /// h*-polynomial and its shape properties.
    Hstar { input: PathBuf },
    /// γ-vector of h* compared with the left peak polynomial.
    Gamma { input: PathBuf },
    /// Left enriched and enriched partition counts and order polynomials.
    Partitions { input: PathBuf },
    /// Peak, left peak and descent polynomials and the series identity.
    Peaks { input: PathBuf },
    /// Gröbner basis certificate of the toric ideal.
    Grobner { input: PathBuf },
    /// Unimodular triangulation read off the initial ideal.
    Triangulation { input: PathBuf },
    /// Flag complex of decorated linear extensions.
    Complex { input: PathBuf },
    /// Every identity on one poset or on all posets up to `--max-n`.
    VerifyAll {
        /// Single poset file instead of the generator.
        #[arg(long)]
        poset: Option<PathBuf>,
    },
}

pub struct Config {
    pub max_n: Option<usize>,
    pub max_m: u64,
    pub truncation: usize,
    pub guards: Guards,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut guards = Guards::default();
    if let Some(p) = cli.guard_points {
        guards.max_points = p;
    }
    if let Some(s) = cli.guard_spairs {
        guards.max_spairs = s;
    }
    let config = Config {
        max_n: cli.max_n,
        max_m: cli.max_m,
        truncation: cli.truncation,
        guards,
    };
    let (value, failure) = match commands::run(&cli.command, &config) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("ecp: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    print!("{}", render::render(&value, cli.format));
    match failure {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("ecp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
