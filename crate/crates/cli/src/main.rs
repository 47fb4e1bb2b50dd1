//! `vecsim`: run the offloading solvers, sweeps and self-checks from the shell.

mod fixtures;
mod output;
mod solve;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use offload_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const CONFIG: u8 = 3;
    pub const SIZE: u8 = 4;
    pub const VERIFY: u8 = 5;
}

#[derive(Parser, Debug)]
#[command(
    name = "vecsim",
    version,
    about = "Queue-aware vehicular edge offloading simulator"
)]
struct Cli {
    /// Worker threads for parallel sweeps and suites (default: all cores).
    #[arg(long, global = true, env = "VECSIM_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Optimality,
    Contraction,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one scenario with one algorithm.
    Solve {
        /// JSON config document; defaults apply when omitted.
        config: Option<PathBuf>,
        /// One of mp, sc, gt, bm, ea, pd, es.
        #[arg(long, default_value = "mp")]
        algorithm: String,
        /// Overrides `scenario.seed`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, env = "VECSIM_OUT_DIR", default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Solve a serialized instance instead of generating one.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Also write the full delay table.
        #[arg(long)]
        dump_table: bool,
    },
    /// Run a parameter sweep over seeds.
    Sweep {
        config: Option<PathBuf>,
        /// One of vehicles, cpus, tmax, capacity, convergence, overload.
        #[arg(long)]
        experiment: String,
        /// Overrides `experiment.seeds`.
        #[arg(long)]
        seeds: Option<usize>,
        #[arg(long, env = "VECSIM_OUT_DIR", default_value = "out")]
        out: PathBuf,
    },
    /// Run a verification suite; exits 5 when a threshold is missed.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Samples per cell (oracle), instances (optimality) or pairs per instance (contraction).
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "VECSIM_OUT_DIR", default_value = "out")]
        out: PathBuf,
    },
    /// Regenerate the bundled small instances and their exhaustive-search references.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

/// An error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::Size(_) => exit::SIZE,
            CoreError::Io(_) => exit::IO,
            CoreError::Config { .. }
            | CoreError::UnknownName { .. }
            | CoreError::Json(_)
            | CoreError::Domain(_) => exit::CONFIG,
            CoreError::Index(_) | CoreError::Infeasible(_) => exit::CONFIG,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(exit::IO, e.to_string())
    }
}

pub type CmdResult<T = ()> = std::result::Result<T, Failure>;

fn run(cli: Cli) -> CmdResult {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::new(exit::USAGE, format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Solve {
            config,
            algorithm,
            seed,
            out,
            format,
            instance,
            dump_table,
        } => solve::run(solve::Args {
            config,
            algorithm,
            seed,
            out,
            format,
            instance,
            dump_table,
        }),
        Command::Sweep {
            config,
            experiment,
            seeds,
            out,
        } => sweep::run(config, &experiment, seeds, &out),
        Command::Verify {
            suite,
            trials,
            seed,
            out,
        } => verify::run(suite, trials, seed, &out),
        Command::Fixtures { out } => fixtures::run(&out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
