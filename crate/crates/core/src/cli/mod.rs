//! Batch experiment driver behind the `ulambda` binary.
//!
//! `ulambda <subcommand> --config <path.json> [--out <dir>]`. With `--out`
//! every artifact is written to the directory; otherwise the primary artifact
//! goes to stdout. Exit codes: 0 ok, 1 candidate not a member (membership
//! only), 2 inequality violated, 3 inconclusive, 4 configuration error.

pub mod commands;
pub mod config;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use commands::{Artifact, Outcome, Status};
pub use config::{CandidateSpec, ExperimentConfig, FamilyChoice};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "ULAMBDA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ulambda", version, about = "Experiments on the univalence class U(lambda)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Io {
    /// JSON experiment configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Directory receiving all artifacts.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate observed |a_n| against the conjectured and proven bounds.
    VerifyConjecture(Io),
    /// Sweep |U_f| over the grid and report a verdict.
    Membership(Io),
    /// Boundary obstruction for a candidate built from phi with phi(e^{i theta0}) = -1.
    Julia(Io),
    /// Sample the forbidden-value curve for a_2 and answer containment queries.
    RegionA2(Io),
    /// Roots of F(R, r) on a (lambda, R) grid.
    FRoots(Io),
    /// Both sharpness constructions for the second coefficient.
    Sharpness(Io),
    /// Contraction iteration for a zero of q.
    FixedPoint(Io),
}

impl Command {
    pub fn io(&self) -> &Io {
        match self {
            Command::VerifyConjecture(io)
            | Command::Membership(io)
            | Command::Julia(io)
            | Command::RegionA2(io)
            | Command::FRoots(io)
            | Command::Sharpness(io)
            | Command::FixedPoint(io) => io,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyConjecture(_) => "verify-conjecture",
            Command::Membership(_) => "membership",
            Command::Julia(_) => "julia",
            Command::RegionA2(_) => "region-a2",
            Command::FRoots(_) => "f-roots",
            Command::Sharpness(_) => "sharpness",
            Command::FixedPoint(_) => "fixed-point",
        }
    }
}

/// Runs a subcommand on a parsed configuration.
pub fn execute(command: &Command, cfg: &ExperimentConfig) -> crate::Result<Outcome> {
    match command {
        Command::VerifyConjecture(_) => commands::verify_conjecture(cfg),
        Command::Membership(_) => commands::membership(cfg),
        Command::Julia(_) => commands::julia(cfg),
        Command::RegionA2(_) => commands::region_a2(cfg),
        Command::FRoots(_) => commands::f_roots(cfg),
        Command::Sharpness(_) => commands::sharpness(cfg),
        Command::FixedPoint(_) => commands::fixed_point(cfg),
    }
}

fn configure_threads() {
    let Ok(value) = std::env::var(THREADS_ENV) else { return };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            // fails only if a pool already exists, which then stays as it is
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("ulambda: ignoring {THREADS_ENV}={value:?}"),
    }
}

fn write_artifacts(outcome: &Outcome, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for a in &outcome.artifacts {
                std::fs::write(dir.join(&a.name), &a.contents)?;
            }
        }
        None => {
            if let Some(a) = outcome.artifacts.first() {
                std::io::stdout().lock().write_all(a.contents.as_bytes())?;
            }
        }
    }
    Ok(())
}

/// Full run of a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    configure_threads();
    let io = cli.command.io();
    let name = cli.command.name();
    let cfg = match ExperimentConfig::from_path(&io.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("ulambda {name}: {e}");
            return Status::ConfigError.code();
        }
    };
    let outcome = match execute(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("ulambda {name}: {e}");
            return commands::status_for_error(&e).code();
        }
    };
    if let Err(e) = write_artifacts(&outcome, io.out.as_deref()) {
        eprintln!("ulambda {name}: cannot write output: {e}");
        return Status::ConfigError.code();
    }
    if outcome.status != Status::Ok {
        eprintln!("ulambda {name}: {:?}", outcome.status);
    }
    outcome.status.code()
}

/// Parses `args` (including the program name) and runs. Usage errors exit
/// with the config-error code rather than clap's default.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                Status::ConfigError.code()
            } else {
                0
            }
        }
    }
}
