//! `tropmirror`: subdivisions, tropical hypersurfaces, amoeba samples and
//! the Floer / coordinate ring comparison for a fan with a support function.

mod commands;
mod config;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Failure, JobConfig};

#[derive(Parser, Debug)]
#[command(name = "tropmirror", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Subdivide,
    Tropical,
    Amoeba,
    Verify,
    Hilbert,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coherent subdivision of the bundle heights.
    Subdivide(Args),
    /// Tropical hypersurface, components and localization constants.
    Tropical(Args),
    /// Amoeba sample, Hausdorff report, margins and plot (n = 2 only).
    Amoeba(Args),
    /// Floer algebra against the homogeneous coordinate ring.
    Verify(Args),
    /// Lattice-point counts of the dilates.
    Hilbert(Args),
}

#[derive(clap::Args, Debug, Clone)]
pub struct Args {
    /// Fan JSON: {"rays": [[..]], "max_cones": [[..]], "phi": ["p/q", ..]}.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Scale t, as a number or `e^x`. Defaults to the chosen scale.
    #[arg(long)]
    t: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    s: f64,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Largest twist or degree.
    #[arg(long = "J", default_value_t = 4)]
    j: usize,
    /// Moduli per fiber direction.
    #[arg(long, default_value_t = 200)]
    grid: usize,
    /// Arguments per modulus.
    #[arg(long, default_value_t = 64)]
    args: usize,
    /// Window in rescaled coordinates, `x0,x1,y0,y1`.
    #[arg(long, default_value = "-3,3,-3,3")]
    window: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("TROPMIRROR_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("TROPMIRROR_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    init_threads()?;
    let (kind, args) = match cli.command {
        Command::Subdivide(a) => (CommandKind::Subdivide, a),
        Command::Tropical(a) => (CommandKind::Tropical, a),
        Command::Amoeba(a) => (CommandKind::Amoeba, a),
        Command::Verify(a) => (CommandKind::Verify, a),
        Command::Hilbert(a) => (CommandKind::Hilbert, a),
    };
    let cfg = JobConfig::from_args(kind, args)?;
    match cfg.command {
        CommandKind::Subdivide => commands::subdivide(&cfg),
        CommandKind::Tropical => commands::tropical(&cfg),
        CommandKind::Amoeba => commands::amoeba(&cfg),
        CommandKind::Verify => commands::verify(&cfg),
        CommandKind::Hilbert => commands::hilbert(&cfg),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
