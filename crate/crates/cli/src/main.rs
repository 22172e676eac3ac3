//! `rdcn`: generate demand matrices, build topologies, and evaluate throughput.

mod commands;
mod config;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Overrides, RunConfig};

/// Error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub const INPUT: u8 = 2;
    pub const RUNTIME: u8 = 3;
    pub const ACCEPTANCE: u8 = 4;

    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: Self::INPUT,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        CliError {
            code: Self::RUNTIME,
            message: message.into(),
        }
    }
}

impl From<rdcn::Error> for CliError {
    fn from(e: rdcn::Error) -> Self {
        use rdcn::Error as E;
        let code = match e {
            E::InvalidArgument(_)
            | E::InfeasibleAugmentation { .. }
            | E::AugmentationFailed(_)
            | E::Parse { .. }
            | E::Io { .. }
            | E::Json(_) => Self::INPUT,
            E::DecompositionFailed(_) | E::Solver { .. } | E::NoBackend(_) | E::Internal(_) => Self::RUNTIME,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "rdcn", version, about = "Throughput of reconfigurable datacenter networks")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Flat `key = value` config file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Number of ToRs [default: 16].
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Links per ToR, i.e. circuit switches [default: n].
    #[arg(long, global = true)]
    u: Option<usize>,
    /// Link capacity in bits/s [default: 25e9].
    #[arg(long, global = true)]
    c: Option<f64>,
    /// Master seed [default: 0].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Scan step of the demand-aware heuristic [default: 0.01].
    #[arg(long, global = true)]
    step: Option<f64>,
    /// LP feasibility and optimality tolerance [default: 1e-7].
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output directory [default: $RDCN_OUT_DIR or .].
    #[arg(long, global = true, env = config::OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
    /// Concurrent LP solves in sweeps; 0 means one per core.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// LP backend.
    #[arg(long, global = true)]
    solver: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated demand matrix (bits/s) as CSV.
    Gen {
        /// uniform, permutation, chessboard, mix or random-saturated.
        #[arg(long)]
        kind: String,
        /// Permutation weight for `mix`.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Permutation offset `i -> i + shift`.
        #[arg(long, default_value_t = 1)]
        shift: i64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer/residual decomposition and uniform-residual class of a matrix.
    Decompose {
        /// CSV matrix, one row per line.
        matrix: PathBuf,
        /// Divide entries by this before decomposing (e.g. the link capacity).
        #[arg(long, default_value_t = 1.0)]
        unit: f64,
    },
    /// Throughput of one matrix under one network class.
    Eval {
        /// CSV matrix in bits/s.
        matrix: PathBuf,
        /// static, oblivious, da-static, da-periodic or one-shot.
        #[arg(long, value_parser = parse_class)]
        class: rdcn::topology::NetworkClass,
        /// Input is in link units; multiply by c before evaluating.
        #[arg(long)]
        normalized: bool,
        /// Print the heuristic trace as JSON.
        #[arg(long)]
        trace: bool,
        /// Write topology (and schedule) JSON into the output directory.
        #[arg(long)]
        emit_topo: bool,
    },
    /// Run a figure sweep, write CSV/JSON/SVG, and check the expected shape.
    Reproduce {
        figure: Figure,
        /// Additional CSV matrix in bits/s; repeatable.
        #[arg(long = "matrix")]
        matrices: Vec<PathBuf>,
        /// Keep heuristic traces in the JSON output.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig3,
    Fig4,
}

fn parse_class(s: &str) -> Result<rdcn::topology::NetworkClass, String> {
    s.parse().map_err(|e: rdcn::Error| e.to_string())
}

fn load_config(g: &GlobalArgs, matrices: Vec<PathBuf>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        cfg.apply_file(path)?;
    }
    cfg.apply(&Overrides {
        n: g.n,
        u: g.u,
        c: g.c,
        seed: g.seed,
        step: g.step,
        tol: g.tol,
        out_dir: g.out_dir.clone(),
        jobs: g.jobs,
        solver: g.solver.clone(),
        matrices,
    });
    cfg.params()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            kind,
            alpha,
            shift,
            out,
        } => {
            let cfg = load_config(&cli.global, Vec::new())?;
            commands::cmd_gen(&kind, alpha, shift, out.as_deref(), &cfg)
        }
        Command::Decompose { matrix, unit } => commands::cmd_decompose(&matrix, unit),
        Command::Eval {
            matrix,
            class,
            normalized,
            trace,
            emit_topo,
        } => {
            let cfg = load_config(&cli.global, Vec::new())?;
            commands::cmd_eval(&matrix, class, normalized, trace, emit_topo, &cfg)
        }
        Command::Reproduce {
            figure,
            matrices,
            trace,
        } => {
            let cfg = load_config(&cli.global, matrices)?;
            commands::cmd_reproduce(figure, trace, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
