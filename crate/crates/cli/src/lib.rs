//! Command-line front end for `seqctl`.
//!
//! [`run`] executes a parsed [`Cli`] and returns the text to print together
//! with the process exit code, so the binary is a thin wrapper and tests can
//! drive commands in-process.

mod commands;
mod report;
mod select;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seqctl::{OneStepMode, SequentialMode, DEFAULT_MAX_NODES};

pub use commands::{run, CliError, Outcome};
pub use report::{
    AttractorEntry, AttractorRow, AttractorsReport, BasinsReport, BenchRow, ControlEntry, NodeSets,
    PathEntry, PathVerdict, PathsReport, PerMode, SimulationReport, VerifyReport,
};
pub use select::{parse_labels, resolve_attractor};

#[derive(Debug, Parser)]
#[command(
    name = "seqctl",
    version,
    about = "Attractor-based sequential control of Boolean networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Largest network accepted for explicit state-space analysis.
    #[arg(long = "max-n", global = true, default_value_t = DEFAULT_MAX_NODES)]
    pub max_n: usize,

    /// File of `name = selector` lines naming attractors.
    #[arg(long, global = true)]
    pub labels: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the attractors of a model.
    Attractors { model: PathBuf },
    /// Weak and strong basin of one attractor.
    Basins { model: PathBuf, attractor: String },
    /// Minimal one-step controls between two attractors.
    Control(ControlArgs),
    /// Sequential control paths between two attractors.
    Paths(PathsArgs),
    /// Re-check a paths report by brute force.
    Verify {
        model: PathBuf,
        paths: PathBuf,
        /// Check every state of each attractor left, whatever the report says.
        #[arg(long)]
        strict: bool,
    },
    /// Benchmark the three sequential modes on a list of models.
    Bench(BenchArgs),
    /// Random asynchronous run from a state.
    Simulate {
        model: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Constraints {
    /// Perturbation budget.
    #[arg(short = 'k', long = "max-perturbations")]
    pub max_perturbations: Option<usize>,

    /// Node that must not be perturbed (repeatable).
    #[arg(long = "forbid-node")]
    pub forbid_node: Vec<String>,

    /// Require each control to work from every state of the attractor it leaves.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ControlArgs {
    pub model: PathBuf,
    pub source: String,
    pub target: String,
    #[arg(long, value_enum, ignore_case = true, default_value = "OT")]
    pub mode: Mode,
    #[command(flatten)]
    pub constraints: Constraints,
}

#[derive(Debug, Clone, Args)]
pub struct PathsArgs {
    pub model: PathBuf,
    pub source: String,
    pub target: String,
    #[arg(long, value_enum, ignore_case = true, default_value = "AST")]
    pub mode: Mode,
    #[command(flatten)]
    pub constraints: Constraints,
    /// Attractor that must not be used as an intermediate (repeatable).
    #[arg(long = "forbid-intermediate")]
    pub forbid_intermediate: Vec<String>,
    /// Also report direct source-to-target hops.
    #[arg(long)]
    pub include_one_step: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    pub models: Vec<PathBuf>,
    /// Source attractor; defaults to the first one.
    #[arg(long)]
    pub source: Option<String>,
    /// Target attractor; defaults to the last one.
    #[arg(long)]
    pub target: Option<String>,
    #[command(flatten)]
    pub constraints: Constraints,
    #[arg(long)]
    pub include_one_step: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[value(name = "OI")]
    Oi,
    #[value(name = "OT")]
    Ot,
    #[value(name = "OP")]
    Op,
    #[value(name = "ASI")]
    Asi,
    #[value(name = "AST")]
    Ast,
    #[value(name = "ASP")]
    Asp,
}

impl Mode {
    pub fn one_step(self) -> Option<OneStepMode> {
        match self {
            Mode::Oi => Some(OneStepMode::Instantaneous),
            Mode::Ot => Some(OneStepMode::Temporary),
            Mode::Op => Some(OneStepMode::Permanent),
            _ => None,
        }
    }

    pub fn sequential(self) -> Option<SequentialMode> {
        match self {
            Mode::Asi => Some(SequentialMode::Instantaneous),
            Mode::Ast => Some(SequentialMode::Temporary),
            Mode::Asp => Some(SequentialMode::Permanent),
            _ => None,
        }
    }
}
