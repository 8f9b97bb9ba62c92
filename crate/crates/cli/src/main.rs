mod bench;
mod commands;
mod fail;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stc_core::spantree::DEFAULT_BUDGET;
use stc_core::CutOracle;

/// Spanning tree congestion: generate instances, build trees, certify bounds.
#[derive(Debug, Parser)]
#[command(name = "stc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Exact,
    Spectral,
}

impl OracleArg {
    pub fn oracle(self, seed: u64) -> CutOracle {
        match self {
            OracleArg::Exact => CutOracle::exact(),
            OracleArg::Spectral => CutOracle::spectral(seed),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OracleArg::Exact => "exact",
            OracleArg::Spectral => "spectral",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundsMode {
    Exact,
    Search,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated instance as an edge list.
    Gen(GenArgs),
    /// Build a spanning tree by recursive balanced cuts and report it as JSON.
    Solve(SolveArgs),
    /// Minimum spanning tree congestion by exhaustive search.
    Exact(ExactArgs),
    /// Certified lower bounds on the spanning tree congestion.
    Bounds(BoundsArgs),
    /// Run the invariant suite on one instance or on every small connected graph.
    Verify(VerifyArgs),
    /// Ratio table over a declarative instance spec, as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(stc_core::Family::NAMES))]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// Degree for random_regular and apex_expander.
    #[arg(long)]
    pub d: Option<usize>,
    /// Edge probability for gnp_connected.
    #[arg(long)]
    pub p: Option<f64>,
    /// Columns for grid (defaults to --n).
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = OracleArg::Exact)]
    pub oracle: OracleArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the tree as `u v` lines.
    #[arg(long)]
    pub tree_out: Option<PathBuf>,
    /// Write the decomposition tree as Graphviz.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, clap::Args)]
pub struct ExactArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Refuse graphs with more spanning trees than this.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub tree_out: Option<PathBuf>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct BoundsArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// `exact` enumerates every subset; `search` is a seeded local search.
    #[arg(long, value_enum)]
    pub mode: Option<BoundsMode>,
    /// Expansion evaluations for the search mode.
    #[arg(long, default_value_t = stc_core::bounds::DEFAULT_EFFORT)]
    pub effort: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(short, long, required_unless_present = "small_exhaustive")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OracleArg::Exact)]
    pub oracle: OracleArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Budget for the exact congestion used by the soundness checks.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Check every connected graph on at most this many vertices.
    #[arg(long, value_name = "N")]
    pub small_exhaustive: Option<usize>,
}

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Fill the millis column.
    #[arg(long)]
    pub timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => commands::gen(&args),
        Command::Solve(args) => commands::solve(&args),
        Command::Exact(args) => commands::exact(&args),
        Command::Bounds(args) => commands::bounds(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Bench(args) => bench::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code as u8)
        }
    }
}
