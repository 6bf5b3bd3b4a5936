use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fuzzyloc", version, about = "Fuzzy queuing maximal benefit location solver and benchmark harness")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random instance, or the bundled 20-node instance.
    Generate(GenerateArgs),
    /// Run the seven-run protocol with one algorithm.
    Solve(SolveArgs),
    /// Paired GA/ACO replications with CSV, summary and plot data.
    Bench(BenchArgs),
    /// Full-factorial grid over the ACO parameters.
    Tune(TuneArgs),
    /// Check the queue formulas against simulation.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Ga,
    Aco,
    Brute,
}

/// Overrides applied to every loaded instance.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    /// Truth level of the fuzzy capacity constraint, in [0, 1].
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Logit distance sensitivity.
    #[arg(long)]
    pub logit: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Number of servers.
    #[arg(long = "m")]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the bundled 20-node instance.
    #[arg(long, conflicts_with_all = ["n", "m", "light"])]
    pub table1: bool,
    /// Lower demand so that most location sets are feasible.
    #[arg(long)]
    pub light: bool,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, required_unless_present = "table1")]
    pub instance: Option<PathBuf>,
    #[arg(long, conflicts_with = "instance")]
    pub table1: bool,
    #[arg(long, value_enum, default_value_t = AlgoArg::Ga)]
    pub algo: AlgoArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report file (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Compute membership bounds by enumeration when the budget allows.
    #[arg(long)]
    pub exact_bounds: bool,
    /// Reuse the bounds stored in a context or report file.
    #[arg(long, conflicts_with = "exact_bounds")]
    pub bounds: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance files; repeat for several.
    #[arg(long, required_unless_present = "table1")]
    pub instance: Vec<PathBuf>,
    /// Include the bundled 20-node instance.
    #[arg(long)]
    pub table1: bool,
    #[arg(long, default_value_t = 5)]
    pub replications: u64,
    /// First seed; replication r uses seed + r for both algorithms.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = "bench-out")]
    pub out: PathBuf,
    #[arg(long)]
    pub exact_bounds: bool,
    /// Concurrent runs. Runtimes are only comparable at 1.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    #[arg(long, required_unless_present = "table1")]
    pub instance: Option<PathBuf>,
    #[arg(long, conflicts_with = "instance")]
    pub table1: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Seeds per cell.
    #[arg(long, default_value_t = 1)]
    pub replications: u64,
    /// CSV file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub exact_bounds: bool,
    #[arg(long, value_delimiter = ',', default_values_t = [0.95, 0.99])]
    pub evaporation: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [150.0, 250.0])]
    pub max_pheromone: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 3])]
    pub coefficient: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0])]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0])]
    pub beta: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Arrival and departure events per simulation.
    #[arg(long, default_value_t = 1_000_000)]
    pub events: u64,
    /// Number of seeds, starting at 1.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.5, 0.8])]
    pub rho: Vec<f64>,
    /// Relative error tolerance.
    #[arg(long, default_value_t = 0.02)]
    pub tolerance: f64,
    /// The tolerance is widened to z batch-means standard errors when that
    /// is larger.
    #[arg(long, default_value_t = 3.0)]
    pub z: f64,
    #[arg(long, default_value_t = 2_000_000)]
    pub network_events: u64,
    /// CSV of every comparison.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
