use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Group testing with residual decoding and geometric test designs.
#[derive(Debug, Parser)]
#[command(name = "resgt", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a test design from a geometry and write its files
    Construct(ConstructArgs),
    /// Check disjunctness or reversibility of a testing matrix
    Verify(VerifyArgs),
    /// Compute the syndrome y = xH of a sample vector
    Encode(CodingArgs),
    /// Decode a syndrome with the residual decoder
    Decode(CodingArgs),
    /// Run a seeded Monte-Carlo campaign against a scheme
    Simulate(SimulateArgs),
    /// Print dimensions and weight statistics of a matrix or scheme
    Info(InfoArgs),
}

#[derive(Debug, Args)]
pub struct WorkerArgs {
    /// Worker threads (0 = one per core) [env: RESGT_WORKERS]
    #[arg(long, value_name = "N")]
    pub workers: Option<usize>,
}

impl WorkerArgs {
    pub fn resolve(&self) -> usize {
        self.workers
            .or_else(|| std::env::var("RESGT_WORKERS").ok()?.parse().ok())
            .unwrap_or(0)
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
    /// Directory for the .pls, .mat and .scheme files
    #[arg(long, value_name = "DIR", default_value = ".", global = true)]
    pub out: PathBuf,
    #[command(flatten)]
    pub workers: WorkerArgs,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Symplectic quadrangle W(q) of order (q,q), q prime
    #[command(name = "gq-w")]
    GqW {
        /// Field order q (prime)
        q: u32,
    },
    /// Grid quadrangle of order (s,1)
    Grid {
        /// Line size minus one
        s: usize,
    },
    /// Partial linear space read from a .pls file
    #[command(name = "from-pls")]
    FromPls {
        /// Input .pls file
        file: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(id = "mode", required = true, multiple = false)]
pub struct VerifyMode {
    /// Check d-disjunctness (d-Dis)
    #[arg(long, value_name = "D", group = "mode")]
    pub dis: Option<usize>,
    /// Check d-reversibility by decoding every pattern of weight <= D
    #[arg(long, value_name = "D", group = "mode")]
    pub rev: Option<usize>,
    /// Print the largest d for which the matrix is d-disjunct
    #[arg(long, group = "mode")]
    pub max_d: bool,
    /// Run all applicable checkers at D and report whether they agree
    #[arg(long, value_name = "D", group = "mode")]
    pub equiv: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Matrix or scheme file
    pub matrix: PathBuf,
    #[command(flatten)]
    pub mode: VerifyMode,
    #[command(flatten)]
    pub workers: WorkerArgs,
}

#[derive(Debug, Args)]
pub struct CodingArgs {
    /// Matrix or scheme file
    pub matrix: PathBuf,
    /// Input vector as 0/1 characters; read from stdin when omitted
    pub vector: Option<String>,
}

#[derive(Debug, Args)]
#[group(id = "model", required = true, multiple = false)]
pub struct ModelArgs {
    /// Draw patterns of exactly W positives, uniformly
    #[arg(long, value_name = "W", group = "model")]
    pub fixed_weight: Option<usize>,
    /// Mark each sample positive independently with probability P
    #[arg(long, value_name = "P", group = "model")]
    pub bernoulli: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Matrix or scheme file
    pub scheme: PathBuf,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Number of trials (at least 1)
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Master seed
    #[arg(long, value_name = "S", default_value_t = 0)]
    pub seed: u64,
    /// CSV output path; stats go to stdout. Without it, CSV goes to stdout and stats to stderr
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Keep only the first N trials in the CSV (stats always cover every trial)
    #[arg(long, value_name = "N")]
    pub log_limit: Option<usize>,
    #[command(flatten)]
    pub workers: WorkerArgs,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    /// Matrix or scheme file
    pub matrix: PathBuf,
}
