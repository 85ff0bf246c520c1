use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclestat_core::scanner::DEFAULT_BUDGET;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "cyclestat", version, about = "Exact coincidence statistics for permutation cycle types and polynomials over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    /// Seed for equal-degree splitting in `factor`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (default: number of processors).
    #[arg(long, global = true, env = "CYCLESTAT_THREADS")]
    pub threads: Option<usize>,

    /// Directory of cached results; caching is off when unset.
    #[arg(long, global = true, env = "CYCLESTAT_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Largest q^n an exhaustive scan may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Lift the scan budget entirely.
    #[arg(long, global = true)]
    pub no_budget: bool,
}

impl Cli {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            command: self.command.clone(),
            seed: self.seed,
            budget: if self.no_budget { u64::MAX } else { self.budget },
            format: self.format,
            output: self.output.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// Everything that determines a run. Thread count and cache location are
/// left out because they cannot change the result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub budget: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            seed: 0,
            budget: DEFAULT_BUDGET,
            format: Format::Json,
            output: None,
        }
    }

    /// The part of the config that determines the payload.
    pub fn cache_identity(&self) -> (&Command, u64, u64) {
        (&self.command, self.seed, self.budget)
    }
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    /// E_r(n) or W_r(n) as an exact rational.
    Stats(StatsArgs),
    /// Certified bracket for A_r and the closed form of c_r.
    Constants(ConstantsArgs),
    /// Coefficients W_r(0..=N) of the generating function.
    Series(SeriesArgs),
    /// Exhaustive coincidence count over all monic f of degree n.
    Scan(ScanArgs),
    /// The same scan over a list of primes, shifts 0..r-1.
    Sweep(SweepArgs),
    /// Joint census of shifted cycle types.
    Census(CensusArgs),
    /// Totient collisions between distinct squarefree cycle types.
    Probe(ProbeArgs),
    /// Distinctness certificate for the structure polynomials of degree n.
    Certify(CertifyArgs),
    /// Ratios against the large-n asymptotics.
    Trend(TrendArgs),
    /// Factor one polynomial over F_q and report its arithmetic functions.
    Factor(FactorArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum StatKind {
    #[value(name = "E")]
    E,
    #[value(name = "W")]
    W,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct StatsArgs {
    #[arg(long, value_enum)]
    pub which: StatKind,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'r', default_value_t = 2)]
    pub r: u32,
    /// Floating-point evaluation instead of exact rationals.
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ConstantsArgs {
    #[arg(short = 'r', default_value_t = 2)]
    pub r: u32,
    /// Number of product factors (default depends on r).
    #[arg(long = "K")]
    pub k: Option<u64>,
    /// Terms kept from each factor.
    #[arg(long = "J", default_value_t = cyclestat_core::series::DEFAULT_TERMS_PER_FACTOR)]
    pub j: u32,
    /// Only the closed form of c_r.
    #[arg(long)]
    pub cr_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Product,
    #[value(name = "exppolylog")]
    ExpPolylog,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SeriesArgs {
    #[arg(short = 'r', default_value_t = 2)]
    pub r: u32,
    #[arg(short = 'N', long = "order")]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Method::Product)]
    pub method: Method,
    /// Floating-point coefficients (product method only).
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(short = 'n')]
    pub n: usize,
    /// Number of constant shifts 0..r-1, used when --shifts is absent.
    #[arg(short = 'r', default_value_t = 2)]
    pub r: usize,
    /// Explicit shifts "a1;a2;...", each as little-endian coefficients "c0,c1,...".
    #[arg(long)]
    pub shifts: Option<String>,
    /// omega, big_omega, d_<k>, phi or sigma.
    #[arg(long, default_value = "omega")]
    pub alpha: String,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub primes: Vec<u64>,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'r', default_value_t = 2)]
    pub r: usize,
    #[arg(long, default_value = "omega")]
    pub alpha: String,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'r', default_value_t = 1)]
    pub r: usize,
    #[arg(long)]
    pub shifts: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ProbeArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    Phi,
    Sigma,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CertifyArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Structure::Phi)]
    pub which: Structure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Target {
    #[value(name = "E", alias = "E-asymptotic")]
    E,
    #[value(name = "W", alias = "W-asymptotic")]
    W,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct TrendArgs {
    #[arg(short = 'r', default_value_t = 2)]
    pub r: u32,
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long, value_enum)]
    pub target: Target,
    /// Exact series coefficients for the W target (default: floating point).
    #[arg(long)]
    pub exact: bool,
    /// Product factors for the A_r bracket (default depends on r).
    #[arg(long = "K")]
    pub k: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FactorArgs {
    #[arg(long)]
    pub q: u64,
    /// Polynomial text, e.g. "x^3 + 2*x + 1".
    #[arg(long)]
    pub poly: String,
    /// Trial division when q^(deg/2) is at most this.
    #[arg(long, default_value_t = 0)]
    pub trial_below: u64,
}
