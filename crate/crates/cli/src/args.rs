//! Flag definitions. All configuration is explicit flags; no environment
//! variables are read.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "vrsp",
    version,
    about = "Multiple endpoint testing under an equicorrelated normal model: \
             procedures, vector risk, and admissibility checks",
    after_help = "Exit codes: 0 success (including 'violations found'), \
                  2 usage or configuration error, 3 numerical failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Export a k=2 decision-region grid as CSV (z1,z2,a1,a2)
    Region(RegionArgs),
    /// Tabulate Monte Carlo vector risk (R0, R1) over a mu grid
    Risk(RiskArgs),
    /// Verify that psi* dominates step-up: quadrature and common-random-
    /// number Monte Carlo deltas over a mu grid
    Dominate(DominateArgs),
    /// Evaluate Bayes q-values and actions at supplied observations
    Bayes(BayesArgs),
    /// Scan a procedure for partial-sum monotonicity violations
    Admcheck(AdmcheckArgs),
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// Number of endpoints
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Common variance sigma^2
    #[arg(long, default_value_t = 1.0)]
    pub sigma2: f64,
    /// Common correlation rho
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub rho: f64,
}

#[derive(Args, Debug)]
pub struct ProcedureArgs {
    /// Procedure: step-up | marginal | psi-star | bayes
    #[arg(long = "proc")]
    pub proc: String,
    /// Comma-separated critical values C1,...,Ck (one value for marginal)
    #[arg(long, allow_hyphen_values = true)]
    pub crit: Option<String>,
    /// Prior CSV file (theta,weight,mu_1,...,mu_k) for the bayes procedure
    #[arg(long)]
    pub prior: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub procedure: ProcedureArgs,
    /// Grid lo:hi:steps applied to both axes
    #[arg(long, default_value = "-1:4:51", allow_hyphen_values = true)]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct RiskArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub procedure: ProcedureArgs,
    /// Grid lo:hi:steps applied to every mu coordinate (product grid)
    #[arg(long, default_value = "0:3:7", allow_hyphen_values = true)]
    pub grid: String,
    /// Monte Carlo draws per grid point
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    /// Master seed
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DominateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Step-up critical values C1,C2
    #[arg(long, default_value = "1,2", allow_hyphen_values = true)]
    pub crit: String,
    /// Grid lo:hi:steps for both mu coordinates
    #[arg(long, default_value = "0:3:13", allow_hyphen_values = true)]
    pub grid: String,
    /// Comma-separated loss multipliers b
    #[arg(long, default_value = "1")]
    pub b: String,
    /// Monte Carlo draws per grid point
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    /// Master seed
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BayesArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Prior CSV file (theta,weight,mu_1,...,mu_k)
    #[arg(long)]
    pub prior: PathBuf,
    /// Observation z1,...,zk (repeatable)
    #[arg(long = "z", required = true, allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// Append the brute-force posterior oracle action and an agreement flag
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct AdmcheckArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub procedure: ProcedureArgs,
    /// Use a preset scan line; currently: corollary-4.4
    #[arg(long)]
    pub preset: Option<String>,
    /// Witness offset epsilon; default (C_k - C_{k-1})/4
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Index j of the varying partial sum (2..=k) for an explicit line
    #[arg(long)]
    pub j: Option<usize>,
    /// Fixed partial sums t_i, i != j, comma separated in ascending i
    #[arg(long, allow_hyphen_values = true)]
    pub fixed: Option<String>,
    /// Scan range lo:hi for t_j
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Grid points per line
    #[arg(long, default_value_t = 512)]
    pub steps: usize,
    /// Also print the explicit step-up violation witness pair
    #[arg(long)]
    pub witness: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
