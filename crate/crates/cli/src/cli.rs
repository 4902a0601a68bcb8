use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use specular_core::{BenchMethod, EstimateMethod};

#[derive(Debug, Parser)]
#[command(
    name = "specgrad",
    version,
    about = "Specular gradient methods for one-dimensional convex minimization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one method from one initial point and write its trace as CSV.
    Run(RunArgs),
    /// Average several methods over seeded random initial points.
    Bench(BenchArgs),
    /// Run the property checks over every builtin objective.
    Verify(VerifyArgs),
    /// List objective and method names.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    #[value(name = "sm_const")]
    SmConst,
    #[value(name = "sm_dimin")]
    SmDimin,
    #[value(name = "isgm")]
    Isgm,
    #[value(name = "sgm_shor")]
    SgmShor,
}

impl From<MethodArg> for BenchMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::SmConst => BenchMethod::SmConst,
            MethodArg::SmDimin => BenchMethod::SmDimin,
            MethodArg::Isgm => BenchMethod::Isgm,
            MethodArg::SgmShor => BenchMethod::SgmShor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerivativesArg {
    Analytic,
    Fd,
}

impl From<DerivativesArg> for EstimateMethod {
    fn from(d: DerivativesArg) -> Self {
        match d {
            DerivativesArg::Analytic => EstimateMethod::Analytic,
            DerivativesArg::Fd => EstimateMethod::FiniteDifference,
        }
    }
}

/// Settings shared by `run` and `bench`.
#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Objective name (see `list`).
    #[arg(long)]
    pub objective: String,
    /// Constant step size of `sm_const`.
    #[arg(long, default_value_t = 0.005)]
    pub gamma: f64,
    /// Stopping tolerance.
    #[arg(long, default_value_t = 1e-6)]
    pub eta: f64,
    /// Finite-difference mesh.
    #[arg(long, default_value_t = 1e-6)]
    pub h: f64,
    /// Maximum number of iterations.
    #[arg(long, default_value_t = 20)]
    pub iters: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = DerivativesArg::Fd)]
    pub derivatives: DerivativesArg,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Initial point; drawn from the seed when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Methods to compare (repeat or separate with commas); all four by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub method: Vec<MethodArg>,
    #[arg(long, default_value_t = 20)]
    pub trials: u64,
    /// Pin every trial to this initial point.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Points per grid.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = DerivativesArg::Analytic)]
    pub derivatives: DerivativesArg,
    /// Finite-difference mesh.
    #[arg(long, default_value_t = 1e-6)]
    pub h: f64,
    /// Add the non-convex x^3 objective to the sweep.
    #[arg(long, hide = true)]
    pub inject_nonconvex: bool,
}
