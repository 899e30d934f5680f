use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "tlss",
    version,
    about = "Evaluate, sample, fit and simulate TLSS distributions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density, log-density and cdf on a y-grid, or quantiles at given probabilities.
    Eval(EvalArgs),
    /// Seeded random draws, one value per line.
    Sample(SampleArgs),
    /// Maximum-likelihood fits of one or more models to a dataset.
    Fit(FitArgs),
    /// Fit the competing models of a comparison and rank them by AIC.
    Compare(FitArgs),
    /// Monte Carlo study of estimator bias, MSE and interval coverage.
    Simulate(SimulateArgs),
    /// Stationary points of the density.
    Modes(ModesArgs),
    /// Synthetic dataset with optional left censoring, in the input CSV format.
    Fixture(FixtureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Inverse,
    Reject,
}

impl From<Method> for tlss::SamplingMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Inverse => tlss::SamplingMethod::InverseTransform,
            Method::Reject => tlss::SamplingMethod::AcceptReject,
        }
    }
}

/// A TLSS distribution on the command line.
#[derive(Debug, Clone, Args, Serialize)]
pub struct DistArgs {
    /// Kernel: tlsn, tlsl, tlsc, tlslg (or normal, laplace, cauchy, logistic).
    #[arg(long, default_value = "tlsn")]
    pub model: String,
    /// Kernel location.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    /// Kernel scale.
    #[arg(
        long,
        visible_alias = "scale",
        default_value_t = 1.0,
        allow_hyphen_values = true
    )]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Left end of the y-grid.
    #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
    pub from: f64,
    /// Right end of the y-grid.
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    pub to: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 161)]
    pub grid: usize,
    /// Probabilities for quantile output instead of the y-grid.
    #[arg(long, value_delimiter = ',')]
    pub u: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    #[arg(long, value_enum, default_value_t = Method::Inverse)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    /// CSV with header `value` or `value,censored`; relative paths are also
    /// looked up in $TLSS_DATA_DIR.
    pub data: PathBuf,
    /// Models to fit (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub model: Vec<String>,
    /// Confidence level of the Wald intervals.
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,
    /// Number of lambda starting values for TLSS models.
    #[arg(long, default_value_t = 4)]
    pub starts: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, visible_alias = "scale", default_value_t = 1.0)]
    pub sigma: f64,
    /// True lambda values, one study each.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1",
        allow_hyphen_values = true
    )]
    pub lambda: Vec<f64>,
    /// Sample sizes.
    #[arg(long, value_delimiter = ',', default_value = "50,100")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = tlss::simstudy::DEFAULT_REPLICATIONS)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,
    #[arg(long, value_enum, default_value_t = Method::Inverse)]
    pub method: Method,
    #[arg(long, default_value_t = 2)]
    pub starts: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct ModesArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Grid points for bracketing.
    #[arg(long, default_value_t = tlss::modes::DEFAULT_GRID_POINTS)]
    pub grid: usize,
    /// Half-width of the search window in kernel scale units.
    #[arg(long, default_value_t = tlss::modes::DEFAULT_SEARCH_RADIUS)]
    pub radius: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct FixtureArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    #[arg(long, value_enum, default_value_t = Method::Inverse)]
    pub method: Method,
    /// Left-censor draws below this probability level of the generating law;
    /// censored rows carry the threshold as their value.
    #[arg(long)]
    pub censor_quantile: Option<f64>,
}
