use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Max-id laws, geometric maxima, extremal and max-AR(1) processes.
#[derive(Debug, Parser)]
#[command(name = "maxid", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate cdf and -log cdf of a law on a grid.
    Table(TableArgs),
    /// Draw i.i.d. samples from a law.
    Sample(SampleArgs),
    /// Simulate an extremal process, optionally time-changed.
    Ep(EpArgs),
    /// Simulate a max-AR(1) chain with geometric-gamma marginals.
    Ar1(Ar1Args),
    /// Run the built-in identity and Monte Carlo checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Base,
    Gmid,
    GammaMid,
    GgammaMid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Frechet,
    Weibull,
    Gumbel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Inverse,
    Latent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Compound {
    None,
    Gamma,
    Ggamma,
}

/// `lo:hi:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:count, got `{s}`"));
        }
        let lo: f64 = parts[0].parse().map_err(|e| format!("bad lo: {e}"))?;
        let hi: f64 = parts[1].parse().map_err(|e| format!("bad hi: {e}"))?;
        let count: usize = parts[2].parse().map_err(|e| format!("bad count: {e}"))?;
        if !(lo.is_finite() && hi.is_finite()) || hi < lo || count == 0 {
            return Err(format!("grid `{s}` needs finite lo <= hi and count >= 1"));
        }
        Ok(GridSpec { lo, hi, count })
    }
}

#[derive(Debug, Clone, Args)]
pub struct LawArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value = "frechet")]
    pub family: Family,
    /// Tail index of the Fréchet or Weibull exponent.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Shape; required for gamma-mid and ggamma-mid.
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SeedArg {
    /// Random seed; defaults to $MAXID_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub law: LawArgs,
    /// Evenly spaced grid `lo:hi:count`.
    #[arg(long, conflicts_with = "quantile_grid", allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
    /// Grid of `count` quantiles of the law from 0.001 to 0.999.
    #[arg(long)]
    pub quantile_grid: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub law: LawArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "inverse")]
    pub route: Route,
    #[command(flatten)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EpArgs {
    /// Law of the process at time 1.
    #[arg(long, value_enum)]
    pub base: Kind,
    #[arg(long, value_enum, default_value = "frechet")]
    pub family: Family,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Shape of the base law.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Random time change.
    #[arg(long, value_enum, default_value = "none")]
    pub compound: Compound,
    /// Shape of the geometric-gamma clock; defaults to --beta.
    #[arg(long)]
    pub sub_beta: Option<f64>,
    /// Time of the marginal draws.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Number of marginal draws.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Emit one path on a time grid instead of marginal draws.
    #[arg(long)]
    pub path: bool,
    /// Comma-separated path times.
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "grid",
        allow_hyphen_values = true
    )]
    pub times: Option<Vec<f64>>,
    /// Evenly spaced path times `lo:hi:count`.
    #[arg(long)]
    pub grid: Option<GridSpec>,
    #[command(flatten)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Ar1Args {
    /// Shape of the stationary geometric-gamma marginal.
    #[arg(long)]
    pub beta: f64,
    /// Restart probability, in (0, 1).
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "frechet")]
    pub family: Family,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Fixed starting value; stationary start when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    /// Innovation shape to use instead of p * beta.
    #[arg(long)]
    pub innovation_beta_override: Option<f64>,
    /// Run a stationarity KS check across independent chains.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 100_000)]
    pub chains: usize,
    #[arg(long, default_value_t = 100)]
    pub lag: usize,
    /// Where to write the JSON summary; standard error when omitted.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Chain CSV file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check ids (see `TheoremId`) or `all`.
    #[arg(default_value = "all")]
    pub ids: Vec<String>,
    #[command(flatten)]
    pub seed: SeedArg,
    /// JSON report file; the JSON array follows the table on standard
    /// output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
