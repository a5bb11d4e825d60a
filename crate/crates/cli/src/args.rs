//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "prodnorm", version, about = "Products of correlated normals: densities, moments, samplers and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Raw little-endian f64 values behind a u64 count (`sample` only).
    Binary,
}

#[derive(Debug, Clone, Args)]
pub struct DistArgs {
    /// Number of averaged products.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Correlation of X and Y, in (−1, 1).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub rho: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma_x: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma_y: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (written atomically); stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct PointsArgs {
    /// Evaluation points, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    /// Evenly spaced points `start:stop:count` (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Recursion,
    Hypergeometric,
    Cgf,
    Kan,
    Rho0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rep {
    R1Bilinear,
    R2ChisqNormal,
    R4GammaDifference,
    R5UniformLogs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Density on a set of points.
    Pdf {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        points: PointsArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distribution and survival functions.
    Cdf {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        points: PointsArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quantiles.
    Quantile {
        #[command(flatten)]
        dist: DistArgs,
        /// Probabilities, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        q: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Raw and central moments and cumulants up to order k.
    Moments {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Route::Recursion)]
        route: Route,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mode with its bounds.
    Mode {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Median.
    Median {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Seeded i.i.d. draws.
    Sample {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Rep::R4GammaDifference)]
        rep: Rep,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stein-identity residuals over the built-in test-function suite.
    Stein {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, value_enum, default_value_t = Method::Quadrature)]
        method: Method,
        /// Monte-Carlo sample size.
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        /// Evaluate the expectation under this correlation instead (the
        /// operator keeps --rho).
        #[arg(long, allow_negative_numbers = true)]
        law_rho: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Conjectured median bounds over a parameter grid.
    Audit {
        /// TOML grid (see config/audit_grid.toml); the shipped grid if absent.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Six-moment gap of the discretised generalised Rosenblatt variable.
    ChaosSweep {
        #[arg(long, default_value_t = 0.5)]
        phi: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-0.60,-0.55,-0.52,-0.51")]
        gammas: Vec<f64>,
        #[arg(long, default_value_t = 256)]
        grid_m: usize,
        /// Draws per Wasserstein estimate (0 disables it).
        #[arg(long, default_value_t = 100_000)]
        draws: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Median grid n ∈ {1,3,5,7,10} × ρ ∈ {0.1,…,0.9}, s = 1, to 3 significant figures.
    Table1 {
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Pdf { .. } => "pdf",
            Command::Cdf { .. } => "cdf",
            Command::Quantile { .. } => "quantile",
            Command::Moments { .. } => "moments",
            Command::Mode { .. } => "mode",
            Command::Median { .. } => "median",
            Command::Sample { .. } => "sample",
            Command::Stein { .. } => "stein",
            Command::Audit { .. } => "audit",
            Command::ChaosSweep { .. } => "chaos-sweep",
            Command::Table1 { .. } => "table1",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Pdf { output, .. }
            | Command::Cdf { output, .. }
            | Command::Quantile { output, .. }
            | Command::Moments { output, .. }
            | Command::Mode { output, .. }
            | Command::Median { output, .. }
            | Command::Sample { output, .. }
            | Command::Stein { output, .. }
            | Command::Audit { output, .. }
            | Command::ChaosSweep { output, .. }
            | Command::Table1 { output } => output,
        }
    }
}
