//! Command-line interface definition.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lds",
    version,
    about = "Exact low-discrepancy sequences from interval exchange transformations",
    propagate_version = true
)]
pub struct Opts {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the first N points of a sequence
    Gen(GenArgs),
    /// Star and extreme discrepancy of a sequence prefix
    Disc(DiscArgs),
    /// Star-discrepancy curve over a grid of prefix lengths
    Curve(CurveArgs),
    /// Continued fraction and moving-average report of an exact value
    Cf(CfArgs),
    /// Run exact verification suites (exit 1 on any failure)
    Verify(VerifyArgs),
    /// Comparison curves: circle rotation vs two 3-interval exchanges
    Figure2(Figure2Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StreamKindArg {
    /// Fractional-part orbit {n·z}
    Kronecker,
    /// Refinement-ordered points for (L, S)
    Ls,
    /// Index formula {⌊i/S⌋·β + (i mod S)·β²}
    Jls,
    /// Orbit of the (L, S) exchange from its canonical start point
    Fls,
    /// Orbit of the 3-interval exchange with reversing image order
    N3,
    /// Same, with lengths solved from a rotation number and lambda_c
    N3Gamma,
}

/// Sequence selection shared by `gen`, `disc`, and `curve`.
#[derive(Debug, Clone, Args)]
pub struct StreamArgs {
    /// Sequence kind
    #[arg(long, value_enum)]
    pub kind: StreamKindArg,

    /// Exact value z for --kind kronecker (e.g. `golden`, `1/3`,
    /// `-1/2+1/2*sqrt(5)`, `beta(2,2)`)
    #[arg(long)]
    pub z: Option<String>,

    /// Long-interval count L
    #[arg(long = "L")]
    pub l: Option<u32>,

    /// Short-interval count S
    #[arg(long = "S")]
    pub s: Option<u32>,

    /// Start-point parameter r for --kind fls
    #[arg(long, default_value_t = 0)]
    pub r: i64,

    /// Length of the first interval (--kind n3)
    #[arg(long)]
    pub lambda_a: Option<String>,

    /// Length of the second interval (--kind n3)
    #[arg(long)]
    pub lambda_b: Option<String>,

    /// Length of the third interval (--kind n3)
    #[arg(long)]
    pub lambda_c: Option<String>,

    /// Rotation number for --kind n3-gamma
    #[arg(long)]
    pub gamma: Option<String>,

    /// lambda_c for --kind n3-gamma
    #[arg(long)]
    pub lc: Option<String>,

    /// Orbit start point for the exchange kinds
    #[arg(long, default_value = "0")]
    pub x0: String,

    /// Restrict the sequence to [RESTRICT_LEFT, RESTRICT_RIGHT)
    #[arg(long, requires = "restrict_right")]
    pub restrict_left: Option<String>,

    #[arg(long, requires = "restrict_left")]
    pub restrict_right: Option<String>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub stream: StreamArgs,

    /// Number of points to emit
    #[arg(long, short)]
    pub n: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Decimal digits in rendered values
    #[arg(long, default_value_t = 12)]
    pub precision: usize,

    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiscArgs {
    #[command(flatten)]
    pub stream: StreamArgs,

    /// Prefix length
    #[arg(long, short)]
    pub n: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    #[arg(long, default_value_t = 12)]
    pub precision: usize,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub stream: StreamArgs,

    /// Largest prefix length
    #[arg(long, short)]
    pub n: usize,

    /// Grid spacing of prefix lengths
    #[arg(long, default_value_t = 10)]
    pub step: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    #[arg(long, default_value_t = 12)]
    pub precision: usize,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CfArgs {
    /// Exact value to expand
    #[arg(long)]
    pub z: String,

    /// Partial quotients computed before giving up on a period
    #[arg(long, default_value_t = 64)]
    pub max_terms: usize,

    /// Moving averages reported for m = 1..=M
    #[arg(long = "m", default_value_t = 32)]
    pub average_terms: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Discrepancy is invariant under affine scaling
    Scaling,
    /// Restriction to a subinterval: identity, composition, orbit recovery
    Restriction,
    /// 3-interval exchange vs the first-return map of the ambient rotation
    N3,
    /// Translation vector and pair enumeration of the (2,2) exchange
    Example35,
    /// Orbit membership and super-cycle schedule of the (L,S) exchange
    OrbitJls,
    /// Denominator growth of beta-power coordinates
    LsNoncoincidence,
    /// Everything above with default parameters
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,

    #[arg(long = "L", default_value_t = 2)]
    pub l: u32,

    #[arg(long = "S", default_value_t = 2)]
    pub s: u32,

    /// Start-point parameter for orbit-jls
    #[arg(long, default_value_t = 0)]
    pub r: i64,

    /// Pair window (example35) or orbit window (orbit-jls; defaults to
    /// 2·(L²+L+S+1))
    #[arg(long)]
    pub window: Option<u64>,

    /// Largest beta-power exponent for ls-noncoincidence
    #[arg(long, default_value_t = 8)]
    pub lmax: u32,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Figure2Args {
    /// Largest prefix length
    #[arg(long, short, default_value_t = 2000)]
    pub n: usize,

    /// Grid spacing
    #[arg(long, default_value_t = 10)]
    pub step: usize,

    /// Rotation number (exact literal)
    #[arg(long, default_value = "golden")]
    pub gamma: String,

    /// Requested lambda_c of the first exchange (default gamma/2)
    #[arg(long)]
    pub lc_a: Option<String>,

    /// Requested lambda_c of the second exchange (default gamma/4)
    #[arg(long)]
    pub lc_b: Option<String>,

    #[arg(long, default_value_t = 12)]
    pub precision: usize,

    #[arg(long)]
    pub out: Option<PathBuf>,
}
