use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use essnorm::SearchBudget;

use crate::analyze::{AnalyzeOptions, VariantChoice};
use crate::verify::VerifyOptions;

#[derive(Debug, Parser)]
#[command(name = "essnorm", version, about = "Essential-norm estimates for C_φ − C_ψ on the polydisc")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate Λ, the essential-norm bounds and the compactness verdict for a symbol pair.
    Analyze(AnalyzeArgs),
    /// Run the randomised metric and estimate suites.
    Verify(VerifyArgs),
    /// Print the δ-sweep of the boundary supremum as CSV.
    Curve(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

impl From<Switch> for bool {
    fn from(s: Switch) -> bool {
        s == Switch::On
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Union,
    Perj,
    Both,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Symbol-pair configuration (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Smallest δ in the schedule is 2^-K.
    #[arg(long = "schedule-min-exp", value_name = "K", default_value_t = 10)]
    pub schedule_min_exp: u32,
    /// Search starts per δ.
    #[arg(long, value_name = "N", default_value_t = 32)]
    pub starts: usize,
    #[arg(long, value_name = "S", default_value_t = SearchBudget::default().seed)]
    pub seed: u64,
    /// Λ below this counts as zero.
    #[arg(long, value_name = "T", default_value_t = essnorm::boundary::DEFAULT_COMPACT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
    /// Sampled operator norm and witness values.
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub oracle: Switch,
    /// Cauchy and radial checks on the polynomial coordinates.
    #[arg(long, value_enum, default_value_t = Switch::Off)]
    pub lemmas: Switch,
    /// Include wall-clock time in the report (makes it non-reproducible).
    #[arg(long, value_enum, default_value_t = Switch::Off)]
    pub timing: Switch,
}

impl AnalyzeArgs {
    pub fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            schedule_min_exp: self.schedule_min_exp,
            budget: SearchBudget::default().with_seed(self.seed).with_starts(self.starts),
            tolerance: self.tolerance,
            variant: match self.variant {
                VariantArg::Union => VariantChoice::Union,
                VariantArg::Perj => VariantChoice::PerCoordinate,
                VariantArg::Both => VariantChoice::Both,
            },
            oracle: self.oracle.into(),
            lemmas: self.lemmas.into(),
            timing: self.timing.into(),
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "S", default_value_t = 1)]
    pub seed: u64,
    /// Number of random polynomials; metric suites draw 100 samples per unit.
    #[arg(long, value_name = "N", default_value_t = 100)]
    pub size: usize,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub metrics: Switch,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub lemmas: Switch,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl VerifyArgs {
    pub fn options(&self) -> VerifyOptions {
        VerifyOptions { seed: self.seed, size: self.size, metrics: self.metrics.into(), lemmas: self.lemmas.into() }
    }
}
