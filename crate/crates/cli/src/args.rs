use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "robinv", version, about = "Rigorous checks of Robin, Lagarias and Kaneko-Lagarias inequalities")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Starting working precision in bits.
    #[arg(long, global = true, env = "ROBINV_PRECISION_START", default_value_t = 64)]
    pub precision_start: u32,
    /// Maximum working precision in bits.
    #[arg(long, global = true, env = "ROBINV_PRECISION_MAX", default_value_t = 4096)]
    pub precision_max: u32,
    /// Precision growth factor per escalation, as `N` or `N/D`.
    #[arg(long, global = true, env = "ROBINV_PRECISION_GROWTH", default_value = "2")]
    pub precision_growth: String,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true, env = "ROBINV_WORKERS")]
    pub workers: Option<usize>,
    /// Sieve segment length.
    #[arg(long, global = true, env = "ROBINV_SEGMENT_SIZE", default_value_t = 1 << 16)]
    pub segment_size: u64,
    /// Write reports here instead of stdout.
    #[arg(long, global = true, env = "ROBINV_OUTPUT")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, env = "ROBINV_FORMAT", value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Resume token file for long scans; created when missing.
    #[arg(long, global = true, env = "ROBINV_RESUME", value_name = "TOKENFILE")]
    pub resume: Option<PathBuf>,
    /// Failures that do not affect the exit status: numbers, ranges `A..B` or report ids,
    /// comma separated.
    #[arg(long, global = true, env = "ROBINV_EXPECT_FAIL", value_delimiter = ',')]
    pub expect_fail: Vec<String>,
    /// Stop a resumable scan after this many segments.
    #[arg(long, global = true, hide = true)]
    pub halt_after_segments: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    JsonLines,
    Csv,
    Human,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prime factorization of N.
    Factor { n: u64 },
    /// Sum of divisors of N.
    Sigma { n: u64 },
    /// Euler's totient of N.
    Phi { n: u64 },
    #[command(subcommand)]
    Robin(RobinCmd),
    #[command(subcommand)]
    Bounds(BoundsCmd),
    #[command(subcommand)]
    Lagarias(LagariasCmd),
    #[command(subcommand)]
    Sa(SaCmd),
}

#[derive(Debug, Subcommand)]
pub enum RobinCmd {
    /// Robin's inequality at N.
    Check { n: u64 },
    /// Every violator in [LO, HI].
    Scan { lo: u64, hi: u64 },
    /// No violator above 5040 coprime to p_J up to LIMIT.
    Family {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        limit: u64,
    },
    /// Numeric checkpoints (all of them unless --id is given).
    Checkpoints {
        #[arg(long)]
        id: Option<String>,
        #[arg(long, default_value_t = 13042)]
        eq7_k: u64,
        #[arg(long, default_value_t = 1_000_000)]
        theta_hi: u64,
        #[arg(long, default_value_t = 100)]
        primorial_digits: u32,
        #[arg(long, default_value_t = 100_001)]
        even_odd_hi: u64,
        #[arg(long, default_value_t = 13042)]
        sigma_phi_k_max: u64,
    },
    /// Robin for 2^K n with odd n above b(K).
    TwoK {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Fraction of violators up to LIMIT.
    Density {
        #[arg(long)]
        limit: u64,
    },
    /// Violators up to LIMIT by 2-adic valuation.
    Classify {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// Bound quantities for p_J-free prime products over a range of k.
    Table {
        #[arg(long)]
        j: u32,
        #[arg(long, value_name = "A..B")]
        k_range: String,
    },
    /// log b(K).
    B {
        #[arg(long)]
        k: u64,
    },
    /// log(2^K b~(K)).
    Btilde {
        #[arg(long)]
        k: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Lagarias,
    Kaneko,
}

#[derive(Debug, Subcommand)]
pub enum LagariasCmd {
    /// Lagarias' or the Kaneko-Lagarias inequality at N.
    Check {
        n: u64,
        #[arg(long, value_enum, default_value_t = Variant::Lagarias)]
        variant: Variant,
    },
    /// Bound lemmas on H(x) over a grid.
    Lemmas {
        #[arg(long)]
        id: Option<String>,
        /// Grid step as 1/D; give D.
        #[arg(long, default_value_t = 8)]
        grid: u64,
        /// End of the dense grid.
        #[arg(long, default_value_t = 1000)]
        max: u64,
        /// End of the integer points.
        #[arg(long, default_value_t = 10_000)]
        int_max: u64,
    },
    /// exp(H_n) log(H_n) / n is increasing up to LIMIT.
    Monotone {
        #[arg(long)]
        limit: u64,
    },
    /// The two facts behind Robin implying Kaneko-Lagarias, up to LIMIT.
    ImpliesKl {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SaCmd {
    /// Superabundant numbers, either the first COUNT or all up to LIMIT.
    List {
        #[arg(long, conflicts_with = "limit", required_unless_present = "limit")]
        count: Option<usize>,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, default_value_t = robinv_core::superabundant::DEFAULT_FRONTIER)]
        frontier: usize,
    },
    /// Kaneko-Lagarias on the first COUNT superabundant numbers above 60.
    VerifyKl {
        #[arg(long)]
        count: usize,
    },
    /// The record and monotonicity facts for every non-superabundant m up to LIMIT.
    VerifyReduction {
        #[arg(long)]
        limit: u64,
    },
}
