mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit codes: 0 success, 1 usage error, 2 data or parse error,
/// 3 verification failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Verification(m) => m,
        }
    }
}

impl From<oligoforge::Error> for CliError {
    fn from(e: oligoforge::Error) -> Self {
        use oligoforge::Error as E;
        match e {
            E::InvalidArgument(_) | E::InvalidEnergy(_) | E::InvalidModel(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "oligoforge", version, about = "Design and screen DNA codewords that avoid secondary structure")]
pub struct Cli {
    /// Flat key=value file with defaults for any long flag; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Process batches on a single thread
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum free energy table and structure for each input sequence
    Fold(FoldArgs),
    /// Filter sequences by shift matches, GC-content and folding energy
    Screen(ScreenArgs),
    /// Shift-constrained counts from the recurrence (and optional oracle)
    Enumerate(EnumerateArgs),
    /// Counts from the generating function, or a growth-rate report
    Gf(GfArgs),
    /// Exhaustive count of words satisfying a predicate
    Count(CountArgs),
    /// Build a DNA code from a cyclic simplex code
    Construct(ConstructArgs),
    /// Recompute and check the properties of a code file
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct EnergyArgs {
    /// A-T pairing energy [default: -1]
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_at: Option<i64>,
    /// G-C pairing energy [default: -2]
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_gc: Option<i64>,
}

#[derive(Debug, Args)]
pub struct FoldArgs {
    /// Sequence file, one sequence per line
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// text, csv or json [default: text]
    #[arg(long)]
    pub format: Option<String>,
    /// Energy at or below which a sequence counts as folded [default: -2]
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<i64>,
    #[command(flatten)]
    pub energy: EnergyArgs,
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Accepted sequences [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Rejection log [default: stderr]
    #[arg(long)]
    pub rejects: Option<PathBuf>,
    /// Shift depth for --max-mu [default: all shifts]
    #[arg(short = 's')]
    pub s: Option<usize>,
    /// Reject if any mu_i, 1 <= i <= s, exceeds this
    #[arg(long)]
    pub max_mu: Option<usize>,
    /// Require this exact GC-content
    #[arg(short = 'w')]
    pub w: Option<usize>,
    #[arg(long)]
    pub gc_min: Option<usize>,
    #[arg(long)]
    pub gc_max: Option<usize>,
    /// Reject if the minimum free energy is at or below this
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<i64>,
    /// Reject if the weighted shift-sum energy is at or below this (e.g. -7/2)
    #[arg(long, allow_hyphen_values = true)]
    pub linear_threshold: Option<String>,
    /// Correction term of the shift-sum model [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    /// Non-increasing shift weights [default: 1,1/2,1/4,1/8]
    #[arg(long)]
    pub gammas: Option<String>,
    #[command(flatten)]
    pub energy: EnergyArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Shift depth [default: 2]
    #[arg(short = 's')]
    pub s: Option<usize>,
    /// Largest length [default: 10]
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// Add exhaustive counts and an equality column
    #[arg(long)]
    pub oracle: bool,
    /// Counts by number of adjacent complementary pairs for length n
    #[arg(long, conflicts_with = "gc")]
    pub mu1: bool,
    /// Counts of mu_1 = 0 words by length and GC-content
    #[arg(long)]
    pub gc: bool,
    /// Restrict --gc rows to one GC-content
    #[arg(short = 'w')]
    pub w: Option<usize>,
    /// tsv or json [default: tsv]
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GfArgs {
    /// Shift depth [default: 2]
    #[arg(short = 's')]
    pub s: Option<usize>,
    /// Largest length [default: 10]
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// Report the dominant root and growth ratio instead of the table
    #[arg(long)]
    pub growth: bool,
    /// Bisection tolerance [default: 1e-9]
    #[arg(long)]
    pub tol: Option<f64>,
    /// tsv or json [default: tsv]
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Length [default: 8]
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// shift, mu1, gc, gc-mu1 or boundary [default: shift]
    #[arg(long)]
    pub predicate: Option<String>,
    /// Shift depth for `shift` [default: 1]
    #[arg(short = 's')]
    pub s: Option<usize>,
    /// Match count for `mu1` [default: 0]
    #[arg(short = 'm')]
    pub m: Option<usize>,
    /// GC-content for `gc` and `gc-mu1` [default: 0]
    #[arg(short = 'w')]
    pub w: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Simplex dimension; codewords have length 2^m - 1 [default: 3]
    #[arg(short = 'm')]
    pub m: Option<usize>,
    /// Generating codeword as a bit string [default: built-in per m]
    #[arg(long)]
    pub generator: Option<String>,
    /// Code file; writes <output>.json and <output>.report.txt alongside [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Folding threshold for the report [default: -2]
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<i64>,
    #[command(flatten)]
    pub energy: EnergyArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Code file, one codeword per line
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Check against the bounds of the dimension-m simplex construction
    #[arg(short = 'm')]
    pub m: Option<usize>,
    /// Largest allowed mu_i over all nonzero shifts
    #[arg(long)]
    pub max_mu: Option<usize>,
    /// Required constant GC-content
    #[arg(short = 'w')]
    pub w: Option<usize>,
    #[arg(long)]
    pub min_distance: Option<usize>,
    /// Folding threshold for the report [default: -2]
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<i64>,
    /// text or json [default: text]
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub energy: EnergyArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
