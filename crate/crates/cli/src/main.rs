//! `rseq`: batch checks on recurrence sequences.
//!
//! Every subcommand computes a verdict and prints one JSON report (or its
//! plain-text rendering with `--format text`). Exit status 0 means a verdict
//! was computed, whatever it is; 1 means an input or runtime error; 2 is a
//! usage error.

mod commands;
mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{positive_f64, positive_u64, ShiftRange, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(
    name = "rseq",
    version,
    about = "Window-bounded checks for recurrence sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Syndetic, thick, piecewise-syndetic and density verdicts for a sequence file.
    Classify(ClassifyArgs),
    /// R-sequence test against `cyclic:<=M` or a single system spec.
    Recurrence(RecurrenceArgs),
    /// Permutation polynomials over prime fields.
    #[command(subcommand)]
    Permpoly(PermpolyCommand),
    /// Build the IP-block sequence and verify it.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Transitivity of a product of two finite cyclic systems.
    Product(ProductArgs),
    /// Cross-check the three cyclic recurrence predicates.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Sequence file (`-` for stdin).
    path: PathBuf,
    /// Re-observe the sequence on `[0, H]`.
    #[arg(long, value_parser = positive_u64)]
    horizon: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Gap bound for the syndetic and piecewise-syndetic checks.
    #[arg(long, default_value_t = 10, value_parser = positive_u64)]
    gap: u64,
    /// Run length for the thick check.
    #[arg(long, default_value_t = 10, value_parser = positive_u64)]
    run: u64,
    /// Interval length for the piecewise-syndetic certificate.
    #[arg(long, default_value_t = 100, value_parser = positive_u64)]
    block: u64,
    /// Interval length for the density estimate [default: min(1000, horizon)].
    #[arg(long, value_parser = positive_u64)]
    density_length: Option<u64>,
}

#[derive(Args, Debug)]
struct RecurrenceArgs {
    #[command(flatten)]
    input: InputArgs,
    /// `cyclic:<=M`, or a system: `cyclic:m`, `rot:golden`, `odo:2^5`, `skew:0.3`, `prod(a,b)`.
    family: String,
    /// Cover resolution for metric systems.
    #[arg(long, default_value_t = 0.05, value_parser = positive_f64)]
    eps: f64,
    /// Largest period for `cyclic` without an explicit bound.
    #[arg(long, value_parser = positive_u64)]
    max_period: Option<u64>,
    /// Also test every shift `a + n` for `n` in `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    shifts: Option<ShiftRange>,
    /// Spacing of the grid of starting points for metric systems.
    #[arg(long, default_value_t = 0.1, value_parser = positive_f64)]
    start_resolution: f64,
    /// Run the single-return test instead of the dense-orbit test.
    #[arg(long)]
    birkhoff: bool,
}

#[derive(Subcommand, Debug)]
enum PermpolyCommand {
    /// Hermite's criterion and exhaustive evaluation over F_p.
    Check {
        /// Integer polynomial, e.g. `x^3 + 2x + 1`.
        poly: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least prime p ≡ 1 (mod degree) above the leading coefficient on which
    /// the polynomial is not onto.
    FindPrime {
        poly: String,
        #[arg(long, default_value_t = 10_000, value_parser = positive_u64)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Union of shifted finite IP blocks, verified at window scale.
    Example(ExampleArgs),
}

#[derive(Args, Debug)]
struct ExampleArgs {
    #[arg(long, default_value_t = rseq_core::constructions::DEFAULT_BLOCKS)]
    blocks: usize,
    /// JSON schedule `{"t": [...], "k": [...], "base": n}` or `{"t": [...], "generators": [[...]]}`.
    #[arg(long, conflicts_with = "blocks")]
    schedule: Option<PathBuf>,
    /// Write the sequence file here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Check every gap bound up to this value.
    #[arg(long, default_value_t = 10, value_parser = positive_u64)]
    gap: u64,
    #[arg(long, default_value_t = 100, value_parser = positive_u64)]
    block: u64,
    #[arg(long, default_value_t = 20, value_parser = positive_u64)]
    max_period: u64,
    #[arg(long, allow_hyphen_values = true, default_value = "-10..10")]
    shifts: ShiftRange,
}

#[derive(Args, Debug)]
struct ProductArgs {
    /// Left factor, e.g. `cyclic:2` or `odo:2^3`.
    left: String,
    right: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    /// Sequence file; omit together with `--random` for a seeded sweep.
    #[arg(required_unless_present = "random")]
    path: Option<PathBuf>,
    #[arg(long, value_parser = positive_u64)]
    horizon: Option<u64>,
    #[arg(long, default_value_t = 12, value_parser = positive_u64)]
    max_period: u64,
    #[arg(long, allow_hyphen_values = true, default_value = "-12..12")]
    shifts: ShiftRange,
    /// Number of seeded random windows to sweep.
    #[arg(long, conflicts_with = "path")]
    random: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<commands::UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
