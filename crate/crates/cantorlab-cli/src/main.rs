//! `cantorlab`: reports on single parameters and deterministic sweeps.
//!
//! Exit codes: 0 success, 2 usage or domain errors, 3 resource guards,
//! 4 internal invariant violations. λ crosses the boundary only as exact
//! `p/q` text; the one decimal entry point (`spectrum --approx`) is
//! labeled non-exact in its output.

mod report;
mod scan;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cantorlab_core::{ErrorKind, DEFAULT_DEPTH_GUARD};

/// A command failure carrying its process exit code.
pub(crate) struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: 4, message: message.into() }
    }
}

impl From<cantorlab_core::Error> for Failure {
    fn from(err: cantorlab_core::Error) -> Self {
        let code = match err.kind() {
            ErrorKind::Domain => 2,
            ErrorKind::Resource | ErrorKind::Exhausted => 3,
            ErrorKind::Numeric => 4,
        };
        Failure { code, message: err.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            // The consumer closed the stream mid-report. Output is flushed
            // row by row, so whatever landed is valid; leave quietly.
            Failure { code: 0, message: String::new() }
        } else {
            Failure { code: 4, message: format!("i/o failure: {err}") }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub(crate) enum Format {
    /// Human-readable report
    Text,
    /// Comma-separated rows, LF line endings
    Csv,
    /// One JSON object per line
    Json,
}

#[derive(Parser)]
#[command(name = "cantorlab", version, about = "Structural invariants of the sets generated by x/3, (x+lambda)/3, (x+2)/3", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact spectrum l(lambda) with a shortest witness pair
    Spectrum(SpectrumArgs),
    /// Total self-similarity: exact verdict plus depth-checked evidence
    Tss(TssArgs),
    /// Growth exponents s and t with transfer-matrix cross-checks
    Dims(DimsArgs),
    /// Coding multiplicity of a point of the set
    Codings(CodingsArgs),
    /// Classify and verify an affine self-map candidate mu*x + b
    Affine(AffineArgs),
    /// Sweep every reduced p/q up to a denominator bound
    Scan(ScanArgs),
    /// Dump the level and hole interval lists at one depth
    Holes(HolesArgs),
}

#[derive(Args)]
pub(crate) struct SpectrumArgs {
    /// Parameter as exact p/q text
    #[arg(long, required_unless_present = "approx", conflicts_with = "approx")]
    pub(crate) lambda: Option<String>,
    /// Decimal parameter; runs the brute-force path and reports an upper
    /// bound only
    #[arg(long)]
    pub(crate) approx: Option<String>,
    /// Also run the level-set scan to this depth and cross-check
    #[arg(long)]
    pub(crate) brute: Option<u32>,
    /// Also report the closed-form value when p = 3^a or 2*3^a
    #[arg(long)]
    pub(crate) closed_form: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub(crate) format: Format,
}

#[derive(Args)]
pub(crate) struct TssArgs {
    /// Parameter as exact p/q text
    #[arg(long)]
    pub(crate) lambda: String,
    /// Verify hole/level disjointness through this depth
    #[arg(long, default_value_t = 4)]
    pub(crate) depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub(crate) format: Format,
}

#[derive(Args)]
pub(crate) struct DimsArgs {
    /// Family index: lambda = 1 - 3^-m
    #[arg(long)]
    pub(crate) m: u32,
    /// Bisection tolerance on u = 3^x
    #[arg(long, default_value_t = 1e-15)]
    pub(crate) tol: f64,
    /// Cross-check s and t against gram-graph spectral radii
    #[arg(long)]
    pub(crate) check: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub(crate) format: Format,
}

#[derive(Args)]
pub(crate) struct CodingsArgs {
    /// Point of the set, exact p/q text
    #[arg(long)]
    pub(crate) x: String,
    /// Parameter as exact p/q text
    #[arg(long)]
    pub(crate) lambda: String,
    /// Also list distinct word pairs with a common image, up to this length
    #[arg(long)]
    pub(crate) pairs: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub(crate) format: Format,
}

#[derive(Args)]
pub(crate) struct AffineArgs {
    /// Slope, exact p/q text; may be negative
    #[arg(long, allow_hyphen_values = true)]
    pub(crate) mu: String,
    /// Offset, exact p/q text; may be negative
    #[arg(long, allow_hyphen_values = true)]
    pub(crate) b: String,
    /// Parameter as exact p/q text
    #[arg(long)]
    pub(crate) lambda: String,
    /// Refutation sweep depth
    #[arg(long, default_value_t = 8)]
    pub(crate) depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub(crate) format: Format,
}

#[derive(Args)]
pub(crate) struct ScanArgs {
    /// Largest denominator to include
    #[arg(long)]
    pub(crate) max_den: u64,
    /// Worker threads; 0 picks the available parallelism
    #[arg(long, default_value_t = 0)]
    pub(crate) workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub(crate) format: Format,
    /// Write rows here instead of standard output
    #[arg(long)]
    pub(crate) output: Option<PathBuf>,
}

#[derive(Args)]
pub(crate) struct HolesArgs {
    /// Parameter as exact p/q text
    #[arg(long)]
    pub(crate) lambda: String,
    /// Level index n
    #[arg(long, default_value_t = 3)]
    pub(crate) depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub(crate) format: Format,
    /// Write rows here instead of standard output
    #[arg(long)]
    pub(crate) output: Option<PathBuf>,
}

pub(crate) fn open_output(
    path: &Option<PathBuf>,
) -> Result<Box<dyn std::io::Write>, Failure> {
    Ok(match path {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|e| {
                Failure::usage(format!("cannot open {} for writing: {e}", p.display()))
            })?;
            Box::new(std::io::BufWriter::new(file))
        }
        None => Box::new(std::io::stdout()),
    })
}

/// The depth cap every bounded computation respects. The environment
/// variable raises it for deeper (slower) sweeps.
fn depth_guard() -> Result<u32, Failure> {
    match std::env::var("CANTORLAB_DEPTH_GUARD") {
        Ok(text) => match text.trim().parse::<u32>() {
            Ok(g) if g >= 1 => Ok(g),
            _ => Err(Failure::usage(format!(
                "CANTORLAB_DEPTH_GUARD must be a positive integer, got {text:?}"
            ))),
        },
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_DEPTH_GUARD),
        Err(e) => Err(Failure::usage(format!("CANTORLAB_DEPTH_GUARD unreadable: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guard = match depth_guard() {
        Ok(g) => g,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let outcome = match cli.command {
        Command::Spectrum(args) => report::spectrum(args, guard),
        Command::Tss(args) => report::tss(args, guard),
        Command::Dims(args) => report::dims(args),
        Command::Codings(args) => report::codings(args, guard),
        Command::Affine(args) => report::affine(args, guard),
        Command::Scan(args) => scan::run(args),
        Command::Holes(args) => report::holes(args, guard),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
