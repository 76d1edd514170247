//! `qmc` command line: `complete`, `mask`, `synth` and `bench`.
//!
//! Exit codes: 0 success, 2 bad arguments, 3 I/O failure, 4 invalid solver
//! configuration.

mod complete;
mod tools;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;

pub use complete::{MaskSource, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

/// Environment variable capping the rayon pool size (default 1).
pub const THREADS_ENV: &str = "QMC_THREADS";

#[derive(Parser, Debug)]
#[command(name = "qmc", version, about = "Quaternion low-rank matrix completion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inpaint the missing pixels of a color PNG.
    Complete(CompleteArgs),
    /// Generate a seeded random mask as PNG and QMSK.
    Mask(MaskArgs),
    /// Write a seeded low-rank quaternion matrix as QMAT.
    Synth(SynthArgs),
    /// Time solver iterations over a sweep of matrix sizes.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Default)]
struct CompleteArgs {
    /// qlnm-qqr, irqlnm-qqr or qlnm-qqr-sr.
    #[arg(long, required_unless_present_any = ["config", "replay"])]
    method: Option<String>,
    #[arg(long = "in", value_name = "PNG", required_unless_present = "replay")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "PNG", required_unless_present = "replay")]
    out: Option<PathBuf>,
    /// Metrics JSON (PSNR, SSIM, per-iteration history).
    #[arg(long, value_name = "JSON")]
    metrics: Option<PathBuf>,
    /// Run manifest; defaults to the output path with `.manifest.json`.
    #[arg(long, value_name = "JSON")]
    manifest: Option<PathBuf>,
    /// Mask file, PNG (255 = observed) or QMSK.
    #[arg(long, conflicts_with = "mr")]
    mask: Option<PathBuf>,
    /// Missing ratio of a generated mask.
    #[arg(long)]
    mr: Option<f64>,
    /// Seed of the generated mask.
    #[arg(long)]
    seed: Option<u64>,
    /// TOML file with SolverConfig keys.
    #[arg(long, value_name = "TOML")]
    config: Option<PathBuf>,
    /// Rerun a previous manifest; --out, --metrics and --manifest may redirect outputs.
    #[arg(long, value_name = "JSON")]
    replay: Option<PathBuf>,
    #[arg(long, required_unless_present_any = ["config", "replay"])]
    rank: Option<usize>,
    #[arg(long)]
    mu0: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    mu_max: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    varsigma: Option<f64>,
    #[arg(long)]
    v: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Pure unit quaternion `x,y,z` for the QDCT.
    #[arg(long, value_name = "X,Y,Z")]
    qdct_axis: Option<String>,
}

#[derive(Args, Debug)]
struct MaskArgs {
    /// `N` for a square mask or `ROWSxCOLS`.
    #[arg(long)]
    size: String,
    #[arg(long)]
    mr: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output stem; writes `<stem>.png` and `<stem>.qmsk`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long)]
    rank: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "QMAT")]
    out: PathBuf,
    /// Place the rank-r structure on a low-frequency QDCT block of this density.
    #[arg(long)]
    qdct_density: Option<f64>,
    /// Multiplies every entry.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [128usize, 256, 512])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 16)]
    rank: usize,
    /// Iterations timed per size.
    #[arg(long, default_value_t = 15)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output; stdout when absent.
    #[arg(long, value_name = "CSV")]
    out: Option<PathBuf>,
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    fn config(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: msg.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) | Error::Image(_) | Error::Format(_) | Error::UnsupportedImage(_) => EXIT_IO,
            Error::InvalidConfig(_)
            | Error::InvalidArgument(_)
            | Error::DimensionMismatch(_)
            | Error::NotEquivalentComplex(_) => EXIT_CONFIG,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn init_threads() {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1);
    // a pool built earlier in the same process wins
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    init_threads();
    let result = match cli.command {
        Command::Complete(a) => complete::cmd_complete(a),
        Command::Mask(a) => tools::cmd_mask(a),
        Command::Synth(a) => tools::cmd_synth(a),
        Command::Bench(a) => tools::cmd_bench(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}
