//! Command-line front end: `table`, `verify` and `eval`.
//!
//! Exit codes: 0 when everything passed, 1 when a verification or a
//! computation failed, 2 for usage errors.

mod eval;
mod format;
mod table;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub use verify::{run_suite, CheckRecord, Suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest accepted `--brute-cap`.
pub const MAX_BRUTE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    Double,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "icekernel", version, about = "Six-vertex partition functions and refined ASM counts")]
struct Cli {
    /// Seed for every random configuration.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Replaces the default threshold of every numeric identity check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Largest order enumerated by brute force (at most 8).
    #[arg(long, global = true, default_value_t = 6)]
    brute_cap: usize,
    /// Coefficient arithmetic for the normalized recurrences.
    #[arg(long, global = true, value_enum, default_value_t = Regime::Double)]
    regime: Regime,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact count tables and generating polynomials.
    ///
    /// Examples: `table A 1..5`, `table H_refined 4`, `table genpoly B 2`.
    Table {
        #[arg(value_enum)]
        kind: table::TableKind,
        /// Order range such as `4`, `1..5` or `1..=5`; `genpoly` takes the
        /// polynomial letter (A, H or B) first.
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest order exercised by the suite's order-dependent checks.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Evaluate Z, V, f or g at one spectral configuration.
    Eval {
        #[arg(value_enum)]
        what: eval::EvalTarget,
        /// Order; inferred from `--u` when that is given.
        #[arg(long)]
        n: Option<usize>,
        /// Crossing parameter in radians.
        #[arg(long, default_value_t = crate::icemodel::ETA_COMBINATORIAL)]
        eta: f64,
        /// Comma-separated spectral parameters u_0,...,u_{2n-1} in radians;
        /// drawn from the seed when absent.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Option<Vec<f64>>,
        /// Use the brute-force state sum instead of the determinant (Z and f only).
        #[arg(long)]
        bruteforce: bool,
    },
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub brute_cap: usize,
    pub regime: Regime,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            tolerance: None,
            brute_cap: 6,
            regime: Regime::Double,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
            }
        }
        if self.brute_cap > MAX_BRUTE_CAP {
            return Err(CliError::Usage(format!(
                "--brute-cap must be at most {MAX_BRUTE_CAP}, got {}",
                self.brute_cap
            )));
        }
        Ok(())
    }

    /// The check threshold: `--tol` when given, else the check's own.
    pub fn threshold(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

#[derive(Debug, PartialEq)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OrderTooLarge { .. }
            | Error::InvalidConfig(_)
            | Error::SingularConfiguration(_)
            | Error::PoleInEntries(_)
            | Error::OddOrderForHalfTurn(_)
            | Error::DegenerateOrder(_)
            | Error::OutOfRange(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// What a subcommand produced: the rendered report and whether it passed.
pub(crate) struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn limit_threads() {
    if let Some(n) = std::env::var("ICEKERNEL_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // a pool configured earlier in the process wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig {
        seed: cli.seed,
        tolerance: cli.tol,
        brute_cap: cli.brute_cap,
        regime: cli.regime,
        format: cli.format,
    };
    cfg.validate()?;
    match cli.command {
        Command::Table { kind, args } => table::cmd_table(kind, &args, &cfg),
        Command::Verify { suite, n } => verify::cmd_verify(suite, n, &cfg),
        Command::Eval {
            what,
            n,
            eta,
            u,
            bruteforce,
        } => eval::cmd_eval(what, n, eta, u, bruteforce, &cfg),
    }
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    limit_threads();
    let out_path = cli.out.clone();
    match dispatch(cli) {
        Ok(outcome) => {
            let written = match &out_path {
                Some(p) => fs::write(p, &outcome.text),
                None => stdout.write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return EXIT_FAILED;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failed(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILED
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}
