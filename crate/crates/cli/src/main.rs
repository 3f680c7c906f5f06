//! `vbent`: construct, verify and inspect vectorial bent functions.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 precondition failure,
//! 3 verification mismatch.

mod construct;
mod inspect;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vbent::{Error, FieldSpec};

#[derive(Debug, Parser)]
#[command(
    name = "vbent",
    version,
    about = "Vectorial bent and plateaued functions over GF(2^n)"
)]
struct Cli {
    /// Reduction polynomial in hex, replacing the built-in table entry.
    #[arg(long, global = true, value_name = "HEX")]
    field_modulus: Option<String>,

    /// Worker threads for per-component verification.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Add a timestamp to JSON reports.
    #[arg(long, global = true)]
    stamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a family member, verify it, write the table and a JSON report.
    Construct(ConstructArgs),
    /// Classify a BF or VF file.
    Verify { file: PathBuf },
    /// Check or search sets on which all second derivatives vanish.
    Propp(ProppArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Kasami,
    Niho,
    Gold,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: u32,
    /// Niho parameter, `1 < r < n/2` coprime to `n/2`.
    #[arg(long)]
    pub r: Option<u32>,
    /// Number of traces; defaults to the length of `--u`, else `k`.
    #[arg(long)]
    pub tau: Option<u32>,
    /// Number of appended coordinates; random unless given by `--tail`.
    #[arg(long)]
    pub t: Option<u32>,
    /// Polynomial for an appended coordinate (repeatable).
    #[arg(long = "tail", value_name = "POLY")]
    pub tails: Vec<String>,
    /// Polynomial `F`, e.g. "X1*X2+X3"; random from `--seed` when omitted.
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated hex elements `u_1, ..., u_τ`.
    #[arg(long, conflicts_with = "auto_u")]
    pub u: Option<String>,
    /// Use the family's default `U`.
    #[arg(long)]
    pub auto_u: bool,
    /// Output table; the report goes to `<out>.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["u", "search"])))]
pub struct ProppArgs {
    pub file: PathBuf,
    /// Comma-separated hex elements.
    #[arg(long)]
    pub u: Option<String>,
    /// `tau=<int>`: list every set of that size with the property.
    #[arg(long, value_name = "tau=N")]
    pub search: Option<String>,
    /// Print at most this many sets.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Search node budget.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

/// A failed run, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 1,
            Error::Verification(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

/// Global options shared by the subcommands.
pub struct Context {
    pub field_modulus: Option<u32>,
    pub stamp: bool,
}

impl Context {
    pub fn field(&self, n: u32) -> Result<FieldSpec, Failure> {
        let field = match self.field_modulus {
            Some(m) => FieldSpec::with_modulus(n, m),
            None => FieldSpec::standard(n),
        };
        field.map_err(|e| Failure::usage(e.to_string()))
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let field_modulus = match &cli.field_modulus {
        Some(s) => Some(
            u32::from_str_radix(s.trim_start_matches("0x"), 16)
                .map_err(|_| Failure::usage(format!("invalid --field-modulus {s:?}")))?,
        ),
        None => None,
    };
    let ctx = Context {
        field_modulus,
        stamp: cli.stamp,
    };
    match cli.command {
        Command::Construct(args) => construct::run(&ctx, &args),
        Command::Verify { file } => inspect::verify(&ctx, &file),
        Command::Propp(args) => inspect::propp(&ctx, &args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
