use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use qsw_core::{Error, RhoKind};

mod commands;
mod params;

use commands::{Format, Mode};
use params::ParamArgs;

/// Invalid command-line input that never reaches the library.
#[derive(Debug)]
pub struct UsageError(pub String);

/// A check ran to completion and found a disagreement.
#[derive(Debug)]
pub struct Mismatch;

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("theorem path and oracle disagree")
    }
}

impl std::error::Error for Mismatch {}

#[derive(Parser)]
#[command(
    name = "qsw",
    version,
    about = "Quaternionic Serre weights of generic mod p parameters"
)]
struct Cli {
    /// Worker threads for the oracle (defaults to all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The weight set W_D with per-weight certificates
    Wd {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The GL2 Serre weights indexed by v
    Wgl2 {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Jordan-Hölder factors of the reduced cuspidal type of a type I character
    Jh {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Strata of the semisimplification, keyed by v
    Strata {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the theorem path with the brute-force oracle
    Check {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cross-check every generic parameter over ranges of p and f
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        f: Vec<usize>,
        /// Kinds to sweep (defaults to all)
        #[arg(long, value_delimiter = ',')]
        kind: Vec<String>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0,1",
            allow_hyphen_values = true
        )]
        twists: Vec<i64>,
        /// Include per-configuration wall times (not byte-stable)
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<String> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(UsageError("--jobs must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()?;
    }
    match cli.command {
        Command::Wd {
            params,
            mode,
            format,
        } => commands::wd(&params.resolve()?, mode, format),
        Command::Wgl2 { params, format } => commands::wgl2(&params.resolve()?, format),
        Command::Jh { p, f, b, c, format } => commands::jh(p, f, b, c, format),
        Command::Strata { params, format } => commands::strata_cmd(&params.resolve()?, format),
        Command::Check { params, format } => {
            let (text, passed) = commands::check(&params.resolve()?, format)?;
            emit(&text)?;
            commands::fail_if(passed)?;
            Ok(String::new())
        }
        Command::Sweep {
            p,
            f,
            kind,
            twists,
            timing,
            format,
        } => {
            let kinds = if kind.is_empty() {
                RhoKind::ALL.to_vec()
            } else {
                kind.iter()
                    .map(|k| k.parse())
                    .collect::<Result<Vec<RhoKind>, _>>()?
            };
            let (text, passed) = commands::sweep_cmd(&p, &f, &kinds, &twists, timing, format)?;
            emit(&text)?;
            commands::fail_if(passed)?;
            Ok(String::new())
        }
    }
}

fn emit(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Mismatch>().is_some() {
        return 3;
    }
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::MismatchDetected { .. }) => 3,
        Some(e) if e.is_input_error() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).and_then(|text| Ok(emit(&text)?)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
