//! Library half of the `lds` command line front end: sequence emission,
//! exact discrepancy reports, discrepancy curves, continued-fraction
//! reports, verification suites, and the rotation-vs-exchange comparison
//! table.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

pub mod commands;
pub mod figure2;
pub mod literal;
pub mod opts;
pub mod verify;

use opts::{Command, Opts, OutputFormat};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Exit-code contract: 0 success, 1 verification failure (or runtime
    /// error), 2 usage error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// Parameter-level failures from the core map to usage errors.
    pub fn usage_from(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<lds_core::SeqError> for CliError {
    fn from(e: lds_core::SeqError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<lds_core::DiscError> for CliError {
    fn from(e: lds_core::DiscError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Buffered writer to `--out` or stdout.
pub fn output_writer(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn run_verify(args: &opts::VerifyArgs) -> Result<(), CliError> {
    let reports = verify::run_suites(args);
    let passed = reports.iter().all(|r| r.passed);
    let first_failure = reports
        .iter()
        .filter_map(|r| r.first_failure.as_ref().map(|c| format!("{}/{}", r.suite, c)))
        .next();
    let mut out = output_writer(&args.out)?;
    match args.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "passed": passed,
                "first_failure": first_failure,
                "suites": reports,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "suite,check,pass,detail")?;
            for r in &reports {
                for c in &r.checks {
                    writeln!(out, "{},{},{},\"{}\"", r.suite, c.name, c.pass, c.detail.replace('"', "'"))?;
                }
            }
        }
    }
    out.flush()?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification(
            first_failure.unwrap_or_else(|| "unknown check".into()),
        ))
    }
}

pub fn run(opts: Opts) -> Result<(), CliError> {
    match &opts.command {
        Command::Gen(args) => commands::run_gen(args),
        Command::Disc(args) => commands::run_disc(args),
        Command::Curve(args) => commands::run_curve(args),
        Command::Cf(args) => commands::run_cf(args),
        Command::Verify(args) => run_verify(args),
        Command::Figure2(args) => figure2::run_figure2(args),
    }
}
