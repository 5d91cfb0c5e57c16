//! Command-line front end: parses flags and config files, dispatches to the
//! builders, verifiers and spectrum engines of `hardy-spectra`, and writes CSV
//! and SVG artifacts.
//!
//! Exit codes: 0 success, 1 numerical failure or negative verdict, 2 usage
//! error. All inputs are validated before any file is written.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod expr;
mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use args::COMMANDS;
pub use expr::parse_expression;
pub use svg::{render_svg, svg_document, SvgStyle};

pub const THREADS_ENV: &str = "HARDY_SPECTRA_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hardy_spectra::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    /// The computation succeeded but the check it performs did not pass.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use hardy_spectra::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Parse { .. } | E::MalformedSymbol(_) | E::InvalidArgument(_) | E::Configuration(_)) => 2,
            CliError::Core(_) | CliError::Io { .. } | CliError::Failed(_) => 1,
        }
    }
}

/// Runs the command line `argv` (program name first) against stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let result = args::merge_config(argv).and_then(|argv| {
        let cli = match args::Cli::try_parse_from(argv) {
            Ok(cli) => cli,
            Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
                let _ = write!(out, "{e}");
                return Ok(None);
            }
            Err(e) => return Err(CliError::Usage(e.to_string())),
        };
        configure_threads()?;
        commands::dispatch(cli.command).map(Some)
    });
    match result {
        Ok(Some(summary)) => {
            let _ = writeln!(out, "{summary}");
            0
        }
        Ok(None) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().trim_end());
            e.exit_code()
        }
    }
}

/// Applies `HARDY_SPECTRA_THREADS` (0 or unset = automatic) to the worker
/// pools. The first successful call fixes the pool for the process.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a nonnegative integer, got `{raw}`")))?;
    if n > 0 {
        // an already-initialised global pool keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        faer::set_global_parallelism(if n == 1 { faer::Par::Seq } else { faer::Par::rayon(n) });
    }
    Ok(())
}
