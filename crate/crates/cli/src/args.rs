use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "hardy-spectra", version, about = "Finite sections and essential spectra on H²")]
pub struct Cli {
    /// key=value file supplying flag defaults; flags given on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the N×N section of an expression as CSV.
    #[command(args_override_self = true)]
    BuildOp(BuildOp),
    /// Sample an essential spectrum from Gelfand transforms.
    #[command(args_override_self = true)]
    EssSpectrum(EssSpectrum),
    /// Evaluate the Gelfand transform of an expression at one ideal point.
    #[command(args_override_self = true)]
    GelfandEval(GelfandEval),
    /// Residual of the parabolic composition identity.
    #[command(args_override_self = true)]
    CheckIdentity(CheckIdentity),
    /// Singular value compactness diagnostic.
    #[command(args_override_self = true)]
    CheckCommutator(CheckCommutator),
    /// Convergence of the multiplier series for a composition operator.
    #[command(args_override_self = true)]
    Series(Series),
    /// Finite-section eigenvalues (diagnostic only).
    #[command(args_override_self = true)]
    Eigs(Eigs),
}

pub const COMMANDS: [&str; 7] =
    ["build-op", "ess-spectrum", "gelfand-eval", "check-identity", "check-commutator", "series", "eigs"];

#[derive(Debug, Args)]
pub struct BuildOp {
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8192))]
    pub dim: u64,
    /// Working-dimension factor for products.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub padding: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumKind {
    /// `T_a C_φ`.
    Product,
    /// `T_a + C_φ`.
    Sum,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Log-spaced finite t values in addition to t = 0.
    #[arg(long, default_value_t = 200)]
    pub t_points: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub t_min: f64,
    #[arg(long, default_value_t = 40.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 101)]
    pub s_points: usize,
    #[arg(long, default_value_t = 64)]
    pub lambda_points: usize,
    /// QC surrogates kept per base point.
    #[arg(long, default_value_t = 64)]
    pub cluster_points: usize,
    /// Largest gap between images of neighbouring t values, or `none`.
    #[arg(long, default_value = "5e-4")]
    pub resolution: String,
}

#[derive(Debug, Args)]
pub struct EssSpectrum {
    /// Toeplitz symbol literal (with --eta).
    #[arg(long, requires = "eta", conflicts_with = "expr")]
    pub a: Option<String>,
    /// η literal (with --a).
    #[arg(long, requires = "a")]
    pub eta: Option<String>,
    #[arg(long, value_enum, default_value_t = SpectrumKind::Product)]
    pub kind: SpectrumKind,
    /// General expression; replaces --a/--eta.
    #[arg(long, required_unless_present = "a", allow_hyphen_values = true)]
    pub expr: Option<String>,
    #[command(flatten)]
    pub grids: GridArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GelfandEval {
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    /// Base point angle.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,
    /// Nonnegative real or `inf`.
    #[arg(long, default_value = "inf")]
    pub z: String,
    /// Value assigned to every η leaf; defaults to the radial cluster value.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Corrected,
    Printed,
}

#[derive(Debug, Args)]
pub struct CheckIdentity {
    /// Parabolic parameter with Im a > 0.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value_t = 256)]
    pub dim: usize,
    #[arg(long, default_value_t = 16)]
    pub block: usize,
    #[arg(long, value_enum, default_value_t = FormArg::Corrected)]
    pub form: FormArg,
    /// Residual below which the check passes.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckCommutator {
    /// First operand of [A, B].
    #[arg(long, requires = "right", conflicts_with = "expr")]
    pub left: Option<String>,
    #[arg(long, requires = "left")]
    pub right: Option<String>,
    /// Arbitrary expression, tested as is.
    #[arg(long, required_unless_present = "left", allow_hyphen_values = true)]
    pub expr: Option<String>,
    #[arg(long, default_value = "128,256,512", value_delimiter = ',')]
    pub dims: Vec<usize>,
    #[arg(long, default_value = "1,2,8,32", value_delimiter = ',')]
    pub ks: Vec<usize>,
    /// Required verdict: compact, non-compact or inconclusive.
    #[arg(long)]
    pub expect: Option<String>,
    #[arg(long, default_value_t = 32)]
    pub k_star: usize,
    #[arg(long, default_value_t = 0.05)]
    pub compact_ratio: f64,
    #[arg(long, default_value_t = 0.05)]
    pub stability: f64,
    #[arg(long, default_value_t = 8)]
    pub k_dagger: usize,
    #[arg(long, default_value_t = 0.5)]
    pub plateau_ratio: f64,
    #[arg(long, default_value_t = 0.1)]
    pub plateau_fraction: f64,
    #[arg(long, default_value_t = 1.5)]
    pub growth: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub noise_floor: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Series {
    #[arg(long)]
    pub eta: String,
    /// Defaults to the automatic choice.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    #[arg(long, default_value_t = 256)]
    pub dim: usize,
    #[arg(long, default_value_t = 16)]
    pub block: usize,
    /// Fail when the final residual exceeds this.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct Eigs {
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4096))]
    pub dim: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Lines `key = value`; blank lines and `#` comments are skipped.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key=value", path.display(), n + 1)))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(CliError::Usage(format!("{}:{}: invalid key `{}`", path.display(), n + 1, k.trim())));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Inserts config entries as `--key=value` right after the command name so
/// that later command-line flags override them.
pub fn merge_config(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut config = None;
    let mut iter = argv.iter().enumerate();
    while let Some((_, a)) = iter.next() {
        let Some(s) = a.to_str() else { continue };
        if s == "--config" {
            config = iter.next().map(|(_, p)| PathBuf::from(p));
        } else if let Some(p) = s.strip_prefix("--config=") {
            config = Some(PathBuf::from(p));
        }
    }
    let Some(path) = config else { return Ok(argv) };
    let Some(at) = argv.iter().position(|a| a.to_str().is_some_and(|s| COMMANDS.contains(&s))) else {
        return Ok(argv);
    };
    let entries = read_config(&path)?;
    let mut out = argv[..=at].to_vec();
    out.extend(entries.into_iter().map(|(k, v)| OsString::from(format!("--{k}={v}"))));
    out.extend_from_slice(&argv[at + 1..]);
    Ok(out)
}
