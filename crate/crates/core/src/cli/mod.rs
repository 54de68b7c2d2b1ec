//! Command-line front end.
//!
//! Every subcommand reads one [`RunConfig`], calls into the library and
//! renders a [`Table`] as CSV, a [`ReportEnvelope`] as JSON, or a drawing
//! as SVG. Output bytes depend only on the configuration (the JSON
//! timestamp aside).
//!
//! Exit codes: 0 success, 1 configuration error, 2 budget exceeded,
//! 3 failed identity or consistency check.

mod commands;
mod svg;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::default_budget;
use crate::error::Error;
use crate::scalar::Exact;

pub use svg::{render_svg, SvgCell, SvgScene};
pub use table::{ReportEnvelope, Table};

pub const TOOL: &str = "merw";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("check failed: {0}")]
    Check(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Library(Error::BudgetExceeded { .. }) => 2,
            CliError::Library(Error::NotHarmonic { .. }) => 3,
            CliError::Library(_) => 1,
            CliError::Check(_) => 3,
        }
    }
}

pub(crate) fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Exact number (total weight) of root paths of length n.
    Count,
    /// Exact identity checks: combipower, comb2, comb3, comb4, stirling, plancherel.
    Identities,
    /// Transition rows of a central kernel, or of the finite-horizon kernel.
    Kernel,
    /// One trajectory of a central kernel.
    Sample,
    /// Knuth estimate of the number of paths of length n.
    Estimate,
    /// Exact counts next to RW0 and RW1 estimates for the pyramid.
    #[command(name = "table1")]
    #[serde(rename = "table1")]
    Table1,
    /// One approximate MERW trajectory of the pyramid.
    PyramidSim,
    /// Box occupancy of approximate MERW pyramids.
    Heatmap,
    /// Hausdorff distance of approximate MERW pyramids to the curve G.
    ShapeDistance,
    /// Kreweras walk counts and growth diagnostics.
    Kreweras,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Count => "count",
            Command::Identities => "identities",
            Command::Kernel => "kernel",
            Command::Sample => "sample",
            Command::Estimate => "estimate",
            Command::Table1 => "table1",
            Command::PyramidSim => "pyramid-sim",
            Command::Heatmap => "heatmap",
            Command::ShapeDistance => "shape-distance",
            Command::Kreweras => "kreweras",
        }
    }

    fn stochastic(&self) -> bool {
        matches!(
            self,
            Command::Sample
                | Command::Estimate
                | Command::Table1
                | Command::PyramidSim
                | Command::Heatmap
                | Command::ShapeDistance
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Proposal {
    /// Generic walk, proportional to edge weights.
    Rw0,
    /// Out-degree power walk with the default gamma schedule.
    Rw1,
}

/// Every setting of a run. All fields are optional so that a `--config`
/// file and the flags can be merged; flags win. Rationals are written as
/// `p/q` or as decimals.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Model id: pyramid, frame, pascal, polya, young, plancherel, bst,
    /// wbst, idla, comb, crp, two-sided, toy1, toy2, sample.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    /// Level, number of steps, or pyramid size depending on the command.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Arity of d-ary trees.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u8>,
    /// Number of chain steps for `sample`.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Horizon of the finite-horizon kernel.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Knuth samples per estimate (N).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Number of sampled pyramids (N_P).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub np: Option<usize>,
    /// Look-ahead depth d of the approximate MERW.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    /// Identity to check.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// The variable X of the Stirling identity, or the weight x of wbst.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    /// The weight y of wbst.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    /// Comma-separated frequencies of the comb (or right side of the
    /// two-sided comb).
    #[arg(long, global = true, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<String>>,
    /// Comma-separated weight vector (comb4, idla).
    #[arg(long, global = true, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<String>>,
    /// Maximal base of the pyramid.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<usize>,
    /// Raster resolution of the heatmap; boxes are drawn as they are
    /// when unset.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    /// Draw the curve G on top of SVG output.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlay: Option<bool>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proposal: Option<Proposal>,
    /// Memo budget; defaults to MERW_BUDGET or 10^7.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Float-mode tolerance for identity residuals.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

macro_rules! merge_fields {
    ($a:ident, $b:ident, $($f:ident),*) => {
        RunConfig { $($f: $a.$f.or($b.$f)),* }
    };
}

impl RunConfig {
    /// `self` with unset fields taken from `fallback`.
    pub fn merged(self, fallback: RunConfig) -> RunConfig {
        let a = self;
        let b = fallback;
        merge_fields!(
            a, b, model, n, d, steps, horizon, seed, samples, np, depth, format, output, mode,
            kind, x, y, gamma, alpha, beta, theta, w, base, grid, overlay, proposal, budget,
            tolerance
        )
    }

    /// Parses a JSON configuration; unknown keys are rejected.
    pub fn from_json(text: &str) -> CliResult<RunConfig> {
        serde_json::from_str(text).map_err(|e| config_err(format!("config file: {e}")))
    }

    pub(crate) fn model_name(&self) -> CliResult<&str> {
        self.model.as_deref().ok_or_else(|| config_err("--model is required"))
    }

    pub(crate) fn need_n(&self) -> CliResult<usize> {
        self.n.ok_or_else(|| config_err("--n is required"))
    }

    pub(crate) fn need_seed(&self) -> CliResult<u64> {
        self.seed.ok_or_else(|| config_err("--seed is required for stochastic runs"))
    }

    pub(crate) fn mode(&self) -> Mode {
        self.mode.unwrap_or_default()
    }

    pub(crate) fn budget(&self) -> usize {
        self.budget.unwrap_or_else(default_budget)
    }

    pub(crate) fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    pub(crate) fn overlay(&self) -> bool {
        self.overlay.unwrap_or(false)
    }
}

/// Parses `p/q`, an integer or a plain decimal such as `0.25` into an
/// exact rational.
pub fn parse_rational(s: &str) -> CliResult<Exact> {
    let t = s.trim();
    let bad = || config_err(format!("not a rational number: {s:?}"));
    if let Ok(q) = t.parse::<Exact>() {
        return Ok(q);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').ok_or_else(bad)?;
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(bad());
    }
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(num_bigint::BigInt::from(10), frac.len());
    let q = Exact::new(digits, scale);
    Ok(if neg { -q } else { q })
}

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Maximal-entropy random walks on weighted Bratteli diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub settings: RunConfig,
    /// JSON file mirroring the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Rendered output of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub format: Format,
    pub body: String,
    /// Set when a checking command (`identities`, `kreweras`) found a
    /// failing row; the body is still complete.
    pub failure: Option<String>,
}

/// Runs one subcommand on a complete configuration.
pub fn execute(command: Command, config: &RunConfig) -> CliResult<Artifact> {
    if command.stochastic() {
        config.need_seed()?;
    }
    let format = config.format();
    if format == Format::Svg {
        let body = commands::svg(command, config)?;
        return Ok(Artifact { format, body, failure: None });
    }
    let results = commands::table(command, config)?;
    let failure = commands::verdict(command, &results);
    let body = match format {
        Format::Json => ReportEnvelope::new(command, config.clone(), results).to_json()?,
        _ => results.to_csv()?,
    };
    Ok(Artifact { format, body, failure })
}

/// Parses `args` (program name first), runs the command and writes the
/// artifact to `--output` or to `out`. Diagnostics go to `err`. Returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run_cli(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_cli(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| config_err(format!("reading {}: {e}", path.display())))?;
            cli.settings.merged(RunConfig::from_json(&text)?)
        }
        None => cli.settings,
    };
    let artifact = execute(cli.command, &config)?;
    match &config.output {
        Some(path) => std::fs::write(path, artifact.body.as_bytes())?,
        None => out.write_all(artifact.body.as_bytes())?,
    }
    match artifact.failure {
        Some(msg) => Err(CliError::Check(msg)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("1/2").unwrap(), Exact::new(1.into(), 2.into()));
        assert_eq!(parse_rational("0.25").unwrap(), Exact::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-2.5").unwrap(), Exact::new((-5).into(), 2.into()));
        assert_eq!(parse_rational("3").unwrap(), Exact::from_integer(3.into()));
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig::from_json(r#"{"model": "bst", "n": 4, "seed": 3}"#).unwrap();
        let flags = RunConfig {
            n: Some(6),
            ..Default::default()
        };
        let cfg = flags.merged(file);
        assert_eq!(cfg.n, Some(6));
        assert_eq!(cfg.model.as_deref(), Some("bst"));
        assert!(RunConfig::from_json(r#"{"modle": "bst"}"#).is_err());
    }
}
