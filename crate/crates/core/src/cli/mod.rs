//! Command-line front end: config parsing, run orchestration and CSV output.

mod config;
mod output;
mod run;

use std::fmt;
use std::path::PathBuf;

pub use config::{
    parse_config, Chart, ConfigError, Family, Initial, Mode, ParamsSpec, RunConfig, System, DEFAULT_ABS_TOL,
    DEFAULT_REL_TOL, DEFAULT_SAMPLES,
};
pub use output::{write_csv, Table};
pub use run::{run, RunOutcome, CANONICAL_COLUMNS, COMPLEX_COLUMNS, DEVIATION_COLUMNS, KEPLER_COLUMNS};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(ConfigError),
    Numerical { op: &'static str, message: String },
    Io { op: &'static str, path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical { .. } => EXIT_NUMERICAL,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "parse_config: {e}"),
            CliError::Numerical { op, message } => write!(f, "{op}: {message}"),
            CliError::Io { op, path, message } => write!(f, "{op}: {}: {message}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

/// Reads, parses and runs a config file; `mode` must agree with the file.
pub fn run_file(mode: Mode, config: &std::path::Path, out: Option<&std::path::Path>) -> Result<RunOutcome, CliError> {
    let text = std::fs::read_to_string(config).map_err(|e| CliError::Io {
        op: "read_config",
        path: config.to_path_buf(),
        message: e.to_string(),
    })?;
    let cfg = parse_mode_config(mode, &text)?;
    run(&cfg, out)
}

/// Parses `text` with `mode` as the default for a missing `mode` key.
pub fn parse_mode_config(mode: Mode, text: &str) -> Result<RunConfig, CliError> {
    let has_mode =
        text.lines().any(|l| l.split('#').next().unwrap_or("").split('=').next().map(str::trim) == Some("mode"));
    let cfg = if has_mode {
        parse_config(text)?
    } else {
        parse_config(&format!("mode = {}\n{text}", mode.name())).map_err(|mut e| {
            // the injected first line shifts every line number by one
            e.line = e.line.map(|n| n - 1);
            e
        })?
    };
    if cfg.mode != mode {
        return Err(ConfigError {
            key: Some("mode".into()),
            line: None,
            message: format!("config says `{}` but `{}` was requested", cfg.mode.name(), mode.name()),
        }
        .into());
    }
    Ok(cfg)
}
