//! Batch front end for the `ottoqft` engine: config parsing, Minkowski
//! sweeps written as CSV, single-point stroke ledgers and the oracle suite.

// Range checks are written negated so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod sweep;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

pub use config::{
    parse_config, parse_config_with_overrides, parse_override, Axis, ConfigError, Mode, SweepSpec,
};
pub use sweep::{format_number, point_report, run_sweep, Kicks};
pub use verify::{run_verify, Check, VerifyReport, VerifySettings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Model(#[from] ottoqft::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Model(_) => 1,
            CliError::VerifyFailed => 2,
            CliError::Io { .. } => 3,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Parses `--set` arguments.
pub fn parse_overrides(raw: &[String]) -> Result<Vec<(String, String)>, ConfigError> {
    raw.iter().map(|s| parse_override(s)).collect()
}

pub fn read_config(path: &Path, overrides: &[(String, String)]) -> Result<SweepSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(parse_config_with_overrides(&text, overrides)?)
}

/// Builds a spec of a fixed mode from overrides alone.
pub fn spec_for_mode(mode: &str, overrides: &[(String, String)]) -> Result<SweepSpec, CliError> {
    let spec = parse_config_with_overrides(&format!("mode = {mode}\n"), overrides)?;
    if spec.mode.name() != mode {
        return Err(ConfigError {
            line: None,
            message: format!("mode: this command only runs {mode}"),
        }
        .into());
    }
    Ok(spec)
}

/// Runs any mode, writing its document to the spec's output path or to
/// `stdout`. A failing verification is reported after the document.
pub fn execute(
    spec: &SweepSpec,
    jobs: Option<usize>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    if jobs == Some(0) {
        return Err(ConfigError {
            line: None,
            message: "jobs: must be at least 1".to_string(),
        }
        .into());
    }
    let mut verdict = Ok(());
    let document = match &spec.mode {
        Mode::CurveTau2 { .. } | Mode::GridCouplings { .. } => {
            run_sweep(&spec.mode, jobs).expect("swept mode")?
        }
        &Mode::SinglePoint {
            omega1,
            omega2,
            tau1,
            tau2,
            lambda1,
            lambda2,
            initial_p,
        } => point_report(
            &Kicks {
                omega1,
                omega2,
                tau1,
                tau2,
                lambda1,
                lambda2,
            },
            initial_p,
        )?,
        Mode::Verify(settings) => {
            let report = match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| ConfigError {
                        line: None,
                        message: format!("jobs: {e}"),
                    })?
                    .install(|| run_verify(settings)),
                None => run_verify(settings),
            };
            if !report.passed() {
                verdict = Err(CliError::VerifyFailed);
            }
            report.to_string()
        }
    };
    match &spec.output {
        Some(path) => std::fs::write(path, document).map_err(|e| CliError::io(path, e))?,
        None => stdout
            .write_all(document.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e))?,
    }
    verdict
}
