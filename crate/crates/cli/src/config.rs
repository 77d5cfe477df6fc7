//! Flat `key = value` run configuration.
//!
//! ```text
//! # Work along tau2 with the first kick strong and the second weak.
//! mode = curve-tau2
//! omega1 = 1
//! omega2 = 3
//! tau1 = 0
//! lambda1 = 100
//! lambda2 = 1
//! tau2_start = 0.05
//! tau2_stop = 8
//! tau2_count = 800
//! output = fig4a.csv
//! ```
//!
//! All physical values are in units of the Gaussian width. Keys are
//! case-sensitive; `#` starts a comment; a key may appear once per file.
//! Command-line overrides replace file values.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use crate::verify::VerifySettings;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    /// 1-based line in the document; `None` for overrides and missing keys.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Inclusive, evenly spaced axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    CurveTau2 {
        omega1: f64,
        omega2: f64,
        tau1: f64,
        lambda1: f64,
        lambda2: f64,
        tau2: Axis,
    },
    GridCouplings {
        omega1: f64,
        omega2: f64,
        tau1: f64,
        tau2: f64,
        lambda1: Axis,
        lambda2: Axis,
    },
    SinglePoint {
        omega1: f64,
        omega2: f64,
        tau1: f64,
        tau2: f64,
        lambda1: f64,
        lambda2: f64,
        initial_p: Option<f64>,
    },
    Verify(VerifySettings),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::CurveTau2 { .. } => "curve-tau2",
            Mode::GridCouplings { .. } => "grid-couplings",
            Mode::SinglePoint { .. } => "single-point",
            Mode::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub mode: Mode,
    /// CSV destination; standard output when absent.
    pub output: Option<PathBuf>,
}

const PHYSICS_POINT: &[&str] = &["omega1", "omega2", "tau1", "tau2", "lambda1", "lambda2"];
const CURVE_KEYS: &[&str] = &[
    "omega1",
    "omega2",
    "tau1",
    "lambda1",
    "lambda2",
    "tau2_start",
    "tau2_stop",
    "tau2_count",
    "output",
];
const GRID_KEYS: &[&str] = &[
    "omega1",
    "omega2",
    "tau1",
    "tau2",
    "lambda1_start",
    "lambda1_stop",
    "lambda1_count",
    "lambda2_start",
    "lambda2_stop",
    "lambda2_count",
    "output",
];
const POINT_EXTRA: &[&str] = &["initial_p"];

fn all_keys() -> impl Iterator<Item = &'static str> {
    ["mode"]
        .into_iter()
        .chain(CURVE_KEYS.iter().copied())
        .chain(GRID_KEYS.iter().copied())
        .chain(PHYSICS_POINT.iter().copied())
        .chain(POINT_EXTRA.iter().copied())
        .chain(VerifySettings::KEYS.iter().copied())
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: Option<usize>,
}

/// Key/value pairs with their origin, consumed by the typed accessors.
struct Entries {
    map: BTreeMap<String, Entry>,
}

impl Entries {
    fn error(&self, key: &str, message: String) -> ConfigError {
        ConfigError {
            line: self.map.get(key).and_then(|e| e.line),
            message: format!("{key}: {message}"),
        }
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|e| e.value.as_str())
    }

    fn required(&self, key: &str) -> Result<&str, ConfigError> {
        self.raw(key).ok_or_else(|| ConfigError {
            line: None,
            message: format!("missing key: {key}"),
        })
    }

    fn number(&self, key: &str) -> Result<f64, ConfigError> {
        let raw = self.required(key)?;
        let v: f64 = raw
            .parse()
            .map_err(|_| self.error(key, format!("cannot parse '{raw}' as a number")))?;
        if !v.is_finite() {
            return Err(self.error(key, format!("must be finite (got {raw})")));
        }
        Ok(v)
    }

    fn optional_number(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.raw(key).map(|_| self.number(key)).transpose()
    }

    fn count(&self, key: &str) -> Result<usize, ConfigError> {
        let raw = self.required(key)?;
        raw.parse()
            .map_err(|_| self.error(key, format!("cannot parse '{raw}' as a count")))
    }

    fn optional_count(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        self.raw(key).map(|_| self.count(key)).transpose()
    }

    fn positive(&self, key: &str) -> Result<f64, ConfigError> {
        let v = self.number(key)?;
        if v <= 0.0 {
            return Err(self.error(key, format!("must be positive (got {v})")));
        }
        Ok(v)
    }

    fn non_negative(&self, key: &str) -> Result<f64, ConfigError> {
        let v = self.number(key)?;
        if v < 0.0 {
            return Err(self.error(key, format!("must be non-negative (got {v})")));
        }
        Ok(v)
    }

    fn axis(&self, prefix: &str, non_negative: bool) -> Result<Axis, ConfigError> {
        let start_key = format!("{prefix}_start");
        let stop_key = format!("{prefix}_stop");
        let count_key = format!("{prefix}_count");
        let start = if non_negative {
            self.non_negative(&start_key)?
        } else {
            self.number(&start_key)?
        };
        let stop = self.number(&stop_key)?;
        let count = self.count(&count_key)?;
        if count < 2 {
            return Err(self.error(&count_key, format!("must be at least 2 (got {count})")));
        }
        if !(start < stop) {
            return Err(self.error(&stop_key, format!("must exceed {start_key} = {start}")));
        }
        Ok(Axis { start, stop, count })
    }

    fn reject_foreign(&self, mode: &str, allowed: &[&str]) -> Result<(), ConfigError> {
        for key in self.map.keys() {
            if key != "mode" && !allowed.contains(&key.as_str()) {
                return Err(self.error(key, format!("not used by mode {mode}")));
            }
        }
        Ok(())
    }
}

fn parse_lines(text: &str) -> Result<BTreeMap<String, Entry>, ConfigError> {
    let mut map = BTreeMap::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError {
            line: Some(line),
            message: format!("expected 'key = value', found '{content}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if !all_keys().any(|k| k == key) {
            return Err(ConfigError {
                line: Some(line),
                message: format!("unknown key: {key}"),
            });
        }
        if value.is_empty() {
            return Err(ConfigError {
                line: Some(line),
                message: format!("{key}: empty value"),
            });
        }
        let entry = Entry {
            value: value.to_string(),
            line: Some(line),
        };
        if map.insert(key.to_string(), entry).is_some() {
            return Err(ConfigError {
                line: Some(line),
                message: format!("{key}: duplicate key"),
            });
        }
    }
    Ok(map)
}

/// Splits a `key=value` override.
pub fn parse_override(text: &str) -> Result<(String, String), ConfigError> {
    let (key, value) = text.split_once('=').ok_or_else(|| ConfigError {
        line: None,
        message: format!("override '{text}' is not of the form key=value"),
    })?;
    Ok((key.trim().to_string(), value.trim().to_string()))
}

pub fn parse_config(text: &str) -> Result<SweepSpec, ConfigError> {
    parse_config_with_overrides(text, &[])
}

pub fn parse_config_with_overrides(
    text: &str,
    overrides: &[(String, String)],
) -> Result<SweepSpec, ConfigError> {
    let mut map = parse_lines(text)?;
    for (key, value) in overrides {
        if !all_keys().any(|k| k == key) {
            return Err(ConfigError {
                line: None,
                message: format!("unknown key: {key}"),
            });
        }
        map.insert(
            key.clone(),
            Entry {
                value: value.clone(),
                line: None,
            },
        );
    }
    let entries = Entries { map };
    let mode_name = entries.required("mode")?;
    let mode = match mode_name {
        "curve-tau2" => {
            entries.reject_foreign(mode_name, CURVE_KEYS)?;
            let tau1 = entries.number("tau1")?;
            let tau2 = entries.axis("tau2", false)?;
            if !(tau2.start > tau1) {
                return Err(entries.error(
                    "tau2_start",
                    format!("must exceed tau1 = {tau1} (got {})", tau2.start),
                ));
            }
            Mode::CurveTau2 {
                omega1: entries.positive("omega1")?,
                omega2: entries.positive("omega2")?,
                tau1,
                lambda1: entries.non_negative("lambda1")?,
                lambda2: entries.non_negative("lambda2")?,
                tau2,
            }
        }
        "grid-couplings" => {
            entries.reject_foreign(mode_name, GRID_KEYS)?;
            let (tau1, tau2) = ordered_times(&entries)?;
            Mode::GridCouplings {
                omega1: entries.positive("omega1")?,
                omega2: entries.positive("omega2")?,
                tau1,
                tau2,
                lambda1: entries.axis("lambda1", true)?,
                lambda2: entries.axis("lambda2", true)?,
            }
        }
        "single-point" => {
            let allowed: Vec<&str> = PHYSICS_POINT.iter().chain(POINT_EXTRA).copied().collect();
            entries.reject_foreign(mode_name, &allowed)?;
            let (tau1, tau2) = ordered_times(&entries)?;
            let initial_p = entries.optional_number("initial_p")?;
            if let Some(p) = initial_p {
                if !(0.0..=1.0).contains(&p) {
                    return Err(entries.error("initial_p", format!("must lie in [0, 1] (got {p})")));
                }
            }
            Mode::SinglePoint {
                omega1: entries.positive("omega1")?,
                omega2: entries.positive("omega2")?,
                tau1,
                tau2,
                lambda1: entries.non_negative("lambda1")?,
                lambda2: entries.non_negative("lambda2")?,
                initial_p,
            }
        }
        "verify" => {
            entries.reject_foreign(mode_name, VerifySettings::KEYS)?;
            Mode::Verify(verify_settings(&entries)?)
        }
        other => {
            return Err(entries.error(
                "mode",
                format!(
                    "unknown mode '{other}' (expected curve-tau2, grid-couplings, single-point or verify)"
                ),
            ))
        }
    };
    let output = entries.raw("output").map(PathBuf::from);
    Ok(SweepSpec { mode, output })
}

fn ordered_times(entries: &Entries) -> Result<(f64, f64), ConfigError> {
    let tau1 = entries.number("tau1")?;
    let tau2 = entries.number("tau2")?;
    if !(tau2 > tau1) {
        return Err(entries.error("tau2", format!("must exceed tau1 = {tau1} (got {tau2})")));
    }
    Ok((tau1, tau2))
}

fn verify_settings(entries: &Entries) -> Result<VerifySettings, ConfigError> {
    let mut s = VerifySettings::default();
    if let Some(seed) = entries.raw("seed") {
        s.seed = seed
            .parse()
            .map_err(|_| entries.error("seed", format!("cannot parse '{seed}' as a seed")))?;
    }
    let counts: [(&str, &mut usize, usize); 4] = [
        ("fock_cases", &mut s.fock_cases, 1),
        ("fock_dim", &mut s.fock_dim, 2),
        ("ensemble", &mut s.ensemble, 1),
        ("kernels", &mut s.kernels, 1),
    ];
    for (key, slot, min) in counts {
        if let Some(v) = entries.optional_count(key)? {
            if v < min {
                return Err(entries.error(key, format!("must be at least {min} (got {v})")));
            }
            *slot = v;
        }
    }
    if let Some(v) = entries.optional_number("fock_coupling")? {
        if !(v > 0.0) {
            return Err(entries.error("fock_coupling", format!("must be positive (got {v})")));
        }
        s.fock_coupling = v;
    }
    for (key, slot) in s.tolerances.iter_mut() {
        if let Some(v) = entries.optional_number(key)? {
            if v < 0.0 {
                return Err(entries.error(key, format!("must be non-negative (got {v})")));
            }
            *slot = v;
        }
    }
    Ok(s)
}
