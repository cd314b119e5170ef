//! Run configuration: flat `key = value` text or the JSON echo of a report.
//!
//! ```text
//! # (2,2) link, three carrier powers
//! protocol = 2,2
//! rounds = 1000000
//! seed = 7
//! sweep = -40, -30, -25
//! detector.dark_rate_hz = 2500
//! channel.classical_power_dbm = none
//! ```
//!
//! Keys are listed in [`KEYS`]. `#` starts a comment, blank lines are
//! ignored, a key may appear once.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qrac_core::photonic::{ChannelModel, DetectorModel, DliModel, Protocol, Setup, SourceModel};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const DEFAULT_ROUNDS: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_WORKERS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub protocol: Protocol,
    pub source: SourceModel,
    pub channel: ChannelModel,
    pub detector: DetectorModel,
    pub dli: DliModel,
    /// Carrier powers in dBm, one result row each.
    pub sweep: Vec<f64>,
    pub rounds: u64,
    pub seed: u64,
    pub workers: usize,
    pub intensity_errors: Option<Vec<f64>>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let setup = Setup::default();
        Self {
            protocol: Protocol::Qrac22,
            source: setup.source,
            channel: setup.channel,
            detector: setup.detector,
            dli: setup.dli,
            sweep: Vec::new(),
            rounds: DEFAULT_ROUNDS,
            seed: DEFAULT_SEED,
            workers: DEFAULT_WORKERS,
            intensity_errors: None,
            output: None,
            format: Format::Csv,
        }
    }
}

/// Every key the text format accepts.
pub const KEYS: &[&str] = &[
    "protocol",
    "rounds",
    "seed",
    "workers",
    "sweep",
    "intensity_errors",
    "output",
    "format",
    "source.mu",
    "source.rep_period_ps",
    "channel.loss_db",
    "channel.raman_coefficient",
    "channel.classical_power_dbm",
    "detector.efficiency",
    "detector.dark_rate_hz",
    "detector.jitter_sigma_ps",
    "detector.gate_width_ps",
    "dli.delay_ps",
    "dli.visibility",
];

impl RunConfig {
    pub fn setup(&self) -> Setup {
        Setup {
            source: self.source,
            channel: self.channel,
            detector: self.detector,
            dli: self.dli,
        }
    }

    pub fn set_setup(&mut self, setup: Setup) {
        self.source = setup.source;
        self.channel = setup.channel;
        self.detector = setup.detector;
        self.dli = setup.dli;
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(CliError::Usage("rounds must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Usage("workers must be at least 1".into()));
        }
        if let Some(p) = self.sweep.iter().find(|p| !p.is_finite()) {
            return Err(CliError::Usage(format!("sweep power {p} is not finite")));
        }
        self.setup().validate()?;
        Ok(())
    }

    /// Reads a config file; JSON is detected by a leading `{`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        if text.trim_start().starts_with('{') {
            Self::from_json(&text).map_err(|source| CliError::ConfigJson {
                path: path.to_owned(),
                source,
            })
        } else {
            Self::parse(&text)
        }
    }

    /// Accepts a bare config object or a whole report carrying one under `config`.
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Doc {
            Report { config: RunConfig },
            Bare(RunConfig),
        }
        Ok(match serde_json::from_str(text)? {
            Doc::Report { config } => config,
            Doc::Bare(c) => c,
        })
    }

    /// Parses the `key = value` format, then validates the result.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(CliError::config(line, content, "expected `key = value`"));
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(&known) = KEYS.iter().find(|k| **k == key) else {
                return Err(CliError::config(line, key, "unknown key"));
            };
            if let Some(first) = seen.insert(known, line) {
                return Err(CliError::config(
                    line,
                    key,
                    format!("already set on line {first}"),
                ));
            }
            cfg.assign(known, value)
                .map_err(|message| CliError::config(line, key, message))?;
        }
        cfg.validate().map_err(|e| match e {
            CliError::Model(qrac_core::Error::InvalidParameter { name, value }) => {
                match seen.get(name) {
                    Some(&line) => CliError::config(line, name, format!("invalid value {value}")),
                    None => e,
                }
            }
            other => other,
        })?;
        Ok(cfg)
    }

    fn assign(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "protocol" => self.protocol = value.parse().map_err(|_| "expected 2,2 or 2,4")?,
            "rounds" => self.rounds = number(value)?,
            "seed" => self.seed = number(value)?,
            "workers" => self.workers = number(value)?,
            "sweep" => self.sweep = list(value)?,
            "intensity_errors" => {
                self.intensity_errors = optional(value, list)?;
            }
            "output" => self.output = optional(value, |v| Ok(PathBuf::from(v)))?,
            "format" => {
                self.format = match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err("expected csv or json".into()),
                }
            }
            "source.mu" => self.source.mu = number(value)?,
            "source.rep_period_ps" => self.source.rep_period_ps = number(value)?,
            "channel.loss_db" => self.channel.loss_db = number(value)?,
            "channel.raman_coefficient" => self.channel.raman_coefficient = number(value)?,
            "channel.classical_power_dbm" => {
                self.channel.classical_power_dbm = optional(value, number)?;
            }
            "detector.efficiency" => self.detector.efficiency = number(value)?,
            "detector.dark_rate_hz" => self.detector.dark_rate_hz = number(value)?,
            "detector.jitter_sigma_ps" => self.detector.jitter_sigma_ps = number(value)?,
            "detector.gate_width_ps" => self.detector.gate_width_ps = number(value)?,
            "dli.delay_ps" => self.dli.delay_ps = number(value)?,
            "dli.visibility" => self.dli.visibility = number(value)?,
            _ => unreachable!("key checked against KEYS"),
        }
        Ok(())
    }
}

fn number<T: FromStr>(value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("cannot read `{value}` as a number"))
}

fn list(value: &str) -> std::result::Result<Vec<f64>, String> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|v| number(v.trim())).collect()
}

fn optional<T>(
    value: &str,
    read: impl Fn(&str) -> std::result::Result<T, String>,
) -> std::result::Result<Option<T>, String> {
    match value {
        "none" | "" => Ok(None),
        v => read(v).map(Some),
    }
}
