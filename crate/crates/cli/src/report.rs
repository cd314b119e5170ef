use qrac_core::photonic::{Estimate, Protocol, TrialResult};
use qrac_core::qrac::{allocation_figure, classical_bound, empirical_advantage, AdvantageValue};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;

pub const CSV_HEADER: &str = "power_dbm,p_z,p_z_err,p_x,p_x_err,advantage_z,advantage_x,phi";

/// One sweep point. For the four-bin link `p_z` is the full arrival-time
/// readout and `phi` combines it with the two half readouts carried in
/// `m1`/`m2`; the phase columns stay empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub power_dbm: f64,
    pub p_z: Option<f64>,
    pub p_z_err: Option<f64>,
    pub p_x: Option<f64>,
    pub p_x_err: Option<f64>,
    pub advantage_z: Option<f64>,
    pub advantage_x: Option<f64>,
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<Estimate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<Estimate>,
}

fn advantage(e: Option<Estimate>, bound: f64) -> Result<Option<AdvantageValue>> {
    Ok(e.map(|e| empirical_advantage(e.value, bound)).transpose()?)
}

impl ResultRow {
    pub fn from_trial(power_dbm: f64, r: &TrialResult) -> Result<Self> {
        let qubit_bound = classical_bound(2);
        let (advantage_z, advantage_x, phi) = match r.protocol {
            Protocol::Qrac22 => (
                advantage(r.p_z, qubit_bound)?.map(|a| a.value),
                advantage(r.p_x, qubit_bound)?.map(|a| a.value),
                None,
            ),
            Protocol::Qrac24 => {
                let global = advantage(r.m12, classical_bound(4))?;
                let halves = [advantage(r.m1, qubit_bound)?, advantage(r.m2, qubit_bound)?];
                let phi = match (global, halves) {
                    (Some(g), [Some(a), Some(b)]) => allocation_figure(&g, &a, &b).phi,
                    _ => None,
                };
                (global.map(|a| a.value), None, phi)
            }
        };
        Ok(Self {
            power_dbm,
            p_z: r.p_z.map(|e| e.value),
            p_z_err: r.p_z.map(|e| e.std_err),
            p_x: r.p_x.map(|e| e.value),
            p_x_err: r.p_x.map(|e| e.std_err),
            advantage_z,
            advantage_x,
            phi,
            m1: r.m1,
            m2: r.m2,
        })
    }

    pub fn csv_line(&self) -> String {
        [
            Some(self.power_dbm),
            self.p_z,
            self.p_z_err,
            self.p_x,
            self.p_x_err,
            self.advantage_z,
            self.advantage_x,
            self.phi,
        ]
        .iter()
        .map(|v| v.map(format_g6).unwrap_or_default())
        .collect::<Vec<_>>()
        .join(",")
    }
}

/// `%g`-style rendering with six significant digits.
pub fn format_g6(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub rows: Vec<ResultRow>,
    pub meta: Meta,
}

impl Report {
    pub fn new(config: RunConfig, rows: Vec<ResultRow>) -> Self {
        let seed = config.seed;
        Self {
            config,
            rows,
            meta: Meta {
                seed,
                version: env!("CARGO_PKG_VERSION").to_owned(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
