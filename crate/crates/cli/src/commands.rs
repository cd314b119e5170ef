use std::fmt::Write as _;
use std::path::Path;

use qrac_core::mub::{fourier_mub_pair, pauli_mub_pair, product_mub_pair};
use qrac_core::photonic::{Estimate, Protocol, TrialResult};
use qrac_core::qrac::{
    advantage, allocation_figure, classical_bound, empirical_advantage, encoding_table,
    quantum_bound, MeasurementPair,
};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use crate::reference::*;
use crate::report::{format_g6, to_csv, Report, ResultRow};
use crate::runner::{run_trial, sim_config, sweep_rows};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Table1,
    Table3,
    Table2,
    Table4,
    Fig4,
    Fig5,
}

/// A rendered result in both formats, plus the acceptance verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub csv: String,
    pub json: String,
    /// Reason the Monte Carlo missed its acceptance band, if it did.
    pub band_failure: Option<String>,
}

impl Artifact {
    fn new<T: Serialize>(csv: String, json: &T, band_failure: Option<String>) -> Self {
        let mut json = serde_json::to_string_pretty(json).expect("artifact serializes");
        json.push('\n');
        Self {
            csv,
            json,
            band_failure,
        }
    }

    /// Writes the chosen format to `out` (or stdout). A CSV written to a file
    /// gets its JSON mirror next to it.
    pub fn emit(&self, out: Option<&Path>, format: Format) -> Result<()> {
        let body = match format {
            Format::Csv => &self.csv,
            Format::Json => &self.json,
        };
        match out {
            None => print!("{body}"),
            Some(path) => {
                write(path, body)?;
                if format == Format::Csv {
                    write(&path.with_extension("json"), &self.json)?;
                }
            }
        }
        match &self.band_failure {
            Some(why) => Err(CliError::Acceptance(why.clone())),
            None => Ok(()),
        }
    }
}

fn write(path: &Path, body: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, body).map_err(|e| CliError::io(path, e))
}

/// Bounds and ideal advantage for alphabet size `d`.
pub fn bounds(d: usize) -> Result<String> {
    if !(2..=qrac_core::MAX_DIM).contains(&d) {
        return Err(CliError::Usage(format!(
            "d must be between 2 and {}, got {d}",
            qrac_core::MAX_DIM
        )));
    }
    let pair = MeasurementPair::from_mub(&fourier_mub_pair(d)?);
    Ok(format!(
        "rac={} qrac={} advantage={}\n",
        format_g6(classical_bound(d)),
        format_g6(quantum_bound(d)),
        format_g6(advantage(&pair)?.value)
    ))
}

pub fn sweep(rc: &RunConfig) -> Result<Artifact> {
    let rows = sweep_rows(rc)?;
    let report = Report::new(rc.clone(), rows);
    Ok(Artifact::new(to_csv(&report.rows), &report, None))
}

pub fn reproduce(target: Target, rc: &RunConfig) -> Result<Artifact> {
    match target {
        Target::Table1 => encoding(Protocol::Qrac22),
        Target::Table3 => encoding(Protocol::Qrac24),
        Target::Table2 => qubit_table(&RunConfig {
            protocol: Protocol::Qrac22,
            ..rc.clone()
        }),
        Target::Table4 => ququart_table(&RunConfig {
            protocol: Protocol::Qrac24,
            ..rc.clone()
        }),
        Target::Fig4 => figure(rc, Protocol::Qrac22),
        Target::Fig5 => figure(rc, Protocol::Qrac24),
    }
}

#[derive(Serialize)]
struct EncodingRow {
    message: String,
    amplitudes: Vec<f64>,
}

fn encoding(protocol: Protocol) -> Result<Artifact> {
    let pair = match protocol {
        Protocol::Qrac22 => MeasurementPair::from_mub(&pauli_mub_pair()),
        Protocol::Qrac24 => MeasurementPair::from_mub(&product_mub_pair(&pauli_mub_pair(), 2)?),
    };
    let table = encoding_table(&pair)?;
    let rows: Vec<EncodingRow> = protocol
        .messages()
        .iter()
        .map(|m| EncodingRow {
            message: m.to_string(),
            amplitudes: table.get(m).amplitudes().iter().map(|z| z.re).collect(),
        })
        .collect();
    let mut csv = String::from("message");
    for b in 0..protocol.bins() {
        write!(csv, ",bin{b}").unwrap();
    }
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.message);
        for a in &r.amplitudes {
            // Drop the sign of a rounded zero.
            write!(csv, ",{:.6}", a + 0.0).unwrap();
        }
        csv.push('\n');
    }
    Ok(Artifact::new(csv, &rows, None))
}

fn opt(v: Option<f64>) -> String {
    v.map(format_g6).unwrap_or_default()
}

fn value(e: Option<Estimate>) -> Option<f64> {
    e.map(|e| e.value)
}

fn err(e: Option<Estimate>) -> Option<f64> {
    e.map(|e| e.std_err)
}

fn state_estimate(r: &TrialResult, label: &str, x_basis: bool) -> Option<Estimate> {
    let s = r.states.iter().find(|s| s.message.to_string() == label)?;
    let c = if x_basis { s.x? } else { s.z };
    Estimate::from_counts(c.correct, c.clicks())
}

#[derive(Serialize)]
struct QubitRow {
    state: String,
    p_z: Option<f64>,
    p_z_err: Option<f64>,
    p_z_ref: f64,
    p_x: Option<f64>,
    p_x_err: Option<f64>,
    p_x_ref: f64,
}

#[derive(Serialize)]
struct TableReport<R> {
    config: RunConfig,
    rows: Vec<R>,
    band_failure: Option<String>,
}

fn qubit_table(rc: &RunConfig) -> Result<Artifact> {
    rc.validate()?;
    let r = run_trial(&sim_config(rc, None))?;
    let mut rows: Vec<QubitRow> = QUBIT_STATES
        .iter()
        .map(|&(label, pz, px)| QubitRow {
            state: label.to_owned(),
            p_z: value(state_estimate(&r, label, false)),
            p_z_err: err(state_estimate(&r, label, false)),
            p_z_ref: pz,
            p_x: value(state_estimate(&r, label, true)),
            p_x_err: err(state_estimate(&r, label, true)),
            p_x_ref: px,
        })
        .collect();
    let mean = |f: fn(&(&str, f64, f64)) -> f64| QUBIT_STATES.iter().map(f).sum::<f64>() / 4.0;
    rows.push(QubitRow {
        state: "mean".to_owned(),
        p_z: value(r.p_z),
        p_z_err: err(r.p_z),
        p_z_ref: mean(|s| s.1),
        p_x: value(r.p_x),
        p_x_err: err(r.p_x),
        p_x_ref: mean(|s| s.2),
    });

    let mut failures = Vec::new();
    match value(r.p_z) {
        Some(p) if (p - P_Z_TARGET).abs() <= P_Z_TOLERANCE => {}
        p => failures.push(format!(
            "p_z = {} outside {P_Z_TARGET} ± {P_Z_TOLERANCE}",
            opt(p)
        )),
    }
    match value(r.p_x) {
        Some(p) if (P_X_BAND.0..=P_X_BAND.1).contains(&p) => {}
        p => failures.push(format!(
            "p_x = {} outside [{}, {}]",
            opt(p),
            P_X_BAND.0,
            P_X_BAND.1
        )),
    }
    let band_failure = (!failures.is_empty()).then(|| failures.join("; "));

    let mut csv =
        String::from("state,p_z,p_z_err,p_z_ref,p_z_dev,p_x,p_x_err,p_x_ref,p_x_dev\n");
    for row in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            row.state,
            opt(row.p_z),
            opt(row.p_z_err),
            format_g6(row.p_z_ref),
            opt(row.p_z.map(|p| p - row.p_z_ref)),
            opt(row.p_x),
            opt(row.p_x_err),
            format_g6(row.p_x_ref),
            opt(row.p_x.map(|p| p - row.p_x_ref)),
        )
        .unwrap();
    }
    let json = TableReport {
        config: rc.clone(),
        rows,
        band_failure: band_failure.clone(),
    };
    Ok(Artifact::new(csv, &json, band_failure))
}

#[derive(Serialize)]
struct QuquartRow {
    measurement: String,
    p: Option<f64>,
    p_err: Option<f64>,
    p_ref: f64,
    advantage: Option<f64>,
    advantage_ref: f64,
}

fn ququart_table(rc: &RunConfig) -> Result<Artifact> {
    rc.validate()?;
    let r = run_trial(&sim_config(rc, None))?;
    let estimates = [r.m1, r.m2, r.m12];
    let bounds = [classical_bound(2), classical_bound(2), classical_bound(4)];
    let mut advantages = Vec::new();
    for (e, b) in estimates.iter().zip(bounds) {
        advantages.push(e.map(|e| empirical_advantage(e.value, b)).transpose()?);
    }
    let rows: Vec<QuquartRow> = QUQUART_READOUTS
        .iter()
        .zip(estimates.iter().zip(&advantages))
        .map(|(&(label, p, a), (e, adv))| QuquartRow {
            measurement: label.to_owned(),
            p: value(*e),
            p_err: err(*e),
            p_ref: p,
            advantage: adv.map(|a| a.value),
            advantage_ref: a,
        })
        .collect();
    let phi = match advantages.as_slice() {
        [Some(m1), Some(m2), Some(m12)] => allocation_figure(m12, m1, m2).phi,
        _ => None,
    };
    let phi_ref: f64 = QUQUART_READOUTS.iter().map(|r| r.2.ln()).sum();

    let band_failure = rows
        .iter()
        .find(|row| !row.advantage.is_some_and(|a| a > 0.0))
        .map(|row| format!("no quantum advantage for {}", row.measurement));

    let mut csv = String::from("measurement,p,p_err,p_ref,p_dev,advantage,advantage_ref\n");
    for row in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            row.measurement,
            opt(row.p),
            opt(row.p_err),
            format_g6(row.p_ref),
            opt(row.p.map(|p| p - row.p_ref)),
            opt(row.advantage),
            format_g6(row.advantage_ref),
        )
        .unwrap();
    }
    writeln!(
        csv,
        "phi,{},,{},{},,",
        opt(phi),
        format_g6(phi_ref),
        opt(phi.map(|p| p - phi_ref))
    )
    .unwrap();

    #[derive(Serialize)]
    struct Json {
        #[serde(flatten)]
        table: TableReport<QuquartRow>,
        phi: Option<f64>,
        phi_ref: f64,
    }
    let json = Json {
        table: TableReport {
            config: rc.clone(),
            rows,
            band_failure: band_failure.clone(),
        },
        phi,
        phi_ref,
    };
    Ok(Artifact::new(csv, &json, band_failure))
}

/// First pair of neighbouring points where the value rises by more than the
/// allowed noise.
fn rise(rows: &[ResultRow], pick: fn(&ResultRow) -> (Option<f64>, Option<f64>)) -> Option<String> {
    rows.windows(2).find_map(|w| {
        let ((Some(a), Some(ea)), (Some(b), Some(eb))) = (pick(&w[0]), pick(&w[1])) else {
            return None;
        };
        let slack = MONOTONE_SIGMAS * (ea * ea + eb * eb).sqrt();
        (b - a > slack).then(|| {
            format!(
                "rises from {} at {} dBm to {} at {} dBm",
                format_g6(a),
                format_g6(w[0].power_dbm),
                format_g6(b),
                format_g6(w[1].power_dbm)
            )
        })
    })
}

fn figure(rc: &RunConfig, protocol: Protocol) -> Result<Artifact> {
    let mut rc = RunConfig {
        protocol,
        ..rc.clone()
    };
    if rc.sweep.is_empty() {
        rc.sweep = DEFAULT_SWEEP_DBM.to_vec();
    }
    let rows = sweep_rows(&rc)?;
    let mut problems = Vec::new();
    if let Some(why) = rise(&rows, |r| (r.p_z, r.p_z_err)) {
        problems.push(format!("p_z {why}"));
    }
    if let Some(why) = rise(&rows, |r| (r.p_x, r.p_x_err)) {
        problems.push(format!("p_x {why}"));
    }
    let band_failure = (!problems.is_empty()).then(|| problems.join("; "));
    let report = Report::new(rc, rows);
    Ok(Artifact::new(to_csv(&report.rows), &report, band_failure))
}
