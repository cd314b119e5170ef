use std::thread;

use qrac_core::photonic::{merge_workers, simulate_worker, SimConfig, TrialResult};

use crate::config::RunConfig;
use crate::error::Result;
use crate::report::ResultRow;

/// [`qrac_core::photonic::simulate_trial`] with one thread per worker stream.
/// Counts are merged in worker order, so the result is identical to the
/// sequential run.
pub fn run_trial(cfg: &SimConfig) -> Result<TrialResult> {
    cfg.validate()?;
    let parts = thread::scope(|s| {
        let handles: Vec<_> = (0..cfg.workers)
            .map(|w| s.spawn(move || simulate_worker(cfg, w)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation worker panicked"))
            .collect::<std::result::Result<Vec<_>, _>>()
    })?;
    Ok(merge_workers(cfg, parts)?)
}

/// Simulation settings for one carrier power of a run.
pub fn sim_config(rc: &RunConfig, power_dbm: Option<f64>) -> SimConfig {
    let mut setup = rc.setup();
    if let Some(p) = power_dbm {
        setup.channel.classical_power_dbm = Some(p);
    }
    SimConfig {
        protocol: rc.protocol,
        setup,
        rounds: rc.rounds,
        seed: rc.seed,
        workers: rc.workers,
        intensity_errors: rc.intensity_errors.clone(),
    }
}

/// Simulates every sweep point with the same seed.
pub fn run_sweep(rc: &RunConfig) -> Result<Vec<(f64, TrialResult)>> {
    rc.validate()?;
    rc.sweep
        .iter()
        .map(|&p| Ok((p, run_trial(&sim_config(rc, Some(p)))?)))
        .collect()
}

pub fn sweep_rows(rc: &RunConfig) -> Result<Vec<ResultRow>> {
    run_sweep(rc)?
        .iter()
        .map(|(p, r)| ResultRow::from_trial(*p, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use qrac_core::photonic::{simulate_trial, Protocol, Setup};

    #[test]
    fn threads_match_sequential() {
        for protocol in [Protocol::Qrac22, Protocol::Qrac24] {
            let mut cfg = SimConfig::new(protocol, Setup::default(), 40_003, 17);
            cfg.setup.source.mu = 5.0;
            cfg.workers = 5;
            assert_eq!(run_trial(&cfg).unwrap(), simulate_trial(&cfg).unwrap());
        }
    }
}
