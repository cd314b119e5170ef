use alloc::vec::Vec;

use super::{build_pulse_train, x_click_distribution, z_click_distribution, Protocol, Setup};
use crate::{Error, Result};

/// Large-sample limits of the post-selected estimates of [`super::simulate_trial`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedSuccess {
    pub p_z: f64,
    pub p_x: Option<f64>,
    pub m1: Option<f64>,
    pub m2: Option<f64>,
    pub m12: Option<f64>,
    /// Probability of a click in the arrival-time arm, averaged over messages.
    pub z_click: f64,
}

/// Exact pooled success probabilities for uniformly drawn messages.
///
/// Each pooled estimate is a ratio of sums, correct clicks over all clicks,
/// which is what counting over many rounds converges to.
pub fn expected_success(protocol: Protocol, setup: &Setup) -> Result<ExpectedSuccess> {
    let messages = protocol.messages();
    let mut z_correct = 0.0;
    let mut z_clicks = 0.0;
    let mut x_correct = 0.0;
    let mut x_clicks = 0.0;
    let mut half = [(0.0, 0.0); 2];
    for m in &messages {
        let train = build_pulse_train(m, protocol)?;
        let z = z_click_distribution(&train, setup)?;
        z_correct += z.bins[m.x1()];
        z_clicks += z.click();
        if protocol == Protocol::Qrac24 {
            let g = m.x1() / 2;
            half[g].0 += z.bins[2 * g] + z.bins[2 * g + 1];
            half[g].1 += z.click();
        } else {
            let x = x_click_distribution(&train, setup)?;
            x_correct += x.ports[m.x2()];
            x_clicks += x.conclusive();
        }
    }
    let p_z = z_correct / z_clicks;
    let z_click = z_clicks / messages.len() as f64;
    Ok(match protocol {
        Protocol::Qrac22 => ExpectedSuccess {
            p_z,
            p_x: Some(x_correct / x_clicks),
            m1: None,
            m2: None,
            m12: None,
            z_click,
        },
        Protocol::Qrac24 => ExpectedSuccess {
            p_z,
            p_x: None,
            m1: Some(half[0].0 / half[0].1),
            m2: Some(half[1].0 / half[1].1),
            m12: Some(p_z),
            z_click,
        },
    })
}

/// Raman coefficient at which the expected two-bin `p_Z` equals `target`
/// when the carrier runs at `power_dbm`, found by bisection in log scale.
pub fn calibrate_raman_coefficient(setup: &Setup, power_dbm: f64, target: f64) -> Result<f64> {
    if !power_dbm.is_finite() {
        return Err(Error::InvalidParameter {
            name: "power_dbm",
            value: power_dbm,
        });
    }
    let p_z_at = |log_coeff: f64| -> Result<f64> {
        let mut s = *setup;
        s.channel.raman_coefficient = libm::pow(10.0, log_coeff);
        s.channel.classical_power_dbm = Some(power_dbm);
        Ok(expected_success(Protocol::Qrac22, &s)?.p_z)
    };
    let (mut lo, mut hi) = (0.0, 20.0);
    let ends = [p_z_at(lo)?, p_z_at(hi)?];
    if !(ends[1] < target && target < ends[0]) {
        return Err(Error::InvalidParameter {
            name: "target",
            value: target,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p_z_at(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(libm::pow(10.0, 0.5 * (lo + hi)))
}

/// Expected two-bin `(p_Z, p_X)` at each carrier power.
pub fn expected_sweep(setup: &Setup, powers_dbm: &[f64]) -> Result<Vec<(f64, f64)>> {
    powers_dbm
        .iter()
        .map(|&p| {
            let s = Setup {
                channel: setup.channel.with_power(Some(p)),
                ..*setup
            };
            let e = expected_success(Protocol::Qrac22, &s)?;
            Ok((e.p_z, e.p_x.unwrap_or(f64::NAN)))
        })
        .collect()
}
