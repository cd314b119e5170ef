use alloc::vec::Vec;

use super::{DetectorModel, PulseTrain, Setup};
use crate::{Error, Result};

/// Exact per-round outcome of the arrival-time detector.
#[derive(Debug, Clone, PartialEq)]
pub struct ZDistribution {
    /// Probability that the first click of the round falls in each bin.
    pub bins: Vec<f64>,
    pub no_click: f64,
}

impl ZDistribution {
    pub fn click(&self) -> f64 {
        self.bins.iter().sum()
    }

    /// Bin distribution given that a click happened.
    pub fn conditional(&self) -> Vec<f64> {
        let c = self.click();
        self.bins.iter().map(|p| p / c).collect()
    }
}

/// Exact per-round outcome of the interferometer arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XDistribution {
    /// Conclusive decisions for bit 0 (constructive port) and bit 1.
    pub ports: [f64; 2],
    /// No click in the interfering slot.
    pub inconclusive: f64,
}

impl XDistribution {
    pub fn conclusive(&self) -> f64 {
        self.ports[0] + self.ports[1]
    }

    /// Probability of reading `bit` given a conclusive round.
    pub fn conditional(&self, bit: usize) -> f64 {
        self.ports[bit] / self.conclusive()
    }
}

fn upper_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x / core::f64::consts::SQRT_2)
}

/// Standard normal mass of `[lo, hi]`, accurate in both tails.
fn normal_mass(lo: f64, hi: f64) -> f64 {
    if lo >= 0.0 {
        upper_tail(lo) - upper_tail(hi)
    } else if hi <= 0.0 {
        upper_tail(-hi) - upper_tail(-lo)
    } else {
        1.0 - upper_tail(hi) - upper_tail(-lo)
    }
}

/// Probability that jitter moves a click emitted in bin `j` into the window of bin `j + shift`.
pub(crate) fn jitter_leak(shift: i64, spacing_ps: f64, det: &DetectorModel) -> f64 {
    let half = det.gate_width_ps / 2.0;
    let centre = shift as f64 * spacing_ps;
    if det.jitter_sigma_ps == 0.0 {
        return if shift == 0 { 1.0 } else { 0.0 };
    }
    let s = det.jitter_sigma_ps;
    normal_mass((centre - half) / s, (centre + half) / s)
}

/// Distribution of the detected bin of a signal photon, given one was detected.
/// Mass missing from the sum fell outside every window.
pub(crate) fn landing_distribution(train: &PulseTrain, det: &DetectorModel) -> Vec<f64> {
    let w = train.intensities();
    let n = w.len() as i64;
    (0..n)
        .map(|b| {
            (0..n)
                .map(|j| w[j as usize] * jitter_leak(b - j, train.bin_spacing_ps(), det))
                .sum()
        })
        .collect()
}

/// Arrival-time detection of one train.
///
/// A signal click happens with probability `1 − exp(−μ T η / 2)` and lands in
/// a bin drawn from the intensities, smeared by Gaussian jitter across the
/// window edges. Each window also fires on noise with probability
/// `(dark + Raman rate) × gate width`. The earliest click decides the round.
pub fn z_click_distribution(train: &PulseTrain, setup: &Setup) -> Result<ZDistribution> {
    setup.validate()?;
    let p_sig = setup.signal_click_probability();
    let noise = setup.noise_click_probability();
    let landing = landing_distribution(train, &setup.detector);

    let mut bins = Vec::with_capacity(landing.len());
    let mut quiet_before = 1.0;
    let mut signal_so_far = 0.0;
    for &l in &landing {
        let here = p_sig * l;
        signal_so_far += here;
        let signal_later = 1.0 - signal_so_far;
        bins.push(quiet_before * (here + noise * signal_later));
        quiet_before *= 1.0 - noise;
    }
    let no_click = 1.0 - bins.iter().sum::<f64>();
    Ok(ZDistribution { bins, no_click })
}

/// Phase readout of a two-pulse train through the delay-line interferometer.
///
/// Of a detected photon, half emerges in the interfering middle slot, split
/// between the ports as `(1 ± 2abV cos Δφ)/4`; the side slots are discarded.
/// Both detectors see noise in the middle slot; a double click is resolved by
/// a fair coin.
pub fn x_click_distribution(train: &PulseTrain, setup: &Setup) -> Result<XDistribution> {
    setup.validate()?;
    let visibility = setup.dli.visibility;
    let [first, second] = train.bins() else {
        return Err(Error::WrongTrainLength {
            expected: 2,
            found: train.len(),
        });
    };
    let interference = 2.0
        * first.amplitude
        * second.amplitude
        * visibility
        * first.phase.sign()
        * second.phase.sign();
    let p_sig = setup.signal_click_probability();
    let noise = setup.noise_click_probability();

    let sig = [
        p_sig * (1.0 + interference) / 4.0,
        p_sig * (1.0 - interference) / 4.0,
    ];
    let none = 1.0 - sig[0] - sig[1];
    let only = |k: usize| sig[k] * (1.0 - noise) + none * noise * (1.0 - noise);
    let both = (sig[0] + sig[1]) * noise + none * noise * noise;
    let ports = [only(0) + both / 2.0, only(1) + both / 2.0];
    Ok(XDistribution {
        ports,
        inconclusive: 1.0 - ports[0] - ports[1],
    })
}
