use super::BIN_SPACING_PS;
use crate::{Error, Result};

/// Raman noise clicks per second per watt of co-propagating classical power.
///
/// Calibration constant, not a scattering model: it places the crossing of
/// the pooled (2,2) Z-basis success probability through the classical bound
/// 0.75 at −25 dBm under the default source, channel and detector models.
/// Recompute with [`calibrate_raman_coefficient`](super::calibrate_raman_coefficient).
pub const DEFAULT_RAMAN_COEFFICIENT: f64 = 1.337_55e11;

fn invalid(name: &'static str, value: f64) -> Error {
    Error::InvalidParameter { name, value }
}

/// Attenuated laser source.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SourceModel {
    /// Mean photon number per train.
    pub mu: f64,
    /// Time between the starts of consecutive trains.
    pub rep_period_ps: f64,
}

impl Default for SourceModel {
    fn default() -> Self {
        Self {
            mu: 0.2,
            rep_period_ps: 4.0 * BIN_SPACING_PS,
        }
    }
}

impl SourceModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) || !self.mu.is_finite() {
            return Err(invalid("source.mu", self.mu));
        }
        if !(self.rep_period_ps > 0.0) || !self.rep_period_ps.is_finite() {
            return Err(invalid("source.rep_period_ps", self.rep_period_ps));
        }
        Ok(())
    }
}

/// Fibre link with optional coexisting classical traffic.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ChannelModel {
    pub loss_db: f64,
    pub raman_coefficient: f64,
    /// `None` means the classical carrier is off.
    pub classical_power_dbm: Option<f64>,
}

impl Default for ChannelModel {
    fn default() -> Self {
        Self {
            loss_db: 10.0,
            raman_coefficient: DEFAULT_RAMAN_COEFFICIENT,
            classical_power_dbm: None,
        }
    }
}

impl ChannelModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.loss_db >= 0.0) || !self.loss_db.is_finite() {
            return Err(invalid("channel.loss_db", self.loss_db));
        }
        if !(self.raman_coefficient >= 0.0) || !self.raman_coefficient.is_finite() {
            return Err(invalid("channel.raman_coefficient", self.raman_coefficient));
        }
        if let Some(p) = self.classical_power_dbm {
            if p.is_nan() || p == f64::INFINITY {
                return Err(invalid("channel.classical_power_dbm", p));
            }
        }
        Ok(())
    }

    pub fn transmittance(&self) -> f64 {
        libm::pow(10.0, -self.loss_db / 10.0)
    }

    /// Raman click rate reaching each detector.
    pub fn noise_rate_hz(&self) -> f64 {
        self.classical_power_dbm
            .map_or(0.0, |p| raman_rate(p, self.raman_coefficient))
    }

    pub fn with_power(mut self, power_dbm: Option<f64>) -> Self {
        self.classical_power_dbm = power_dbm;
        self
    }
}

/// `coeff · 10^((P_dBm − 30)/10)`: linear in the optical power in watts.
pub fn raman_rate(power_dbm: f64, coeff: f64) -> f64 {
    if power_dbm == f64::NEG_INFINITY {
        return 0.0;
    }
    coeff * libm::pow(10.0, (power_dbm - 30.0) / 10.0)
}

/// Single-photon avalanche diode.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct DetectorModel {
    pub efficiency: f64,
    pub dark_rate_hz: f64,
    /// Standard deviation of the Gaussian timing jitter.
    pub jitter_sigma_ps: f64,
    /// Width of the detection window centred on each time bin.
    pub gate_width_ps: f64,
}

impl Default for DetectorModel {
    fn default() -> Self {
        Self {
            efficiency: 0.20,
            dark_rate_hz: 2500.0,
            jitter_sigma_ps: 200.0,
            gate_width_ps: BIN_SPACING_PS,
        }
    }
}

impl DetectorModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(invalid("detector.efficiency", self.efficiency));
        }
        if !(self.dark_rate_hz >= 0.0) || !self.dark_rate_hz.is_finite() {
            return Err(invalid("detector.dark_rate_hz", self.dark_rate_hz));
        }
        if !(self.jitter_sigma_ps >= 0.0) || !self.jitter_sigma_ps.is_finite() {
            return Err(invalid("detector.jitter_sigma_ps", self.jitter_sigma_ps));
        }
        // Windows may not overlap: each click belongs to at most one bin.
        if !(self.gate_width_ps > 0.0 && self.gate_width_ps <= BIN_SPACING_PS) {
            return Err(invalid("detector.gate_width_ps", self.gate_width_ps));
        }
        Ok(())
    }
}

/// Unbalanced Mach-Zehnder with a one-bin delay.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct DliModel {
    pub delay_ps: f64,
    pub visibility: f64,
}

impl Default for DliModel {
    fn default() -> Self {
        Self {
            delay_ps: BIN_SPACING_PS,
            visibility: 0.90,
        }
    }
}

impl DliModel {
    pub fn validate(&self) -> Result<()> {
        if (self.delay_ps - BIN_SPACING_PS).abs() > 1e-9 {
            return Err(invalid("dli.delay_ps", self.delay_ps));
        }
        if !(0.0..=1.0).contains(&self.visibility) {
            return Err(invalid("dli.visibility", self.visibility));
        }
        Ok(())
    }
}

/// Every device model of the link.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct Setup {
    pub source: SourceModel,
    pub channel: ChannelModel,
    pub detector: DetectorModel,
    pub dli: DliModel,
}

impl Setup {
    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.channel.validate()?;
        self.detector.validate()?;
        self.dli.validate()
    }

    /// No dark counts, no jitter, perfect interference, carrier off.
    pub fn ideal() -> Self {
        let mut s = Self::default();
        s.detector.dark_rate_hz = 0.0;
        s.detector.jitter_sigma_ps = 0.0;
        s.dli.visibility = 1.0;
        s.channel.classical_power_dbm = None;
        s
    }

    /// Mean signal photons reaching one detector arm after the 50:50 splitter.
    pub fn arm_mean_photons(&self) -> f64 {
        self.source.mu * self.channel.transmittance() * self.detector.efficiency * 0.5
    }

    /// Probability of at least one signal click in one arm.
    pub fn signal_click_probability(&self) -> f64 {
        -libm::expm1(-self.arm_mean_photons())
    }

    /// Probability of a noise click in one detection window.
    pub fn noise_click_probability(&self) -> f64 {
        let rate = self.detector.dark_rate_hz + self.channel.noise_rate_hz();
        (rate * self.detector.gate_width_ps * 1e-12).min(1.0)
    }
}
