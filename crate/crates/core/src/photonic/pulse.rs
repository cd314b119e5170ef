use alloc::vec::Vec;

use crate::mub::{pauli_mub_pair, product_mub_pair};
use crate::qrac::{optimal_encoding, MeasurementPair, Message};
use crate::{Error, Result, TOL};

/// Distance between neighbouring pulses of a train.
pub const BIN_SPACING_PS: f64 = 800.0;

/// Which code the link runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Protocol {
    /// Two bits in a qubit: two time bins.
    #[cfg_attr(feature = "serde", serde(rename = "2,2"))]
    Qrac22,
    /// Two quarts in a ququart: four time bins, only messages `q0` are sent.
    #[cfg_attr(feature = "serde", serde(rename = "2,4"))]
    Qrac24,
}

impl Protocol {
    pub fn alphabet(self) -> usize {
        match self {
            Protocol::Qrac22 => 2,
            Protocol::Qrac24 => 4,
        }
    }

    pub fn bins(self) -> usize {
        self.alphabet()
    }

    /// Decoding pair whose optimal encodings the transmitter prepares.
    pub fn measurement_pair(self) -> MeasurementPair {
        let qubit = pauli_mub_pair();
        match self {
            Protocol::Qrac22 => MeasurementPair::from_mub(&qubit),
            Protocol::Qrac24 => MeasurementPair::from_mub(
                &product_mub_pair(&qubit, 2).expect("two qubits fit the dimension cap"),
            ),
        }
    }

    /// Messages the transmitter draws from, uniformly.
    ///
    /// The ququart link only prepares the subset with zero relative phase
    /// between every pulse, i.e. second quart equal to zero.
    pub fn messages(self) -> Vec<Message> {
        let d = self.alphabet();
        match self {
            Protocol::Qrac22 => Message::all(d).collect(),
            Protocol::Qrac24 => (0..d)
                .map(|q| Message::new(q, 0, d).expect("digit in range"))
                .collect(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Protocol::Qrac22 => "2,2",
            Protocol::Qrac24 => "2,4",
        }
    }
}

impl core::str::FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "2,2" | "22" | "(2,2)" => Ok(Protocol::Qrac22),
            "2,4" | "24" | "(2,4)" => Ok(Protocol::Qrac24),
            _ => Err(Error::InvalidParameter {
                name: "protocol",
                value: f64::NAN,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Zero,
    Pi,
}

impl Phase {
    pub fn radians(self) -> f64 {
        match self {
            Phase::Zero => 0.0,
            Phase::Pi => core::f64::consts::PI,
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Phase::Zero => 1.0,
            Phase::Pi => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    pub amplitude: f64,
    pub phase: Phase,
}

/// Amplitudes and phases of one encoded optical state, one entry per time bin.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseTrain {
    bins: Vec<Pulse>,
    bin_spacing_ps: f64,
}

impl PulseTrain {
    pub fn new(bins: Vec<Pulse>) -> Result<Self> {
        if bins.len() != 2 && bins.len() != 4 {
            return Err(Error::WrongTrainLength {
                expected: 2,
                found: bins.len(),
            });
        }
        if let Some(p) = bins.iter().find(|p| !(p.amplitude >= 0.0)) {
            return Err(Error::InvalidParameter {
                name: "amplitude",
                value: p.amplitude,
            });
        }
        let norm: f64 = bins.iter().map(|p| p.amplitude * p.amplitude).sum();
        if (norm - 1.0).abs() > TOL.normalization {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            bins,
            bin_spacing_ps: BIN_SPACING_PS,
        })
    }

    pub fn bins(&self) -> &[Pulse] {
        &self.bins
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn bin_spacing_ps(&self) -> f64 {
        self.bin_spacing_ps
    }

    /// Photon arrival probability per bin, `amplitude²`.
    pub fn intensities(&self) -> Vec<f64> {
        self.bins
            .iter()
            .map(|p| p.amplitude * p.amplitude)
            .collect()
    }

    /// Rescales bin intensities by `factors` and renormalizes, modelling
    /// imperfect carving by the intensity modulator.
    pub fn with_intensity_errors(&self, factors: &[f64]) -> Result<Self> {
        if factors.len() != self.bins.len() {
            return Err(Error::WrongTrainLength {
                expected: self.bins.len(),
                found: factors.len(),
            });
        }
        if let Some(&f) = factors.iter().find(|f| !(**f >= 0.0) || !f.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "intensity_error",
                value: f,
            });
        }
        let scaled: Vec<f64> = self
            .intensities()
            .iter()
            .zip(factors)
            .map(|(w, f)| w * f)
            .collect();
        let total: f64 = scaled.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidParameter {
                name: "intensity_error",
                value: total,
            });
        }
        let bins = self
            .bins
            .iter()
            .zip(&scaled)
            .map(|(p, w)| Pulse {
                amplitude: libm::sqrt(w / total),
                phase: p.phase,
            })
            .collect();
        Ok(Self {
            bins,
            bin_spacing_ps: self.bin_spacing_ps,
        })
    }
}

/// Pulse train carrying the optimal encoding of `x`.
pub fn build_pulse_train(x: &Message, protocol: Protocol) -> Result<PulseTrain> {
    if x.alphabet() != protocol.alphabet() {
        return Err(Error::DimensionMismatch {
            expected: protocol.alphabet(),
            found: x.alphabet(),
        });
    }
    if protocol == Protocol::Qrac24 && x.x2() != 0 {
        return Err(Error::UnsupportedMessage {
            x1: x.x1(),
            x2: x.x2(),
        });
    }
    let state = optimal_encoding(&protocol.measurement_pair(), x)?;
    let bins = state
        .amplitudes()
        .iter()
        .map(|z| {
            // Optimal encodings of these pairs are real after the phase convention.
            debug_assert!(z.im.abs() < 1e-12);
            Pulse {
                amplitude: z.re.abs(),
                phase: if z.re < 0.0 { Phase::Pi } else { Phase::Zero },
            }
        })
        .collect();
    PulseTrain::new(bins)
}
