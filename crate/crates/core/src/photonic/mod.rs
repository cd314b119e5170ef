//! Monte Carlo model of a time-bin, weak-coherent-pulse QRAC link.
//!
//! Alice carves trains of 800 ps spaced pulses whose intensities and relative
//! phases follow the optimal encodings from [`crate::qrac`]. The channel
//! attenuates and adds broadband Raman photons from a co-propagating classical
//! carrier. At Bob a 50:50 splitter picks the basis passively: one arm goes to
//! a single-photon detector reading the arrival bin (Z), the other through a
//! one-bin delay-line interferometer reading the relative phase (X).
//!
//! [`z_click_distribution`] and [`x_click_distribution`] give the exact
//! per-round outcome probabilities of that model; [`simulate_trial`] samples
//! the same model round by round. Rounds without a conclusive click are kept
//! in the counts but excluded from the success estimates.

mod calibration;
mod detection;
mod models;
pub mod prbs;
mod pulse;
mod sim;

pub use calibration::{
    calibrate_raman_coefficient, expected_success, expected_sweep, ExpectedSuccess,
};
pub use detection::{x_click_distribution, z_click_distribution, XDistribution, ZDistribution};
pub use models::{
    raman_rate, ChannelModel, DetectorModel, DliModel, Setup, SourceModel,
    DEFAULT_RAMAN_COEFFICIENT,
};
pub use prbs::{prbs_align, prbs_generate, PrbsSequence};
pub use pulse::{build_pulse_train, Phase, Protocol, Pulse, PulseTrain, BIN_SPACING_PS};
pub use sim::{
    merge_workers, simulate_trial, simulate_worker, BasisCounts, Estimate, SimConfig, StateCounts,
    TrialResult, WorkerCounts,
};
