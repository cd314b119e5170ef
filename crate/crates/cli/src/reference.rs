//! Measured values reported for the experimental link, used as the
//! comparison column of the reproduced tables.

/// Two-bin link without carrier: state, `p_Z`, `p_X`.
pub const QUBIT_STATES: [(&str, f64, f64); 4] = [
    ("00", 0.8537, 0.8502),
    ("01", 0.8532, 0.8140),
    ("10", 0.8520, 0.8184),
    ("11", 0.8555, 0.7937),
];

/// Four-bin link without carrier: measurement, `p`, advantage over the
/// classical bound.
pub const QUQUART_READOUTS: [(&str, f64, f64); 3] = [
    ("M1", 0.791, 0.041),
    ("M2", 0.829, 0.079),
    ("M12", 0.751, 0.126),
];

/// Two-bin `p_Z` the simulator should reproduce without carrier, and the
/// tolerance around it.
pub const P_Z_TARGET: f64 = 0.8536;
pub const P_Z_TOLERANCE: f64 = 0.005;
/// Accepted range of the two-bin `p_X` at the default visibility.
pub const P_X_BAND: (f64, f64) = (0.79, 0.86);

/// Carrier powers used by `fig4`/`fig5` when no sweep is configured.
pub const DEFAULT_SWEEP_DBM: [f64; 10] = [
    -40.0, -35.0, -30.0, -27.0, -26.0, -25.0, -24.0, -23.0, -20.0, -15.0,
];

/// Allowed rise between neighbouring sweep points, in combined standard errors.
pub const MONOTONE_SIGMAS: f64 = 3.0;
