//! Finite-dimensional quantum mechanics on dense complex matrices.
//!
//! Everything here is exact up to floating point: no sampling, no global
//! state. Dimensions are capped at [`MAX_DIM`](crate::MAX_DIM).

mod eigen;
mod matrix;
mod measurement;
mod ops;
mod state;

pub use eigen::{hermitian_eig, operator_norm, Spectrum};
pub use matrix::{Matrix, C64};
pub use measurement::{born_probability, Basis, Effect, Povm};
pub use ops::{partial_trace, tensor, Operand, Subsystem};
pub use state::{DensityMatrix, PureState, QuantumState};
