//! Quantum random access codes over mutually unbiased bases.
//!
//! The crate is `no_std` (with `alloc`) so the numerical core can be embedded
//! anywhere; IO, configuration and the command line live in `qrac-cli`.
//!
//! * [`quantum`]: dense complex linear algebra for states, effects and POVMs
//!   up to dimension [`MAX_DIM`].
//! * [`mub`]: Pauli, tensor-product and Fourier pairs of mutually unbiased bases.
//! * [`qrac`]: optimal (2,d) encodings, success probabilities, classical and
//!   quantum bounds, the advantage monotone and the proportional-fairness
//!   allocation figure.
//! * [`photonic`]: a Monte Carlo model of a time-bin weak-coherent-pulse
//!   implementation with dark counts, jitter, interferometer visibility and
//!   Raman noise from a co-propagating classical channel, plus PRBS tools.
//!
//! Basis indices use a big-endian digit convention throughout: for a product
//! of `n` qudits the left-most factor is the most significant base-`d` digit.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x >= 0.0)` is the NaN-rejecting range check throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod mub;
pub mod photonic;
pub mod qrac;
pub mod quantum;
mod tolerance;

pub use error::{Error, Result};
pub use tolerance::{Tolerances, MAX_DIM, TOL};
