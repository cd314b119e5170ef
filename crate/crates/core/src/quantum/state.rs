use alloc::vec;
use alloc::vec::Vec;

use super::{hermitian_eig, Matrix, C64};
use crate::{Error, Result, TOL};

/// Normalized state vector with a fixed global phase.
///
/// The first component whose modulus exceeds `TOL.phase_modulus` is made real
/// and nonnegative, so equal rays compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Accepts an already normalized vector and fixes its phase.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        check_len(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > TOL.normalization {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self::with_phase_convention(amplitudes))
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        check_len(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !(norm_sqr > 0.0) || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized(norm_sqr));
        }
        let inv = 1.0 / libm::sqrt(norm_sqr);
        for z in &mut amplitudes {
            *z *= inv;
        }
        Ok(Self::with_phase_convention(amplitudes))
    }

    /// Real amplitudes, normalized.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dimension {dim}"
        );
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    fn with_phase_convention(mut amplitudes: Vec<C64>) -> Self {
        if let Some(lead) = amplitudes.iter().find(|z| z.norm() > TOL.phase_modulus) {
            let phase = lead.conj() / lead.norm();
            for z in &mut amplitudes {
                *z *= phase;
            }
        }
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> Matrix {
        Matrix::outer(&self.amplitudes, &self.amplitudes)
    }

    /// `|self⟩ ⊗ |other⟩`, big-endian.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        Self::with_phase_convention(amplitudes)
    }

    /// Largest entrywise modulus difference, ignoring nothing: phases are already fixed.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 || len > crate::MAX_DIM {
        Err(Error::UnsupportedDimension(len))
    } else {
        Ok(())
    }
}

/// Positive semidefinite operator of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix,
}

impl DensityMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        matrix.check_dim()?;
        matrix.check_hermitian(TOL.hermitian)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TOL.trace {
            return Err(Error::BadTrace(trace));
        }
        let min = hermitian_eig(&matrix)?.eigenvalues()[0];
        if min < -TOL.positivity {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { matrix })
    }

    pub fn from_pure(state: &PureState) -> Self {
        Self {
            matrix: state.projector(),
        }
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: Matrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Skips validation; callers guarantee the invariants hold by construction.
    pub(crate) fn from_matrix_unchecked(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// Anything that assigns expectation values to operators.
pub trait QuantumState {
    fn dim(&self) -> usize;

    /// `Tr(ρ A)`, real part; exact for Hermitian `A`.
    fn expectation(&self, op: &Matrix) -> f64;

    fn to_density(&self) -> DensityMatrix;
}

impl QuantumState for PureState {
    fn dim(&self) -> usize {
        PureState::dim(self)
    }

    fn expectation(&self, op: &Matrix) -> f64 {
        op.quadratic_form(&self.amplitudes).re
    }

    fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

impl QuantumState for DensityMatrix {
    fn dim(&self) -> usize {
        DensityMatrix::dim(self)
    }

    fn expectation(&self, op: &Matrix) -> f64 {
        let d = self.dim();
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += (self.matrix[(i, j)] * op[(j, i)]).re;
            }
        }
        acc
    }

    fn to_density(&self) -> DensityMatrix {
        self.clone()
    }
}
