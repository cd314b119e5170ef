/// Largest Hilbert-space dimension handled by the dense routines (four qubits).
pub const MAX_DIM: usize = 16;

/// Numerical tolerances shared by every validity check in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed deviation of a squared norm from one.
    pub normalization: f64,
    /// Allowed entrywise deviation of `A` from `A†`.
    pub hermitian: f64,
    /// Allowed negative eigenvalue for positive semidefinite operators.
    pub positivity: f64,
    /// Allowed deviation of a density-matrix trace from one.
    pub trace: f64,
    /// Allowed entrywise deviation of `Σ M(i)` from the identity.
    pub resolution: f64,
    /// Allowed modulus of the inner product between distinct basis vectors.
    pub orthonormal: f64,
    /// Components with modulus below this are skipped when fixing the global phase.
    pub phase_modulus: f64,
    /// Off-diagonal Frobenius norm at which the Jacobi sweeps stop.
    pub jacobi_offdiag: f64,
    /// Eigenvalues closer than this are treated as one degenerate cluster.
    pub degenerate_gap: f64,
    /// Rounding quantum for the lexicographic tie-break inside a cluster.
    pub tie_break_round: f64,
    /// Allowed deviation of `P²` from `P` for a projector.
    pub projective: f64,
    /// Frobenius norm below which a commutator counts as zero.
    pub commutator: f64,
    /// Allowed unbiasedness defect for a mutually unbiased pair.
    pub unbiased: f64,
}

pub const TOL: Tolerances = Tolerances {
    normalization: 1e-10,
    hermitian: 1e-10,
    positivity: 1e-10,
    trace: 1e-10,
    resolution: 1e-10,
    orthonormal: 1e-10,
    phase_modulus: 1e-12,
    jacobi_offdiag: 1e-12,
    degenerate_gap: 1e-9,
    tie_break_round: 1e-8,
    projective: 1e-9,
    commutator: 1e-9,
    unbiased: 1e-9,
};
