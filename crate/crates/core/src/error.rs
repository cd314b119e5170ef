use crate::MAX_DIM;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is outside the supported range 1..={MAX_DIM}")]
    UnsupportedDimension(usize),
    #[error("matrix is not Hermitian (max entrywise deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("operator is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("trace {0} differs from one")]
    BadTrace(f64),
    #[error("effect has eigenvalue {0} outside [0, 1]")]
    EffectOutOfRange(f64),
    #[error("POVM needs at least two outcomes, got {0}")]
    TooFewOutcomes(usize),
    #[error("effects do not resolve the identity (max deviation {0:e})")]
    NotResolution(f64),
    #[error("vectors are not orthonormal (max defect {0:e})")]
    NotOrthonormal(f64),
    #[error("cannot take the tensor product of a state with an operator")]
    KindMismatch,
    #[error("dimension {dim} does not factor as {d1} x {d2}")]
    BadFactorization { dim: usize, d1: usize, d2: usize },
    #[error("measurement is not projective (idempotency defect {0:e})")]
    NotProjective(f64),
    #[error("measurements must have {expected} outcomes, found {found}")]
    OutcomeCount { expected: usize, found: usize },
    #[error("digit {digit} is outside the alphabet 0..{alphabet}")]
    DigitOutOfRange { digit: usize, alphabet: usize },
    #[error("encoding table has {found} entries, expected {expected}")]
    IncompleteEncoding { expected: usize, found: usize },
    #[error("parameter `{name}` has invalid value {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("message {x1}{x2} is not encodable in this protocol")]
    UnsupportedMessage { x1: usize, x2: usize },
    #[error("pulse train has {found} bins, expected {expected}")]
    WrongTrainLength { expected: usize, found: usize },
    #[error("no PRBS tap set for register length {0}")]
    UnsupportedPrbsOrder(u32),
    #[error(
        "PRBS alignment failed: best offset {best_offset} agrees on {agreement:.3} of samples"
    )]
    AlignmentFailed { best_offset: usize, agreement: f64 },
}
