use alloc::vec::Vec;

use super::{hermitian_eig, Matrix, PureState, QuantumState};
use crate::{Error, Result, TOL};

/// A POVM element: Hermitian with spectrum in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    matrix: Matrix,
}

impl Effect {
    pub fn new(matrix: Matrix) -> Result<Self> {
        matrix.check_dim()?;
        matrix.check_hermitian(TOL.hermitian)?;
        let spectrum = hermitian_eig(&matrix)?;
        let values = spectrum.eigenvalues();
        let (lo, hi) = (values[0], values[values.len() - 1]);
        if lo < -TOL.positivity {
            return Err(Error::EffectOutOfRange(lo));
        }
        if hi > 1.0 + TOL.positivity {
            return Err(Error::EffectOutOfRange(hi));
        }
        Ok(Self { matrix })
    }

    pub fn projector(state: &PureState) -> Self {
        Self {
            matrix: state.projector(),
        }
    }

    pub(crate) fn from_matrix_unchecked(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Largest entrywise deviation of `E²` from `E`.
    pub fn idempotency_defect(&self) -> f64 {
        (&self.matrix * &self.matrix).max_abs_diff(&self.matrix)
    }
}

/// Positive operator-valued measure with an ordered outcome list.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    effects: Vec<Effect>,
}

impl Povm {
    pub fn new(effects: Vec<Effect>) -> Result<Self> {
        if effects.len() < 2 {
            return Err(Error::TooFewOutcomes(effects.len()));
        }
        let dim = effects[0].dim();
        let mut sum = Matrix::zeros(dim);
        for e in &effects {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            sum = &sum + e.matrix();
        }
        let deviation = sum.max_abs_diff(&Matrix::identity(dim));
        if deviation > TOL.resolution {
            return Err(Error::NotResolution(deviation));
        }
        Ok(Self { effects })
    }

    /// The von Neumann measurement `{|b_i⟩⟨b_i|}`.
    pub fn from_basis(basis: &Basis) -> Self {
        Self {
            effects: basis.vectors().iter().map(Effect::projector).collect(),
        }
    }

    pub(crate) fn from_effects_unchecked(effects: Vec<Effect>) -> Self {
        Self { effects }
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn effect(&self, outcome: usize) -> &Effect {
        &self.effects[outcome]
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    pub fn is_projective(&self) -> bool {
        self.projective_defect() <= TOL.projective
    }

    pub fn projective_defect(&self) -> f64 {
        self.effects
            .iter()
            .map(Effect::idempotency_defect)
            .fold(0.0, f64::max)
    }

    /// Outcome distribution for `state`, in outcome order.
    pub fn probabilities<S: QuantumState>(&self, state: &S) -> Result<Vec<f64>> {
        self.effects
            .iter()
            .map(|e| born_probability(state, e))
            .collect()
    }
}

/// Orthonormal basis of `d` vectors in dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    vectors: Vec<PureState>,
}

impl Basis {
    pub fn new(vectors: Vec<PureState>) -> Result<Self> {
        let dim = vectors.first().map(PureState::dim).unwrap_or(0);
        if vectors.len() != dim || dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        let defect = orthonormality_defect(&vectors);
        if defect >= TOL.orthonormal {
            return Err(Error::NotOrthonormal(defect));
        }
        Ok(Self { vectors })
    }

    pub fn computational(dim: usize) -> Self {
        Self {
            vectors: (0..dim).map(|i| PureState::basis(dim, i)).collect(),
        }
    }

    pub(crate) fn from_vectors_unchecked(vectors: Vec<PureState>) -> Self {
        Self { vectors }
    }

    pub fn vectors(&self) -> &[PureState] {
        &self.vectors
    }

    pub fn vector(&self, index: usize) -> &PureState {
        &self.vectors[index]
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn tensor(&self, other: &Basis) -> Basis {
        let mut vectors = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.vectors {
            vectors.extend(other.vectors.iter().map(|b| a.tensor(b)));
        }
        Basis { vectors }
    }
}

/// Max over pairs of `|⟨v_i|v_j⟩ - δ_ij|`.
pub(crate) fn orthonormality_defect(vectors: &[PureState]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b).norm() - target).abs());
        }
    }
    worst
}

/// `Tr(ρ E)`, clamped into `[0, 1]`.
pub fn born_probability<S: QuantumState>(state: &S, effect: &Effect) -> Result<f64> {
    if state.dim() != effect.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: effect.dim(),
        });
    }
    Ok(state.expectation(effect.matrix()).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::DensityMatrix;
    use crate::quantum::C64;
    use alloc::vec;

    fn plus() -> PureState {
        PureState::from_real(&[1.0, 1.0]).unwrap()
    }

    #[test]
    fn born_rule_on_pauli_eigenstates() {
        let zero = PureState::basis(2, 0);
        let mx0 = Effect::projector(&plus());
        let mz0 = Effect::projector(&zero);
        assert!((born_probability(&zero, &mx0).unwrap() - 0.5).abs() < 1e-15);
        assert!((born_probability(&zero, &mz0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn born_rule_on_optimal_qubit_encoding() {
        // (a₁, b₁) with a₁ = √(2+√2)/2: Z outcome 0 has probability a₁² = (2+√2)/4.
        let a1 = libm::sqrt(2.0 + core::f64::consts::SQRT_2) / 2.0;
        let b1 = libm::sqrt(2.0 - core::f64::consts::SQRT_2) / 2.0;
        let s = PureState::from_real(&[a1, b1]).unwrap();
        let p = born_probability(&s, &Effect::projector(&PureState::basis(2, 0))).unwrap();
        assert!((p - 0.853_553_390_593_273_8).abs() < 1e-12);
    }

    #[test]
    fn born_rule_dimension_mismatch() {
        let e = Effect::projector(&PureState::basis(4, 0));
        assert!(matches!(
            born_probability(&PureState::basis(2, 0), &e),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn effect_spectrum_is_checked() {
        assert!(Effect::new(Matrix::from_diag(&[1.2, 0.0])).is_err());
        assert!(Effect::new(Matrix::from_diag(&[-0.1, 0.5])).is_err());
        assert!(Effect::new(Matrix::from_diag(&[0.3, 1.0])).is_ok());
    }

    #[test]
    fn povm_must_resolve_identity() {
        let a = Effect::new(Matrix::from_diag(&[0.5, 0.5])).unwrap();
        let b = Effect::new(Matrix::from_diag(&[0.5, 0.4])).unwrap();
        assert!(matches!(
            Povm::new(vec![a.clone(), b]),
            Err(Error::NotResolution(_))
        ));
        assert!(matches!(
            Povm::new(vec![a.clone()]),
            Err(Error::TooFewOutcomes(1))
        ));
        let trivial = Povm::new(vec![a.clone(), a]).unwrap();
        assert!(!trivial.is_projective());
    }

    #[test]
    fn basis_rejects_overlapping_vectors() {
        let v = vec![PureState::basis(2, 0), plus()];
        assert!(matches!(Basis::new(v), Err(Error::NotOrthonormal(_))));
        assert!(Basis::new(vec![PureState::basis(2, 0)]).is_err());
    }

    #[test]
    fn probabilities_sum_to_one_for_mixed_state() {
        let rho = DensityMatrix::new(
            Matrix::from_row_major(
                2,
                vec![
                    C64::new(0.7, 0.0),
                    C64::new(0.1, -0.2),
                    C64::new(0.1, 0.2),
                    C64::new(0.3, 0.0),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let x = Basis::new(vec![plus(), PureState::from_real(&[1.0, -1.0]).unwrap()]).unwrap();
        let p = Povm::from_basis(&x).probabilities(&rho).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!((p[0] - 0.6).abs() < 1e-14);
    }
}
