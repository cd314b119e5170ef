use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Matrix, PureState, C64};
use crate::{Error, Result, TOL};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues ascend. Inside a degenerate cluster (neighbouring gaps below
/// `TOL.degenerate_gap`) the eigenvectors are ordered by their amplitudes,
/// rounded to `TOL.tie_break_round`, compared lexicographically as
/// `(re₀, im₀, re₁, im₁, …)`. Every eigenvector carries the [`PureState`]
/// phase convention.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<PureState>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[PureState] {
        &self.eigenvectors
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// Last eigenvector in the ordering: the top eigenvalue, and inside a
    /// degenerate top cluster the lexicographically greatest vector.
    pub fn top_eigenvector(&self) -> &PureState {
        &self.eigenvectors[self.eigenvectors.len() - 1]
    }

    /// `Σ λ_i |v_i⟩⟨v_i|`.
    pub fn reconstruct(&self) -> Matrix {
        let d = self.eigenvalues.len();
        let mut out = Matrix::zeros(d);
        for (&lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out = &out + &v.projector().scale(lambda);
        }
        out
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices up to `MAX_DIM`.
pub fn hermitian_eig(h: &Matrix) -> Result<Spectrum> {
    h.check_dim()?;
    h.check_hermitian(TOL.hermitian)?;
    let d = h.dim();

    let mut a = &h.scale(0.5) + &h.adjoint().scale(0.5);
    let mut v = Matrix::identity(d);
    let threshold = TOL.jacobi_offdiag * a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, PureState)> = (0..d)
        .map(|j| {
            let column: Vec<C64> = (0..d).map(|i| v[(i, j)]).collect();
            // Columns of a unitary are unit vectors; normalizing only removes rounding.
            let vector = PureState::normalized(column).expect("Jacobi column has unit norm");
            (a[(j, j)].re, vector)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && pairs[end].0 - pairs[end - 1].0 < TOL.degenerate_gap {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|x, y| tie_break(&x.1, &y.1));
        }
        start = end;
    }

    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Largest eigenvalue of a positive semidefinite matrix.
pub fn operator_norm(h: &Matrix) -> Result<f64> {
    let spectrum = hermitian_eig(h)?;
    let min = spectrum.eigenvalues()[0];
    if min < -TOL.positivity {
        return Err(Error::NotPositive(min));
    }
    Ok(spectrum.max_eigenvalue().max(0.0))
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let d = a.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}

/// Annihilates `a[p][q]` with `G = diag(1, e^{-iφ}) · R(θ)` acting on rows and columns `p, q`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = (apq / r).conj();
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let (g_pp, g_pq) = (C64::new(c, 0.0), C64::new(s, 0.0));
    let (g_qp, g_qq) = (phase * -s, phase * c);
    let d = a.dim();

    for k in 0..d {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..d {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..d {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

fn tie_break(x: &PureState, y: &PureState) -> Ordering {
    let key = |z: &C64| {
        (
            libm::round(z.re / TOL.tie_break_round) as i64,
            libm::round(z.im / TOL.tie_break_round) as i64,
        )
    };
    x.amplitudes()
        .iter()
        .map(key)
        .cmp(y.amplitudes().iter().map(key))
}
