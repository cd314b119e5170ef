//! Pairs of mutually unbiased bases.
//!
//! Only pairs are built, never complete sets of `d + 1` bases. Product pairs
//! index their vectors big-endian: vector `I` of the `n`-fold product is
//! `|b_{i₁}⟩ ⊗ … ⊗ |b_{iₙ}⟩` where `i₁ … iₙ` are the base-`d` digits of `I`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::quantum::{Basis, PureState, C64};
use crate::{Error, Result, MAX_DIM, TOL};

/// Two orthonormal bases with all squared overlaps equal to `1/d`.
#[derive(Debug, Clone, PartialEq)]
pub struct MubPair {
    first: Basis,
    second: Basis,
}

impl MubPair {
    pub fn new(first: Basis, second: Basis) -> Result<Self> {
        let defect = unbiasedness_defect(&first, &second)?;
        if defect >= TOL.unbiased {
            return Err(Error::NotOrthonormal(defect));
        }
        Ok(Self { first, second })
    }

    pub fn first(&self) -> &Basis {
        &self.first
    }

    pub fn second(&self) -> &Basis {
        &self.second
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }
}

/// Eigenbases of σ_z and σ_x: `{|0⟩, |1⟩}` and `{|+⟩, |−⟩}`.
pub fn pauli_mub_pair() -> MubPair {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let z = Basis::computational(2);
    let x = Basis::from_vectors_unchecked(alloc::vec![
        PureState::from_real(&[s, s]).expect("|+⟩ is normalized"),
        PureState::from_real(&[s, -s]).expect("|−⟩ is normalized"),
    ]);
    MubPair {
        first: z,
        second: x,
    }
}

/// `n`-fold tensor power of `base`, factor-wise on each basis.
pub fn product_mub_pair(base: &MubPair, n: u32) -> Result<MubPair> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
        });
    }
    let dim = base
        .dim()
        .checked_pow(n)
        .filter(|&d| d <= MAX_DIM)
        .ok_or(Error::UnsupportedDimension(base.dim().saturating_pow(n)))?;
    let mut first = base.first.clone();
    let mut second = base.second.clone();
    for _ in 1..n {
        first = first.tensor(&base.first);
        second = second.tensor(&base.second);
    }
    debug_assert_eq!(first.dim(), dim);
    Ok(MubPair { first, second })
}

/// Computational basis with the discrete Fourier basis `f_k(j) = e^{2πijk/d}/√d`.
pub fn fourier_mub_pair(dim: usize) -> Result<MubPair> {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    let norm = 1.0 / libm::sqrt(dim as f64);
    let second = (0..dim)
        .map(|k| {
            let amps: Vec<C64> = (0..dim)
                .map(|j| {
                    // Reduce the exponent mod d first so the angle stays exact-ish.
                    let angle = 2.0 * PI * ((j * k) % dim) as f64 / dim as f64;
                    C64::new(libm::cos(angle), libm::sin(angle)) * norm
                })
                .collect();
            PureState::normalized(amps).expect("Fourier vector is nonzero")
        })
        .collect();
    Ok(MubPair {
        first: Basis::computational(dim),
        second: Basis::from_vectors_unchecked(second),
    })
}

/// `max_{i,j} | |⟨e_i|f_j⟩|² − 1/d |`.
pub fn unbiasedness_defect(a: &Basis, b: &Basis) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let target = 1.0 / a.dim() as f64;
    let mut worst = 0.0f64;
    for e in a.vectors() {
        for f in b.vectors() {
            worst = worst.max((e.inner(f).norm_sqr() - target).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::hermitian_eig;

    #[test]
    fn pauli_pair_vectors() {
        let p = pauli_mub_pair();
        assert_eq!(p.first().vector(0), &PureState::basis(2, 0));
        assert_eq!(p.first().vector(1), &PureState::basis(2, 1));
        let f1 = p.second().vector(1).amplitudes();
        assert!((f1[0].re - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((f1[1].re + core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        for e in p.first().vectors() {
            for f in p.second().vectors() {
                assert!((e.inner(f).norm_sqr() - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn product_of_one_is_identity_operation() {
        assert_eq!(
            product_mub_pair(&pauli_mub_pair(), 1).unwrap(),
            pauli_mub_pair()
        );
    }

    #[test]
    fn two_qubit_product_f0_is_uniform() {
        let p = product_mub_pair(&pauli_mub_pair(), 2).unwrap();
        assert_eq!(p.dim(), 4);
        for z in p.second().vector(0).amplitudes() {
            assert!((z - C64::new(0.5, 0.0)).norm() < 1e-15);
        }
        // F₁ = |+⟩⊗|−⟩ = (1, −1, 1, −1)/2.
        let f1: Vec<f64> = p
            .second()
            .vector(1)
            .amplitudes()
            .iter()
            .map(|z| z.re)
            .collect();
        let expected = [0.5, -0.5, 0.5, -0.5];
        assert!(f1.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn product_cap_is_enforced() {
        assert!(matches!(
            product_mub_pair(&pauli_mub_pair(), 5),
            Err(Error::UnsupportedDimension(32))
        ));
        assert!(product_mub_pair(&pauli_mub_pair(), 0).is_err());
    }

    /// Brute-force enumeration of every overlap, independent of `unbiasedness_defect`.
    fn brute_force_overlaps(p: &MubPair) -> Vec<f64> {
        let d = p.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let e = p.first().vector(i).amplitudes();
                let f = p.second().vector(j).amplitudes();
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..d {
                    acc += e[k].conj() * f[k];
                }
                out.push(acc.norm_sqr());
            }
        }
        out
    }

    #[test]
    fn three_qubit_product_is_unbiased() {
        let p = product_mub_pair(&pauli_mub_pair(), 3).unwrap();
        let overlaps = brute_force_overlaps(&p);
        assert_eq!(overlaps.len(), 64);
        assert!(overlaps.iter().all(|o| (o - 0.125).abs() < 1e-12));
        assert!(unbiasedness_defect(p.first(), p.second()).unwrap() < 1e-12);
    }

    #[test]
    fn two_qubit_product_defect() {
        let p = product_mub_pair(&pauli_mub_pair(), 2).unwrap();
        let overlaps = brute_force_overlaps(&p);
        assert_eq!(overlaps.len(), 16);
        assert!(overlaps.iter().all(|o| (o - 0.25).abs() < 1e-12));
        assert!(unbiasedness_defect(p.first(), p.second()).unwrap() < 1e-12);
    }

    #[test]
    fn fourier_two_matches_pauli() {
        assert_eq!(
            fourier_mub_pair(2).unwrap().first(),
            pauli_mub_pair().first()
        );
        let f = fourier_mub_pair(2).unwrap();
        let p = pauli_mub_pair();
        for k in 0..2 {
            assert!(f.second().vector(k).max_abs_diff(p.second().vector(k)) < 1e-15);
        }
    }

    #[test]
    fn fourier_three_overlaps() {
        let overlaps = brute_force_overlaps(&fourier_mub_pair(3).unwrap());
        assert_eq!(overlaps.len(), 9);
        assert!(overlaps.iter().all(|o| (o - 1.0 / 3.0).abs() < 1e-12));
    }

    #[test]
    fn fourier_four_differs_from_product() {
        let f = fourier_mub_pair(4).unwrap();
        let p = product_mub_pair(&pauli_mub_pair(), 2).unwrap();
        assert!(unbiasedness_defect(f.first(), f.second()).unwrap() < 1e-12);
        // The sets differ: some Fourier vector has a non-real component; every product vector is real.
        assert!(f
            .second()
            .vectors()
            .iter()
            .any(|v| v.amplitudes().iter().any(|z| z.im.abs() > 0.4)));
        let is_in_product = |v: &PureState| {
            p.second()
                .vectors()
                .iter()
                .any(|w| v.inner(w).norm_sqr() > 1.0 - 1e-12)
        };
        assert!(!f.second().vectors().iter().all(is_in_product));
    }

    #[test]
    fn fourier_dimensions_all_unbiased_and_orthonormal() {
        for d in 2..=16 {
            let f = fourier_mub_pair(d).unwrap();
            assert!(
                unbiasedness_defect(f.first(), f.second()).unwrap() < 1e-12,
                "d = {d}"
            );
            Basis::new(f.second().vectors().to_vec()).unwrap();
        }
        assert!(fourier_mub_pair(1).is_err());
        assert!(fourier_mub_pair(17).is_err());
    }

    #[test]
    fn identical_bases_have_maximal_defect() {
        for d in [2, 4, 8] {
            let z = Basis::computational(d);
            let defect = unbiasedness_defect(&z, &z).unwrap();
            assert!((defect - (1.0 - 1.0 / d as f64)).abs() < 1e-15);
        }
        assert!(unbiasedness_defect(&Basis::computational(2), &Basis::computational(4)).is_err());
    }

    #[test]
    fn constructed_bases_are_orthonormal() {
        for n in 1..=4 {
            let p = product_mub_pair(&pauli_mub_pair(), n).unwrap();
            Basis::new(p.first().vectors().to_vec()).unwrap();
            Basis::new(p.second().vectors().to_vec()).unwrap();
            MubPair::new(p.first().clone(), p.second().clone()).unwrap();
        }
        // Eigen-decomposition of a basis projector recovers the vector (sanity).
        let h = pauli_mub_pair().second().vector(0).projector();
        assert!((hermitian_eig(&h).unwrap().max_eigenvalue() - 1.0).abs() < 1e-14);
    }
}
