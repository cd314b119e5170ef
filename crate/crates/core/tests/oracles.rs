//! Closed forms of the code checked against explicit computation.

use qrac_core::mub::{fourier_mub_pair, pauli_mub_pair, product_mub_pair};
use qrac_core::qrac::{
    advantage, average_success_probability, classical_bound, encoding_table,
    max_success_probability, quantum_bound, MeasurementPair, Message,
};
use qrac_core::quantum::{hermitian_eig, Basis, Effect, Matrix, Povm, PureState, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hermitian(rng: &mut impl Rng, d: usize) -> Matrix {
    let raw = (0..d * d)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let a = Matrix::from_row_major(d, raw).unwrap();
    (&a + &a.adjoint()).scale(0.5)
}

fn random_basis(rng: &mut impl Rng, d: usize) -> Basis {
    let s = hermitian_eig(&random_hermitian(rng, d)).unwrap();
    Basis::new(s.eigenvectors().to_vec()).unwrap()
}

/// Projective measurement blurred towards the trivial one by `t`.
fn noisy(basis: &Basis, t: f64) -> Povm {
    let d = basis.dim();
    let flat = Matrix::identity(d).scale(t / d as f64);
    Povm::new(
        basis
            .vectors()
            .iter()
            .map(|v| Effect::new(&v.projector().scale(1.0 - t) + &flat).unwrap())
            .collect(),
    )
    .unwrap()
}

fn random_pair(rng: &mut impl Rng, d: usize) -> MeasurementPair {
    let (b1, b2) = (random_basis(rng, d), random_basis(rng, d));
    if rng.random_bool(0.5) {
        MeasurementPair::new(Povm::from_basis(&b1), Povm::from_basis(&b2)).unwrap()
    } else {
        let (t1, t2) = (rng.random_range(0.0..0.6), rng.random_range(0.0..0.6));
        MeasurementPair::new(noisy(&b1, t1), noisy(&b2, t2)).unwrap()
    }
}

/// Largest eigenvalue by power iteration on a shifted copy, independent of
/// the Jacobi solver.
fn power_top(m: &Matrix) -> f64 {
    let d = m.dim();
    let shifted = &Matrix::identity(d).scale(2.0) + m;
    let mut v: Vec<C64> = (0..d)
        .map(|i| C64::new(1.0 + i as f64 * 0.1, 0.01 * i as f64))
        .collect();
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let w = shifted.apply(&v);
        let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v = w.into_iter().map(|z| z / n).collect();
        let next = shifted.quadratic_form(&v).re;
        if (next - lambda).abs() < 1e-15 {
            break;
        }
        lambda = next;
    }
    lambda - 2.0
}

#[test]
fn norm_formula_matches_explicit_average_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..200 {
        let d = [2, 3, 4][trial % 3];
        let pair = random_pair(&mut rng, d);
        let formula = max_success_probability(&pair).unwrap();
        let table = encoding_table(&pair).unwrap();
        let explicit = average_success_probability(&table, &pair).unwrap();
        assert!(
            (formula - explicit).abs() < 1e-9,
            "trial {trial}: {formula} vs {explicit}"
        );
        let by_power: f64 = Message::all(d)
            .map(|x| power_top(&pair.message_operator(&x)))
            .sum::<f64>()
            / (2 * d * d) as f64;
        assert!(
            (formula - by_power).abs() < 1e-7,
            "trial {trial}: {formula} vs {by_power}"
        );
        assert!(formula <= quantum_bound(d) + 1e-9);
        assert!(formula >= 1.0 / d as f64 - 1e-12);
    }
}

#[test]
fn qubit_optimum_matches_bloch_sphere_search() {
    let pair = MeasurementPair::from_mub(&pauli_mub_pair());
    let value = |theta: f64, phi: f64, x: &Message| {
        let psi = PureState::new(vec![
            C64::new((theta / 2.0).cos(), 0.0),
            C64::from_polar((theta / 2.0).sin(), phi),
        ])
        .unwrap();
        let m = pair.message_operator(x);
        m.quadratic_form(psi.amplitudes()).re / 2.0
    };
    let mut total = 0.0;
    for x in Message::all(2) {
        let mut best: f64 = 0.0;
        for t in 0..=180 {
            for p in 0..360 {
                best = best.max(value(
                    f64::from(t).to_radians(),
                    f64::from(p).to_radians(),
                    &x,
                ));
            }
        }
        total += best;
    }
    let grid = total / 4.0;
    let exact = max_success_probability(&pair).unwrap();
    // A one-degree grid sits at most (1 − cos 0.5°)/2 below the optimum per message.
    assert!(exact >= grid - 1e-12);
    assert!(exact - grid < 1e-4, "{exact} vs {grid}");
}

#[test]
fn mub_pairs_saturate_the_bound() {
    for d in 2..=8 {
        let pair = MeasurementPair::from_mub(&fourier_mub_pair(d).unwrap());
        assert!((max_success_probability(&pair).unwrap() - quantum_bound(d)).abs() < 1e-9);
        let a = advantage(&pair).unwrap().value;
        assert!((a - ((d as f64).sqrt() - 1.0) / d as f64).abs() < 1e-9);
    }
    let product = MeasurementPair::from_mub(&product_mub_pair(&pauli_mub_pair(), 3).unwrap());
    assert!((max_success_probability(&product).unwrap() - quantum_bound(8)).abs() < 1e-9);
}

#[test]
fn identical_measurements_give_no_advantage() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for d in 2..=4 {
        let b = random_basis(&mut rng, d);
        let pair = MeasurementPair::new(Povm::from_basis(&b), Povm::from_basis(&b)).unwrap();
        // Same measurement twice: the best strategy sends x₁ and guesses x₂.
        let want = 0.5 * (1.0 + 1.0 / d as f64);
        assert!((max_success_probability(&pair).unwrap() - want).abs() < 1e-9);
        assert!((want - classical_bound(d)).abs() < 1e-15);
        assert!(advantage(&pair).unwrap().value < 1e-12);
    }
}
