use proptest::prelude::*;
use qrac_core::quantum::{
    hermitian_eig, operator_norm, partial_trace, tensor, Matrix, Operand, PureState, Subsystem, C64,
};

fn hermitian(dim: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * dim).prop_map(move |v| {
        let raw: Vec<C64> = v.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
        let a = Matrix::from_row_major(dim, raw).unwrap();
        (&a + &a.adjoint()).scale(0.5)
    })
}

fn square(dim: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * dim).prop_map(move |v| {
        let raw = v.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
        Matrix::from_row_major(dim, raw).unwrap()
    })
}

fn state(dim: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim)
        .prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))
        .prop_map(|v| {
            PureState::normalized(v.chunks(2).map(|c| C64::new(c[0], c[1])).collect()).unwrap()
        })
}

fn check_eig(a: &Matrix) -> Result<(), TestCaseError> {
    let s = hermitian_eig(a).unwrap();
    let scale = a.frobenius_norm().max(1.0);
    prop_assert!(s.reconstruct().max_abs_diff(a) < 1e-9 * scale);
    let vs = s.eigenvectors();
    for (i, u) in vs.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            prop_assert!((u.inner(v) - C64::new(want, 0.0)).norm() < 1e-9);
        }
        let au = a.apply(u.amplitudes());
        let lambda = s.eigenvalues()[i];
        let resid: f64 = au
            .iter()
            .zip(u.amplitudes())
            .map(|(x, y)| (x - y * lambda).norm_sqr())
            .sum();
        prop_assert!(resid.sqrt() < 1e-9 * scale);
    }
    prop_assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn eig_reconstructs_dim2(a in hermitian(2)) { check_eig(&a)?; }

    #[test]
    fn eig_reconstructs_dim4(a in hermitian(4)) { check_eig(&a)?; }

    #[test]
    fn eig_reconstructs_dim8(a in hermitian(8)) { check_eig(&a)?; }

    #[test]
    fn eig_reconstructs_dim16(a in hermitian(16)) { check_eig(&a)?; }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn trace_equals_eigenvalue_sum(a in hermitian(8)) {
        let s = hermitian_eig(&a).unwrap();
        prop_assert!((s.eigenvalues().iter().sum::<f64>() - a.trace().re).abs() < 1e-9);
    }

    #[test]
    fn operator_norm_of_psd_is_largest_eigenvalue(b in square(4)) {
        let p = &b.adjoint() * &b;
        let top = hermitian_eig(&p).unwrap().max_eigenvalue();
        prop_assert!((operator_norm(&p).unwrap() - top).abs() < 1e-12);
        // Power iteration as an independent check.
        let mut v = vec![C64::new(1.0, 0.3); 4];
        for _ in 0..2000 {
            let w = p.apply(&v);
            let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n == 0.0 { break; }
            v = w.into_iter().map(|z| z / n).collect();
        }
        let rayleigh = p.quadratic_form(&v).re;
        prop_assert!(rayleigh <= top + 1e-9);
    }

    #[test]
    fn tensor_is_associative(a in square(2), b in square(2), c in square(2)) {
        prop_assert!(a.kron(&b).kron(&c).max_abs_diff(&a.kron(&b.kron(&c))) < 1e-12);
    }

    #[test]
    fn tensor_of_states_is_associative(x in state(2), y in state(2), z in state(3)) {
        let op = |s: &PureState| Operand::State(s.clone());
        let left = tensor(&tensor(&op(&x), &op(&y)).unwrap(), &op(&z)).unwrap();
        let right = tensor(&op(&x), &tensor(&op(&y), &op(&z)).unwrap()).unwrap();
        match (left, right) {
            (Operand::State(l), Operand::State(r)) => prop_assert!(l.max_abs_diff(&r) < 1e-12),
            _ => prop_assert!(false, "state tensor gave an operator"),
        }
    }

    #[test]
    fn partial_trace_of_product(a in square(2), b in square(4)) {
        let ab = a.kron(&b);
        let keep_a = partial_trace(&ab, (2, 4), Subsystem::First).unwrap();
        let keep_b = partial_trace(&ab, (2, 4), Subsystem::Second).unwrap();
        let tb = b.trace();
        let ta = a.trace();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((keep_a[(i, j)] - a[(i, j)] * tb).norm() < 1e-12);
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((keep_b[(i, j)] - b[(i, j)] * ta).norm() < 1e-12);
            }
        }
        prop_assert!((keep_a.trace() - ab.trace()).norm() < 1e-12);
    }

    #[test]
    fn kron_of_products_is_product_of_krons(a in square(2), b in square(2), c in square(2), d in square(2)) {
        let lhs = &a.kron(&b) * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }
}
