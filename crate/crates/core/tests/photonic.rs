use qrac_core::photonic::prbs::{
    prbs_align, prbs_generate, prbs_generate_seeded, DEFAULT_ALIGN_THRESHOLD,
};
use qrac_core::photonic::{
    build_pulse_train, expected_success, simulate_trial, x_click_distribution,
    z_click_distribution, Protocol, Setup, SimConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bright(mut s: Setup) -> Setup {
    s.source.mu = 2.0;
    s
}

#[test]
fn errors_shrink_as_one_over_root_n() {
    let setup = bright(Setup::default());
    let exact = expected_success(Protocol::Qrac22, &setup).unwrap().p_z;
    let rms = |rounds: u64| {
        let sq: f64 = (0..24)
            .map(|seed| {
                let r =
                    simulate_trial(&SimConfig::new(Protocol::Qrac22, setup, rounds, seed)).unwrap();
                (r.p_z.unwrap().value - exact).powi(2)
            })
            .sum();
        (sq / 24.0).sqrt()
    };
    let e = [rms(10_000), rms(100_000), rms(1_000_000)];
    for w in e.windows(2) {
        let ratio = w[0] / w[1];
        // √10 ≈ 3.16; 24 replicas leave roughly ±30 % scatter on each RMS.
        assert!((1.6..6.5).contains(&ratio), "{e:?}");
    }
}

#[test]
fn simulation_agrees_with_closed_form() {
    for protocol in [Protocol::Qrac22, Protocol::Qrac24] {
        let mut setup = bright(Setup::default());
        setup.channel.classical_power_dbm = Some(-28.0);
        let e = expected_success(protocol, &setup).unwrap();
        let r = simulate_trial(&SimConfig::new(protocol, setup, 400_000, 99)).unwrap();
        let z = r.p_z.unwrap();
        assert!(
            (z.value - e.p_z).abs() < 4.0 * z.std_err,
            "{protocol:?} {z:?} {e:?}"
        );
        if let (Some(x), Some(px)) = (r.p_x, e.p_x) {
            assert!((x.value - px).abs() < 4.0 * x.std_err);
        }
        for (m, want) in [(r.m1, e.m1), (r.m2, e.m2)] {
            if let (Some(m), Some(w)) = (m, want) {
                assert!((m.value - w).abs() < 4.0 * m.std_err);
            }
        }
    }
}

#[test]
fn ideal_link_reaches_the_quantum_values() {
    let r = simulate_trial(&SimConfig::new(
        Protocol::Qrac22,
        bright(Setup::ideal()),
        300_000,
        5,
    ))
    .unwrap();
    for e in [r.p_z.unwrap(), r.p_x.unwrap()] {
        assert!(
            (e.value - 0.853_553_390_593_273_8).abs() < 4.0 * e.std_err,
            "{e:?}"
        );
    }
    let r = simulate_trial(&SimConfig::new(
        Protocol::Qrac24,
        bright(Setup::ideal()),
        300_000,
        5,
    ))
    .unwrap();
    let m12 = r.m12.unwrap();
    assert!((m12.value - 0.75).abs() < 4.0 * m12.std_err);
    for m in [r.m1.unwrap(), r.m2.unwrap()] {
        assert!((m.value - 5.0 / 6.0).abs() < 4.0 * m.std_err);
    }
}

#[test]
fn success_falls_with_carrier_power() {
    let base = Setup::default();
    let powers = [-40.0, -35.0, -30.0, -25.0, -20.0, -15.0];
    let mut last: Option<(f64, f64, f64, f64)> = None;
    for p in powers {
        let mut s = base;
        s.channel.classical_power_dbm = Some(p);
        let r = simulate_trial(&SimConfig::new(Protocol::Qrac22, s, 1_000_000, 3)).unwrap();
        let (z, x) = (r.p_z.unwrap(), r.p_x.unwrap());
        if let Some((pz, ez, px, ex)) = last {
            assert!(
                z.value <= pz + 3.0 * (ez * ez + z.std_err * z.std_err).sqrt(),
                "p_z at {p}"
            );
            assert!(
                x.value <= px + 3.0 * (ex * ex + x.std_err * x.std_err).sqrt(),
                "p_x at {p}"
            );
        }
        last = Some((z.value, z.std_err, x.value, x.std_err));
    }
}

#[test]
fn click_probabilities_are_complete() {
    let mut s = Setup::default();
    for power in [None, Some(-30.0), Some(-10.0), Some(10.0)] {
        s.channel.classical_power_dbm = power;
        for protocol in [Protocol::Qrac22, Protocol::Qrac24] {
            for m in protocol.messages() {
                let t = build_pulse_train(&m, protocol).unwrap();
                let z = z_click_distribution(&t, &s).unwrap();
                assert!((z.bins.iter().sum::<f64>() + z.no_click - 1.0).abs() < 1e-14);
                assert!(z.no_click >= 0.0);
                if protocol == Protocol::Qrac22 {
                    let x = x_click_distribution(&t, &s).unwrap();
                    assert!((x.ports[0] + x.ports[1] + x.inconclusive - 1.0).abs() < 1e-14);
                }
            }
        }
    }
}

#[test]
fn intensity_errors_move_the_four_bin_results() {
    let setup = bright(Setup::ideal());
    let mut cfg = SimConfig::new(Protocol::Qrac24, setup, 200_000, 8);
    let plain = simulate_trial(&cfg).unwrap();
    cfg.intensity_errors = Some(vec![1.0, 0.5, 0.9, 1.5]);
    let skewed = simulate_trial(&cfg).unwrap();
    assert_ne!(plain, skewed);
    assert!(simulate_trial(&SimConfig {
        intensity_errors: Some(vec![1.0, 2.0]),
        ..cfg
    })
    .is_err());
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |d| n.is_multiple_of(*d))
}

#[test]
fn every_order_has_maximal_period() {
    for k in 3..=23u32 {
        let s = prbs_generate(k).unwrap();
        let n = (1usize << k) - 1;
        assert_eq!(s.len(), n);
        for p in divisors(n) {
            assert!(
                (0..n).any(|i| s.bit(i) != s.bit(i + p)),
                "k = {k} repeats after {p}"
            );
        }
        let ones = s.bits().iter().filter(|&&b| b).count();
        assert_eq!(ones, 1 << (k - 1), "k = {k}");
    }
}

#[test]
fn seeds_of_order_seven_are_rotations() {
    let a = prbs_generate(7).unwrap();
    for seed in [1u32, 2, 77, 127] {
        let b = prbs_generate_seeded(7, seed).unwrap();
        assert!((0..127).any(|o| a.rotated(o) == b.bits()), "seed {seed}");
    }
}

#[test]
fn planted_offsets_recovered_under_flips() {
    let reference = prbs_generate(7).unwrap();
    let mut hits = 0;
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let offset = rng.random_range(0..127);
        let observed: Vec<Option<bool>> = (0..127)
            .map(|i| {
                let b = reference.bit(i + offset);
                Some(if rng.random_bool(0.05) { !b } else { b })
            })
            .collect();
        if prbs_align(&observed, &reference, DEFAULT_ALIGN_THRESHOLD) == Ok(offset) {
            hits += 1;
        }
    }
    assert!(hits >= 999, "{hits}/1000");
}
