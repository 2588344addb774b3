use tfd_core::equivalence::{
    finite_product_decomposition, finite_product_residual, map_trotter_to_round, series_limits,
};
use tfd_core::fockspace::Cutoff;
use tfd_core::linalg::C64;
use tfd_core::tfd_states::{build_state, build_state_at, DisplacementParams, StateKind, ThermalParams};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Brute-force partial sums of the three slice series.
fn partial_sums(theta: f64, big_n: usize) -> (f64, f64, f64) {
    let nf = big_n as f64;
    let (mut s1, mut s2, mut s3) = (0.0, 0.0, 0.0);
    for m in 0..big_n {
        let x = m as f64 * theta / nf;
        s1 += (big_n - m) as f64 * x.sinh();
        s2 += x.cosh();
        s3 += x.sinh();
    }
    (s1 / (nf * nf), s2 / nf, s3 / nf)
}

#[test]
fn series_partial_sums_approach_limits() {
    for theta in [0.2, 0.4, 0.8] {
        let (s1, s2, s3) = partial_sums(theta, 1_000_000);
        let l = series_limits(theta);
        // first sum carries θ in front of the limit
        assert!((s1 - l.c1).abs() < 1e-5, "c1 at {theta}: {s1} vs {}", l.c1);
        assert!((s2 - l.c2).abs() < 1e-5);
        assert!((s3 - l.c3).abs() < 1e-5);
    }
}

#[test]
fn decomposition_matches_literal_product_on_grid() {
    let (alpha, zeta, theta) = (c(0.3, 0.0), c(0.0, 0.3), 0.2);
    let mut worst: f64 = 0.0;
    for big_n in 1..=16 {
        for n in 1..=big_n.min(8) {
            let r = finite_product_residual(alpha, zeta, theta, big_n, n, 20, 2).unwrap();
            worst = worst.max(r);
        }
    }
    assert!(worst <= 1e-9, "worst residual {worst}");
}

#[test]
fn decomposition_example_at_d25() {
    let r = finite_product_residual(c(0.3, 0.0), c(0.0, 0.3), 0.2, 8, 3, 25, 3).unwrap();
    assert!(r <= 1e-9, "{r}");
}

#[test]
fn full_product_agrees_with_continuum_to_first_order() {
    let (alpha, zeta, theta) = (c(0.5, 0.2), c(0.1, 0.4), 0.6);
    let eq = map_trotter_to_round(alpha, zeta, theta);
    let mut prev = f64::INFINITY;
    for big_n in [64, 128, 256, 512] {
        let fp = finite_product_decomposition(alpha, zeta, theta, big_n, big_n).unwrap();
        let err = (fp.alpha_n - eq.alpha_prime).norm() + (fp.zeta_n - eq.zeta_prime).norm();
        assert!(err < prev);
        if prev.is_finite() {
            assert!((prev / err - 2.0).abs() < 0.2);
        }
        prev = err;
    }
}

#[test]
fn equivalence_grid_on_tilde_invariant_inputs() {
    let cut = Cutoff::adaptive(1e-24);
    for mag in [0.4, 0.8, 1.2] {
        for phase in [0.0, 1.0, 2.5] {
            for theta in [0.2, 0.5, 0.8] {
                let alpha = C64::from_polar(mag, phase);
                let dp = DisplacementParams::tilde_invariant(alpha);
                let tp = ThermalParams::from_theta(theta).unwrap();
                let eq = map_trotter_to_round(alpha, alpha.conj(), theta);
                assert_eq!(eq.phase_theta, 0.0);
                let trotter = build_state(StateKind::Trotter, &dp, &tp, &cut).unwrap();
                let d = trotter.dim_per_mode();
                let mapped = DisplacementParams::new(eq.alpha_prime, eq.zeta_prime);
                let round = build_state_at(StateKind::Round, &mapped, &tp, d).unwrap();
                assert!(trotter.distance(&round.with_phase(eq.phase_theta)).unwrap() <= 1e-9);
                let double = build_state_at(StateKind::Double, &dp, &tp, d).unwrap();
                let (ar, zr) = tfd_core::equivalence::map_double_to_round(alpha, alpha.conj(), theta);
                let round = build_state_at(StateKind::Round, &DisplacementParams::new(ar, zr), &tp, d).unwrap();
                assert!(double.distance(&round).unwrap() <= 1e-9);
            }
        }
    }
}
