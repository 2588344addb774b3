use tfd_core::fockspace::{Cutoff, Slot};
use tfd_core::linalg::C64;
use tfd_core::observables::{
    analytic_moments, cf_full, chi_signal, numeric_cf, numeric_chi, state_moments, uncertainty_product,
    PhysicalConstants,
};
use tfd_core::tfd_states::{build_state, round_equivalent, DisplacementParams, StateKind, ThermalParams};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn tight() -> Cutoff {
    Cutoff::adaptive(1e-24)
}

#[test]
fn uncertainty_product_is_displacement_independent() {
    let pc = PhysicalConstants::new(1.3, 0.7, 1.0).unwrap();
    for theta in [0.0, 0.3, 0.7] {
        let tp = ThermalParams::from_theta(theta).unwrap();
        let expected = uncertainty_product(theta, &pc);
        for alpha in [c(0.0, 0.0), c(0.9, -0.4), c(-1.1, 0.6)] {
            for kind in StateKind::ALL {
                let st = build_state(kind, &DisplacementParams::tilde_invariant(alpha), &tp, &tight()).unwrap();
                let m = state_moments(&st, &pc).unwrap();
                assert!((m.uncertainty_product() - expected).abs() < 1e-7, "{kind} {alpha} {theta}");
                assert!(m.uncertainty_product() >= 0.5 * pc.hbar() - 1e-12);
                let a = analytic_moments(kind, alpha, theta, &pc);
                assert!((m.mean_q - a.mean_q).abs() < 1e-8);
                assert!((m.mean_p - a.mean_p).abs() < 1e-8);
                assert!((m.var_q - a.var_q).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn full_cf_matches_truncated_state() {
    let (alpha, zeta, theta) = (c(0.6, -0.3), c(0.2, 0.5), 0.35);
    let tp = ThermalParams::from_theta(theta).unwrap();
    let st = build_state(StateKind::Round, &DisplacementParams::new(alpha, zeta), &tp, &Cutoff::fixed(35)).unwrap();
    for (g, gp) in [(c(0.3, 0.1), c(-0.2, 0.4)), (c(-0.5, 0.0), c(0.0, 0.0)), (c(0.1, -0.7), c(0.6, 0.2))] {
        let num = numeric_cf(&st, g, gp).unwrap();
        let closed = cf_full(alpha, zeta, theta, g, gp);
        assert!((num - closed).norm() < 1e-9, "{num} vs {closed}");
    }
}

#[test]
fn cf_of_other_kinds_through_round_equivalent() {
    let (alpha, zeta, theta) = (c(0.4, 0.3), c(-0.1, 0.5), 0.5);
    let tp = ThermalParams::from_theta(theta).unwrap();
    let dp = DisplacementParams::new(alpha, zeta);
    for kind in [StateKind::Double, StateKind::Trotter] {
        let st = build_state(kind, &dp, &tp, &tight()).unwrap();
        let (ar, zr, _) = round_equivalent(kind, &dp, theta);
        let (g, gp) = (c(0.2, -0.3), c(0.4, 0.1));
        assert!((numeric_cf(&st, g, gp).unwrap() - cf_full(ar, zr, theta, g, gp)).norm() < 1e-9);
    }
}

#[test]
fn reduced_chi_matches_signal_form() {
    let (alpha, theta) = (c(0.7, 0.2), 0.4);
    let tp = ThermalParams::from_theta(theta).unwrap();
    let st = build_state(StateKind::Round, &DisplacementParams::tilde_invariant(alpha), &tp, &tight()).unwrap();
    let rho = st.reduced(Slot::Ordinary);
    for eta in [c(0.0, 0.0), c(0.5, 0.5), c(-1.2, 0.3), c(0.0, 2.0)] {
        let num = numeric_chi(&rho, eta);
        assert!((num - chi_signal(alpha, theta, eta)).norm() < 1e-10, "{eta}");
        // reduced CF is the full CF with γ′ = 0
        assert!((num - cf_full(alpha, alpha.conj(), theta, eta, c(0.0, 0.0))).norm() < 1e-10);
    }
}

#[test]
fn second_derivative_of_chi_gives_momentum_variance() {
    let (alpha, theta) = (c(0.5, -0.4), 0.3);
    let pc = PhysicalConstants::default();
    let h = 1e-4;
    let f = |eta: C64| chi_signal(alpha, theta, eta);
    // for real η = t, D(t) = exp(−i√2 t p) with p = i(a† − a)/√2
    let second = -((f(c(h, 0.0)) + f(c(-h, 0.0)) - 2.0 * f(c(0.0, 0.0))) / (h * h)).re / 2.0;
    let a = analytic_moments(StateKind::Round, alpha, theta, &pc);
    let p2 = a.var_p + a.mean_p * a.mean_p;
    assert!((second - p2).abs() < 1e-5, "{second} vs {p2}");
}
