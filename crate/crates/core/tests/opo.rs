use tfd_core::equivalence::map_trotter_to_round;
use tfd_core::fockspace::{coherent_vector, Cutoff, TwoModeState, DEFAULT_EXPM_TOL};
use tfd_core::gaussian_oracle::{moments_from_cf, reduce_to_signal};
use tfd_core::linalg::C64;
use tfd_core::opo::{
    closed_state, closed_unitary, h_drive, h_interaction, signal_density, sliced_unitary, OpoParams, SliceOrder,
};
use tfd_core::tfd_states::{build_state_at, thermalizing_U, DisplacementParams, StateKind, ThermalParams};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn interaction_evolution_is_thermalizing_operator() {
    let d = 20;
    let (chi2, t1) = (0.5, 0.8);
    let evo = h_interaction(chi2, d).unwrap().scale(c(0.0, -t1)).exp(DEFAULT_EXPM_TOL).unwrap();
    let u = thermalizing_U(chi2 * t1, d).unwrap();
    assert!(evo.sub(&u).unwrap().max_abs() < 1e-12);
}

#[test]
fn drive_evolution_gives_coherent_product() {
    let d = 20;
    let (gs, gi, t2) = (c(0.3, -0.1), c(0.2, 0.25), 1.5);
    let evo = h_drive(gs, gi, d).unwrap().scale(c(0.0, -t2)).exp(DEFAULT_EXPM_TOL).unwrap();
    let out = evo.apply(TwoModeState::vacuum(d).unwrap().amplitudes());
    let u = coherent_vector(gs * t2, d, 1.0).unwrap().amplitudes;
    let v = coherent_vector(gi * t2, d, 1.0).unwrap().amplitudes;
    let oracle = TwoModeState::product(&u, &v).unwrap();
    for n in 0..10 {
        for m in 0..10 {
            assert!((out[n * d + m] - oracle.amplitude(n, m)).norm() < 1e-12);
        }
    }
}

#[test]
fn sliced_unitary_converges_at_first_order() {
    let d = 30;
    let base = OpoParams::new(0.5, c(0.4, 0.0), c(0.4, 0.0), 0.8, 2.0, 32).unwrap();
    let closed = closed_unitary(&base, d).unwrap();
    let err = |n: usize| {
        let u = sliced_unitary(&base.with_round_trips(n).unwrap(), d, SliceOrder::InteractionFirst).unwrap();
        u.sub(&closed).unwrap().op_norm()
    };
    let ratio = err(32) / err(64);
    assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn closed_evolution_is_trotter_state() {
    let op = OpoParams::new(0.5, c(0.35, 0.0), c(0.35, 0.0), 1.0, 2.0, 1).unwrap();
    let d = 30;
    let from_unitary = closed_unitary(&op, d).unwrap().apply(TwoModeState::vacuum(d).unwrap().amplitudes());
    let tp = ThermalParams::from_theta(op.theta()).unwrap();
    let dp = DisplacementParams::new(op.gamma_s(), op.gamma_i());
    let trotter = build_state_at(StateKind::Trotter, &dp, &tp, d).unwrap();
    let diff: f64 = from_unitary.iter().zip(trotter.amplitudes()).map(|(a, b)| (a - b).norm_sqr()).sum();
    assert!(diff.sqrt() <= 1e-10);
    let cut = Cutoff::adaptive(1e-24);
    let st = closed_state(&op, &cut).unwrap();
    let reference = build_state_at(StateKind::Trotter, &dp, &tp, st.dim_per_mode()).unwrap();
    assert!(st.distance(&reference).unwrap() <= 1e-9);
    // independent of the combined generator: the phased U·D form
    let eq = map_trotter_to_round(op.gamma_s(), op.gamma_i(), op.theta());
    let round = build_state_at(
        StateKind::Round,
        &DisplacementParams::new(eq.alpha_prime, eq.zeta_prime),
        &tp,
        st.dim_per_mode(),
    )
    .unwrap();
    assert!(st.distance(&round.with_phase(eq.phase_theta)).unwrap() <= 1e-9);
}

#[test]
fn undriven_signal_is_thermal() {
    let op = OpoParams::new(0.6, c(0.0, 0.0), c(0.0, 0.0), 0.7, 1.0, 1).unwrap();
    let rho = signal_density(&op, &Cutoff::adaptive(1e-20)).unwrap();
    let theta = op.theta();
    let t = theta.tanh().powi(2);
    for n in 0..15 {
        assert!((rho.as_array()[[n, n]].re - (1.0 - t) * t.powi(n as i32)).abs() < 1e-12);
    }
    assert!((rho.mean_photon_number() - theta.sinh().powi(2)).abs() < 1e-10);
}

#[test]
fn driven_signal_matches_oracle() {
    let op = OpoParams::new(0.5, c(0.4, 0.0), c(0.4, 0.0), 0.8, 2.0, 1).unwrap();
    let rho = signal_density(&op, &Cutoff::adaptive(1e-20)).unwrap();
    let rg = reduce_to_signal(&moments_from_cf(StateKind::Trotter, op.gamma_s(), op.gamma_i(), op.theta()));
    assert!((rho.purity() - 1.0 / (2.0 * op.theta()).cosh()).abs() < 1e-7);
    assert!((rho.purity() - rg.purity()).abs() < 1e-7);
    assert!((rho.mean_photon_number() - rg.mean_photon_number()).abs() < 1e-7);
    let expected = rho.mean_amplitude().norm_sqr() + op.theta().sinh().powi(2);
    assert!((rho.mean_photon_number() - expected).abs() < 1e-7);
    assert!(rho.min_eigenvalue() >= -1e-10);
}

#[test]
fn undriven_crystal_has_pure_coherent_signal() {
    let op = OpoParams::new(0.0, c(0.3, 0.2), c(0.1, 0.0), 1.0, 1.0, 1).unwrap();
    let rho = signal_density(&op, &Cutoff::adaptive(1e-20)).unwrap();
    assert!((rho.purity() - 1.0).abs() < 1e-12);
    assert!((rho.mean_amplitude() - c(0.3, 0.2)).norm() < 1e-12);
}
