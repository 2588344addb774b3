use tfd_core::fockspace::{Cutoff, Slot};
use tfd_core::gaussian_oracle::{fock_moments, moments_from_cf, reduce_to_signal, reduced_to_qp};
use tfd_core::linalg::C64;
use tfd_core::observables::cf_full_exponent;
use tfd_core::quasiprob::{p_rep, q_func, wigner, QpKind};
use tfd_core::tfd_states::{build_state, round_equivalent, DisplacementParams, StateKind, ThermalParams};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// `⟨exp(−i x·R)⟩ − 1` for `R = (Q, P, Q̃, P̃)`, from the closed-form exponent.
fn cf_minus_one(alpha: C64, zeta: C64, theta: f64, x: [f64; 4]) -> C64 {
    let g = c(x[1], -x[0]) / SQRT2;
    let gp = c(x[3], -x[2]) / SQRT2;
    let e = cf_full_exponent(alpha, zeta, theta, g, gp);
    // expm1 of a complex exponent, accurate for small |e|
    let re = e.re.exp_m1();
    let (s, cm1) = (e.im.sin(), -2.0 * (0.5 * e.im).sin().powi(2));
    c(re * (cm1 + 1.0) + cm1, (re + 1.0) * s)
}

fn unit(j: usize, h: f64) -> [f64; 4] {
    let mut x = [0.0; 4];
    x[j] = h;
    x
}

fn add(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

#[test]
fn finite_differences_recover_moments() {
    let h = 1e-5;
    for kind in StateKind::ALL {
        let (alpha, zeta, theta) = (c(0.7, -0.2), c(0.3, 0.4), 0.45);
        let (ar, zr, _) = round_equivalent(kind, &DisplacementParams::new(alpha, zeta), theta);
        let f = |x: [f64; 4]| cf_minus_one(ar, zr, theta, x);
        let gm = moments_from_cf(kind, alpha, zeta, theta);
        let mut mean = [0.0; 4];
        for j in 0..4 {
            let d1 = (f(unit(j, h)) - f(unit(j, -h))) / (2.0 * h);
            mean[j] = -d1.im;
            assert!((mean[j] - gm.mean[j]).abs() < 1e-6, "{kind} mean {j}");
        }
        for j in 0..4 {
            for k in j..4 {
                let second = if j == k {
                    (f(unit(j, h)) + f(unit(j, -h))) / (h * h)
                } else {
                    (f(add(unit(j, h), unit(k, h))) - f(add(unit(j, h), unit(k, -h))) - f(add(unit(j, -h), unit(k, h)))
                        + f(add(unit(j, -h), unit(k, -h))))
                        / (4.0 * h * h)
                };
                let cov = -second.re - mean[j] * mean[k];
                assert!((cov - gm.cov[j][k]).abs() < 1e-6, "{kind} cov {j}{k}: {cov} vs {}", gm.cov[j][k]);
            }
        }
    }
}

#[test]
fn closed_form_moments_match_fock_numerics() {
    for kind in StateKind::ALL {
        for (alpha, zeta, theta) in [(c(0.7, -0.2), c(0.3, 0.4), 0.45), (c(-1.0, 0.5), c(-1.0, -0.5), 0.8)] {
            let tp = ThermalParams::from_theta(theta).unwrap();
            let st = build_state(kind, &DisplacementParams::new(alpha, zeta), &tp, &Cutoff::adaptive(1e-24)).unwrap();
            let num = fock_moments(&st).unwrap().independent_entries();
            let closed = moments_from_cf(kind, alpha, zeta, theta).independent_entries();
            assert_eq!(num.len(), 14);
            for (k, (a, b)) in num.iter().zip(&closed).enumerate() {
                assert!((a - b).abs() < 1e-8, "{kind} entry {k}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn reduced_oracle_agrees_with_quasiprob_forms() {
    for kind in StateKind::ALL {
        let (alpha, theta) = (c(0.9, 0.3), 0.6);
        let rg = reduce_to_signal(&moments_from_cf(kind, alpha, alpha.conj(), theta));
        for (which, closed) in [
            (QpKind::P, p_rep(kind, alpha, theta).unwrap()),
            (QpKind::Q, q_func(kind, alpha, theta).unwrap()),
            (QpKind::W, wigner(kind, alpha, theta).unwrap()),
        ] {
            let g = reduced_to_qp(&rg, which).unwrap();
            assert!((g.mean() - closed.mean()).norm() < 1e-12);
            assert!((g.sigma() - closed.sigma()).abs() < 1e-12);
        }
    }
}

#[test]
fn reduced_purity_matches_density_matrix() {
    let (alpha, theta) = (c(0.4, 0.4), 0.5);
    let tp = ThermalParams::from_theta(theta).unwrap();
    let st = build_state(StateKind::Round, &DisplacementParams::tilde_invariant(alpha), &tp, &Cutoff::adaptive(1e-24)).unwrap();
    let rho = st.reduced(Slot::Ordinary);
    let rg = reduce_to_signal(&moments_from_cf(StateKind::Round, alpha, alpha.conj(), theta));
    assert!((rho.purity() - rg.purity()).abs() < 1e-10);
    assert!((rho.mean_photon_number() - rg.mean_photon_number()).abs() < 1e-9);
}
