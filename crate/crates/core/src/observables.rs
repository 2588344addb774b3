//! Quadratures, characteristic functions, expectation values and the
//! uncertainty product, in closed form and from truncated states.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::equivalence::{one_minus_cosh_over, sinh_over};
use crate::error::{Result, TfdError};
use crate::fockspace::{ln_factorial, DensityMatrix, LadderGenerator, ModeMatrix, Slot, TwoModeOperator, TwoModeState};
use crate::linalg::{self, C64};
use crate::tfd_states::StateKind;

/// `ħ`, `λ = mω` and the energy quantum `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    hbar: f64,
    lambda: f64,
    epsilon: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            lambda: 1.0,
            epsilon: 1.0,
        }
    }
}

impl PhysicalConstants {
    pub fn new(hbar: f64, lambda: f64, epsilon: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("lambda", lambda), ("epsilon", epsilon)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(TfdError::InvalidParameter(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { hbar, lambda, epsilon })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `sqrt(ħ / 2λ)`, the scale of `Q` in units of `a + a†`.
    pub fn q_scale(&self) -> f64 {
        (self.hbar / (2.0 * self.lambda)).sqrt()
    }

    /// `sqrt(λħ / 2)`, the scale of `P` in units of `i(a† − a)`.
    pub fn p_scale(&self) -> f64 {
        (self.lambda * self.hbar / 2.0).sqrt()
    }
}

/// Means and variances of `Q` and `P`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureMoments {
    pub mean_q: f64,
    pub mean_p: f64,
    pub var_q: f64,
    pub var_p: f64,
}

impl QuadratureMoments {
    /// `ΔQ ΔP`.
    pub fn uncertainty_product(&self) -> f64 {
        (self.var_q * self.var_p).sqrt()
    }
}

fn single_mode_quadratures(pc: &PhysicalConstants, d: usize) -> Result<(ModeMatrix, ModeMatrix)> {
    let a = ModeMatrix::annihilation(d)?;
    let ad = a.dagger();
    let q = ad.add(&a).scale(C64::new(pc.q_scale(), 0.0));
    let p = ad.add(&a.scale(C64::new(-1.0, 0.0))).scale(C64::new(0.0, pc.p_scale()));
    Ok((q, p))
}

/// `Q = sqrt(ħ/2λ)(a† + a)` and `P = i sqrt(λħ/2)(a† − a)` on the ordinary
/// mode.
pub fn quadrature_operators(pc: &PhysicalConstants, d: usize) -> Result<(TwoModeOperator, TwoModeOperator)> {
    let (q, p) = single_mode_quadratures(pc, d)?;
    Ok((TwoModeOperator::embed(&q, Slot::Ordinary), TwoModeOperator::embed(&p, Slot::Ordinary)))
}

/// Truncated-matrix moments `Tr(ρQ)`, `Tr(ρQ²)`, … of a single-mode state.
pub fn numeric_moments(rho: &DensityMatrix, pc: &PhysicalConstants) -> Result<QuadratureMoments> {
    let (q, p) = single_mode_quadratures(pc, rho.dim())?;
    let mean_q = rho.expectation(&q)?.re;
    let mean_p = rho.expectation(&p)?.re;
    let q2 = rho.expectation(&q.mul(&q))?.re;
    let p2 = rho.expectation(&p.mul(&p))?.re;
    Ok(QuadratureMoments {
        mean_q,
        mean_p,
        var_q: q2 - mean_q * mean_q,
        var_p: p2 - mean_p * mean_p,
    })
}

/// Moments of the ordinary mode of a two-mode state.
pub fn state_moments(state: &TwoModeState, pc: &PhysicalConstants) -> Result<QuadratureMoments> {
    numeric_moments(&state.reduced(Slot::Ordinary), pc)
}

/// Exponent `E` of the closed-form characteristic function
/// `⟨D(γ,γ′)⟩ = exp(E)` of the `U·D` state.
pub fn cf_full_exponent(alpha: C64, zeta: C64, theta: f64, gamma: C64, gamma_p: C64) -> C64 {
    let (c, s) = (theta.cosh(), theta.sinh());
    let quad = (c * c + s * s) * (gamma.norm_sqr() + gamma_p.norm_sqr())
        - 2.0 * c * s * (gamma * gamma_p + gamma.conj() * gamma_p.conj());
    let g = gamma * c - gamma_p.conj() * s;
    let gp = gamma_p * c - gamma.conj() * s;
    -0.5 * quad + g * alpha.conj() - g.conj() * alpha + gp * zeta.conj() - gp.conj() * zeta
}

/// Closed-form characteristic function `⟨D(γ,γ′)⟩` of `U(β)D(α,ζ)|0,0̃⟩`.
pub fn cf_full(alpha: C64, zeta: C64, theta: f64, gamma: C64, gamma_p: C64) -> C64 {
    cf_full_exponent(alpha, zeta, theta, gamma, gamma_p).exp()
}

/// `⟨ψ|D(γ,γ′)|ψ⟩` evaluated on a truncated state.
pub fn numeric_cf(state: &TwoModeState, gamma: C64, gamma_p: C64) -> Result<C64> {
    let gen = LadderGenerator::displacement(gamma, gamma_p, state.dim_per_mode())?;
    let moved = gen.exp_action(state.amplitudes())?;
    Ok(linalg::inner(state.amplitudes(), &moved))
}

/// Single-mode characteristic function of the reduced `U·D` state under
/// tilde invariance.
pub fn chi_signal(alpha: C64, theta: f64, eta: C64) -> C64 {
    let (c, s) = (theta.cosh(), theta.sinh());
    (-0.5 * (c * c + s * s) * eta.norm_sqr() + (c + s) * (alpha.conj() * eta - alpha * eta.conj())).exp()
}

/// Matrix elements `⟨m|D(η)|n⟩` for `m, n < d`, with no truncation of the
/// intermediate sums.
///
/// For `m ≥ n`, `⟨m|D(η)|n⟩ = sqrt(n!/m!) η^{m−n} e^{−|η|²/2} L_n^{(m−n)}(|η|²)`
/// and `⟨n|D(η)|m⟩ = (−1)^{m−n} conj(⟨m|D(η)|n⟩)`. The Laguerre values come
/// from the forward three-term recurrence and the prefactor is formed in
/// log space, which stays accurate at large `|η|` and `d`.
pub fn displacement_matrix(eta: C64, d: usize) -> Array2<C64> {
    let mut out = Array2::zeros((d, d));
    let x = eta.norm_sqr();
    if x == 0.0 {
        for k in 0..d {
            out[[k, k]] = C64::new(1.0, 0.0);
        }
        return out;
    }
    let ln_r = 0.5 * x.ln();
    let unit = eta / eta.norm();
    let ln_fact: Vec<f64> = (0..d).map(ln_factorial).collect();
    let mut rot = C64::new(1.0, 0.0);
    for k in 0..d {
        let alpha = k as f64;
        let (mut prev, mut cur) = (0.0, 1.0);
        for n in 0..d - k {
            if n > 0 {
                let nf = n as f64;
                let next = ((2.0 * nf - 1.0 + alpha - x) * cur - (nf - 1.0 + alpha) * prev) / nf;
                prev = cur;
                cur = next;
            }
            let m = n + k;
            let mag = (0.5 * (ln_fact[n] - ln_fact[m]) + alpha * ln_r - 0.5 * x).exp() * cur;
            let below = rot * mag;
            out[[m, n]] = below;
            if k > 0 {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                out[[n, m]] = below.conj() * sign;
            }
        }
        rot *= unit;
    }
    out
}

/// `Tr[ρ D(η)]`.
pub fn numeric_chi(rho: &DensityMatrix, eta: C64) -> C64 {
    let d = rho.dim();
    let dm = displacement_matrix(eta, d);
    let r = rho.as_array();
    let mut total = C64::new(0.0, 0.0);
    for n in 0..d {
        for m in 0..d {
            total += r[[n, m]] * dm[[m, n]];
        }
    }
    total
}

/// Kind-dependent factor multiplying `α` in the mean amplitude under tilde
/// invariance: `e^θ`, `(e^θ − 1)/θ` or 1.
pub fn fig1_ordinate(kind: StateKind, theta: f64) -> f64 {
    match kind {
        StateKind::Round => theta.exp(),
        StateKind::Trotter => sinh_over(theta) - one_minus_cosh_over(theta),
        StateKind::Double => 1.0,
    }
}

/// `(⟨Q⟩, ⟨P⟩)` for `ζ = α*`.
pub fn mean_quadratures(kind: StateKind, alpha: C64, theta: f64, pc: &PhysicalConstants) -> (f64, f64) {
    let mean = alpha * fig1_ordinate(kind, theta);
    (pc.q_scale() * 2.0 * mean.re, pc.p_scale() * 2.0 * mean.im)
}

/// `ΔQ ΔP = (ħ/2) cosh 2θ`, the same for every kind and displacement.
pub fn uncertainty_product(theta: f64, pc: &PhysicalConstants) -> f64 {
    0.5 * pc.hbar() * (2.0 * theta).cosh()
}

/// Closed-form means and variances for `ζ = α*`.
pub fn analytic_moments(kind: StateKind, alpha: C64, theta: f64, pc: &PhysicalConstants) -> QuadratureMoments {
    let (mean_q, mean_p) = mean_quadratures(kind, alpha, theta, pc);
    let c2 = (2.0 * theta).cosh();
    QuadratureMoments {
        mean_q,
        mean_p,
        var_q: pc.q_scale().powi(2) * c2,
        var_p: pc.p_scale().powi(2) * c2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::coherent_amplitudes;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cf_normalization_and_coherent_limit() {
        assert_eq!(cf_full(c(0.3, 0.1), c(0.2, -0.5), 0.7, c(0.0, 0.0), c(0.0, 0.0)), c(1.0, 0.0));
        let (a, z, g, gp) = (c(0.3, 0.1), c(0.2, -0.5), c(0.4, -0.2), c(0.1, 0.3));
        let expected = (-(g.norm_sqr() + gp.norm_sqr()) / 2.0 + g * a.conj() - g.conj() * a + gp * z.conj() - gp.conj() * z).exp();
        assert!((cf_full(a, z, 0.0, g, gp) - expected).norm() < 1e-15);
    }

    #[test]
    fn fig1_ordinates() {
        for kind in StateKind::ALL {
            assert_eq!(fig1_ordinate(kind, 0.0), 1.0);
        }
        assert_abs_diff_eq!(fig1_ordinate(StateKind::Round, 1.0), std::f64::consts::E, epsilon = 1e-15);
        assert_abs_diff_eq!(fig1_ordinate(StateKind::Trotter, 1.0), std::f64::consts::E - 1.0, epsilon = 1e-15);
    }

    #[test]
    fn double_mean_is_bare_alpha() {
        let pc = PhysicalConstants::new(2.0, 0.5, 1.0).unwrap();
        let a = c(0.7, -0.3);
        let (q, p) = mean_quadratures(StateKind::Double, a, 0.8, &pc);
        assert_abs_diff_eq!(q, pc.q_scale() * (a + a.conj()).re, epsilon = 1e-15);
        assert_abs_diff_eq!(p, pc.p_scale() * 2.0 * a.im, epsilon = 1e-15);
    }

    #[test]
    fn vacuum_is_minimum_uncertainty() {
        let pc = PhysicalConstants::new(1.3, 0.7, 1.0).unwrap();
        let vac = DensityMatrix::pure(&coherent_amplitudes(c(0.0, 0.0), 10)).unwrap();
        let m = numeric_moments(&vac, &pc).unwrap();
        assert_abs_diff_eq!(m.uncertainty_product(), pc.hbar() / 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(uncertainty_product(0.0, &pc), pc.hbar() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn quadratures_are_canonical() {
        let pc = PhysicalConstants::new(0.8, 2.0, 1.0).unwrap();
        let d = 8;
        let (q, p) = quadrature_operators(&pc, d).unwrap();
        assert!(q.hermiticity_defect() <= 1e-14);
        assert!(p.hermiticity_defect() <= 1e-14);
        let comm = q.commutator(&p).unwrap();
        for n in 0..d - 1 {
            for m in 0..d {
                let i = n * d + m;
                for j in 0..d * d {
                    let expected = if i == j { c(0.0, pc.hbar()) } else { c(0.0, 0.0) };
                    assert!((comm.as_array()[[i, j]] - expected).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn displacement_matrix_matches_dense_exponential_on_low_levels() {
        let eta = c(0.7, -0.4);
        let exact = displacement_matrix(eta, 6);
        let big = 40;
        let a = ModeMatrix::annihilation(big).unwrap();
        let gen = a.dagger().scale(eta).add(&a.scale(-eta.conj()));
        let dense = gen.exp(1e-14).unwrap();
        for m in 0..6 {
            for n in 0..6 {
                assert!((exact[[m, n]] - dense.as_array()[[m, n]]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn chi_of_vacuum() {
        let vac = DensityMatrix::pure(&coherent_amplitudes(c(0.0, 0.0), 6)).unwrap();
        let eta = c(1.1, 0.4);
        assert!((numeric_chi(&vac, eta) - c((-eta.norm_sqr() / 2.0).exp(), 0.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn chi_modulus_is_pure_gaussian(ar in -2.0..2.0f64, ai in -2.0..2.0f64, th in 0.0..1.5f64, er in -3.0..3.0f64, ei in -3.0..3.0f64) {
            let eta = c(er, ei);
            let chi = chi_signal(c(ar, ai), th, eta);
            let expected = (-(2.0 * th).cosh() * eta.norm_sqr() / 2.0).exp();
            prop_assert!((chi.norm() - expected).abs() <= 1e-12 * (1.0 + expected));
        }

        #[test]
        fn cf_restricted_to_signal_is_chi(ar in -2.0..2.0f64, ai in -2.0..2.0f64, th in 0.0..1.5f64, er in -2.0..2.0f64, ei in -2.0..2.0f64) {
            let a = c(ar, ai);
            let eta = c(er, ei);
            let full = cf_full(a, a.conj(), th, eta, c(0.0, 0.0));
            let chi = chi_signal(a, th, eta);
            prop_assert!((full - chi).norm() <= 1e-12 * (1.0 + chi.norm()));
        }

        #[test]
        fn ordinates_are_ordered(th in 1e-6..2.0f64) {
            let r = fig1_ordinate(StateKind::Round, th);
            let t = fig1_ordinate(StateKind::Trotter, th);
            let d = fig1_ordinate(StateKind::Double, th);
            prop_assert!(d < t && t < r);
        }
    }

    #[test]
    fn displacement_elements_at_large_amplitude() {
        // 60-digit Laguerre evaluations
        let d = displacement_matrix(c(5.3, -3.1), 90);
        let cases = [
            ((0, 0), c(6.509520756166838e-9, 0.0)),
            ((89, 89), c(0.074297599479147074, 0.0)),
            ((40, 70), c(-0.007439163967466253, -0.0012726961747758015)),
            ((70, 40), c(-0.007439163967466253, 0.0012726961747758015)),
            ((89, 0), c(-7.1088174508259951e-7, -1.4878303489354158e-8)),
            ((10, 85), c(0.059691677540349862, -0.13238401395205479)),
            ((60, 61), c(0.073115249698217787, 0.042765523408391538)),
            ((37, 37), c(-0.042784398627435463, 0.0)),
        ];
        for ((m, n), want) in cases {
            assert!((d[[m, n]] - want).norm() < 1e-13, "({m},{n}) {} vs {want}", d[[m, n]]);
        }
    }
}
