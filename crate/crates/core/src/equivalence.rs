//! Parameter maps relating the three thermal coherent state families, the
//! finite Trotter product decomposition and its series limits.

use serde::{Deserialize, Serialize};

use ndarray::Array2;

use crate::error::{Result, TfdError};
use crate::fockspace::{two_mode_index, LadderGenerator};
use crate::linalg::{self, CompensatedSum, C64};

/// Below this |θ| the singular quotients switch to their Taylor series.
pub const SMALL_THETA: f64 = 1e-4;

/// `sinh θ / θ`, equal to 1 at θ = 0.
pub fn sinh_over(theta: f64) -> f64 {
    if theta.abs() < SMALL_THETA {
        let t2 = theta * theta;
        1.0 + t2 / 6.0 + t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0
    } else {
        theta.sinh() / theta
    }
}

/// `(1 − cosh θ) / θ`, equal to 0 at θ = 0.
pub fn one_minus_cosh_over(theta: f64) -> f64 {
    if theta.abs() < SMALL_THETA {
        let t2 = theta * theta;
        -theta * (0.5 + t2 / 24.0 + t2 * t2 / 720.0)
    } else {
        let h = (0.5 * theta).sinh();
        -2.0 * h * h / theta
    }
}

/// `(sinh θ − θ) / θ² = (e^θ − 2θ − e^{−θ}) / (2θ²)`.
pub fn sinh_minus_over_sq(theta: f64) -> f64 {
    if theta.abs() < 1.0 {
        // sum_{k>=1} θ^(2k-1) / (2k+1)!
        let t2 = theta * theta;
        let mut term = theta / 6.0;
        let mut total = term;
        for k in 2..20 {
            let kf = k as f64;
            term *= t2 / ((2.0 * kf) * (2.0 * kf + 1.0));
            total += term;
            if term.abs() < 1e-18 * total.abs() {
                break;
            }
        }
        total
    } else {
        (theta.sinh() - theta) / (theta * theta)
    }
}

/// The three limits of the finite-product partial sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesLimits {
    /// `(e^θ − 2θ − e^{−θ}) / (2θ²)`.
    pub c1: f64,
    /// `sinh θ / θ`.
    pub c2: f64,
    /// `(cosh θ − 1) / θ`.
    pub c3: f64,
}

pub fn series_limits(theta: f64) -> SeriesLimits {
    SeriesLimits {
        c1: sinh_minus_over_sq(theta),
        c2: sinh_over(theta),
        c3: -one_minus_cosh_over(theta),
    }
}

/// Parameters `(α′, ζ′)` and real phase `Θ` with
/// `|α,ζ;β⟩ = e^{iΘ} |α′,ζ′;β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceResult {
    pub alpha_prime: C64,
    pub zeta_prime: C64,
    pub phase_theta: f64,
}

/// Maps the combined-exponential state onto the `U·D` family.
pub fn map_trotter_to_round(alpha: C64, zeta: C64, theta: f64) -> EquivalenceResult {
    let c2 = sinh_over(theta);
    let c3 = one_minus_cosh_over(theta);
    // αζ − α*ζ* = 2i Im(αζ); the phase is the exponent divided by i.
    let phase_theta = 2.0 * sinh_minus_over_sq(theta) * (alpha * zeta).im;
    EquivalenceResult {
        alpha_prime: alpha * c2 + zeta.conj() * c3,
        zeta_prime: zeta * c2 + alpha.conj() * c3,
        phase_theta,
    }
}

/// Maps the `D·U` family onto the `U·D` family; the identity is exact, with
/// no phase.
pub fn map_double_to_round(alpha: C64, zeta: C64, theta: f64) -> (C64, C64) {
    let (c, s) = (theta.cosh(), theta.sinh());
    (alpha * c - zeta.conj() * s, zeta * c - alpha.conj() * s)
}

/// `[U(θ/N) D(α/N, ζ/N)]^n = e^{i phase} U(squeeze_angle) D(alpha_n, zeta_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteProduct {
    pub phase: f64,
    pub squeeze_angle: f64,
    pub alpha_n: C64,
    pub zeta_n: C64,
}

/// Closed form of the `n`-fold partial product of the `N`-slice Trotter
/// sequence.
pub fn finite_product_decomposition(
    alpha: C64,
    zeta: C64,
    theta: f64,
    big_n: usize,
    n: usize,
) -> Result<FiniteProduct> {
    if big_n == 0 || n == 0 || n > big_n {
        return Err(TfdError::OutOfRange {
            index: n,
            max: big_n,
        });
    }
    let nf = big_n as f64;
    let step = theta / nf;
    let mut cosh_sum = CompensatedSum::default();
    let mut sinh_sum = CompensatedSum::default();
    let mut weighted = CompensatedSum::default();
    for m in 0..n {
        let x = m as f64 * step;
        let sh = x.sinh();
        cosh_sum.add(x.cosh());
        sinh_sum.add(sh);
        weighted.add((n - m) as f64 * sh);
    }
    let cs = cosh_sum.value() / nf;
    let ss = sinh_sum.value() / nf;
    Ok(FiniteProduct {
        phase: weighted.value() / (nf * nf) * 2.0 * (alpha * zeta).im,
        squeeze_angle: n as f64 * step,
        alpha_n: alpha * cs - zeta.conj() * ss,
        zeta_n: zeta * cs - alpha.conj() * ss,
    })
}

/// Operator-norm distance between `[U(θ/N) D(α/N, ζ/N)]^n` and
/// `e^{i phase} U(nθ/N) D(α_n, ζ_n)` at cutoff `d`, restricted to inputs
/// with both occupation numbers at most `max_level`.
///
/// On the full truncated space the two sides differ at the cutoff edge by
/// an amount that does not shrink with `d`; on low-lying inputs they agree
/// to rounding.
pub fn finite_product_residual(
    alpha: C64,
    zeta: C64,
    theta: f64,
    big_n: usize,
    n: usize,
    d: usize,
    max_level: usize,
) -> Result<f64> {
    let fp = finite_product_decomposition(alpha, zeta, theta, big_n, n)?;
    let inv = 1.0 / big_n as f64;
    let squeeze = LadderGenerator::squeeze(theta * inv, d)?;
    let disp = LadderGenerator::displacement(alpha * inv, zeta * inv, d)?;
    let squeeze_n = LadderGenerator::squeeze(fp.squeeze_angle, d)?;
    let disp_n = LadderGenerator::displacement(fp.alpha_n, fp.zeta_n, d)?;
    let phase = C64::from_polar(1.0, fp.phase);
    let top = max_level.min(d - 1);
    let inputs: Vec<(usize, usize)> = (0..=top).flat_map(|a| (0..=top).map(move |b| (a, b))).collect();
    let mut diff = Array2::<C64>::zeros((d * d, inputs.len()));
    for (col, &(a, b)) in inputs.iter().enumerate() {
        let mut e = ndarray::Array1::zeros(d * d);
        e[two_mode_index(d, a, b)] = C64::new(1.0, 0.0);
        let mut literal = e.clone();
        for _ in 0..n {
            literal = squeeze.exp_action(&disp.exp_action(&literal)?)?;
        }
        let closed = squeeze_n.exp_action(&disp_n.exp_action(&e)?)?.mapv(|z| z * phase);
        diff.column_mut(col).assign(&(literal - closed));
    }
    Ok(linalg::spectral_norm(&diff))
}
