//! Exact first and second moments of the thermal coherent states, in
//! `ħ = λ = 1` units with quadratures `x = (b + b†)/√2`, `p = i(b† − b)/√2`
//! for each mode `b ∈ {a, ã}`, ordered `(Q, P, Q̃, P̃)`.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TfdError};
use crate::fockspace::{LadderGenerator, TwoModeState};
use crate::linalg::{self, C64};
use crate::observables::PhysicalConstants;
use crate::quasiprob::{GaussianQP, QpKind};
use crate::tfd_states::{mean_amplitudes, DisplacementParams, StateKind};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Mean vector and symmetrized covariance of `(Q, P, Q̃, P̃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianMoments {
    pub mean: [f64; 4],
    pub cov: [[f64; 4]; 4],
}

/// The ordinary-mode marginal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedGaussian {
    pub mean: [f64; 2],
    pub cov: [[f64; 2]; 2],
}

/// Closed-form moments; means from the first derivatives of the
/// characteristic function, covariance from the second.
pub fn moments_from_cf(kind: StateKind, alpha: C64, zeta: C64, theta: f64) -> GaussianMoments {
    let (a, z) = mean_amplitudes(kind, &DisplacementParams::new(alpha, zeta), theta);
    let c2 = 0.5 * (2.0 * theta).cosh();
    let s2 = 0.5 * (2.0 * theta).sinh();
    GaussianMoments {
        mean: [SQRT2 * a.re, SQRT2 * a.im, SQRT2 * z.re, SQRT2 * z.im],
        cov: [
            [c2, 0.0, s2, 0.0],
            [0.0, c2, 0.0, -s2],
            [s2, 0.0, c2, 0.0],
            [0.0, -s2, 0.0, c2],
        ],
    }
}

impl GaussianMoments {
    /// Smallest eigenvalue of `cov + (i/2)Ω`; non-negative for physical
    /// states.
    pub fn physicality_min_eigenvalue(&self) -> f64 {
        let mut m = Array2::<C64>::zeros((4, 4));
        for i in 0..4 {
            for j in 0..4 {
                m[[i, j]] = C64::new(self.cov[i][j], 0.0);
            }
        }
        for mode in 0..2 {
            let (q, p) = (2 * mode, 2 * mode + 1);
            m[[q, p]] += C64::new(0.0, 0.5);
            m[[p, q]] -= C64::new(0.0, 0.5);
        }
        linalg::hermitian_eigenvalues(&m)[0]
    }

    /// Converts `(Q, P, Q̃, P̃)` to physical units: `Q` scales by `sqrt(ħ/λ)`,
    /// `P` by `sqrt(ħλ)`.
    pub fn to_physical(&self, pc: &PhysicalConstants) -> Self {
        let s = [
            (pc.hbar() / pc.lambda()).sqrt(),
            (pc.hbar() * pc.lambda()).sqrt(),
            (pc.hbar() / pc.lambda()).sqrt(),
            (pc.hbar() * pc.lambda()).sqrt(),
        ];
        let mut out = *self;
        for i in 0..4 {
            out.mean[i] *= s[i];
            for j in 0..4 {
                out.cov[i][j] *= s[i] * s[j];
            }
        }
        out
    }

    /// The 14 independent entries: 4 means then the upper triangle of the
    /// covariance, row by row.
    pub fn independent_entries(&self) -> Vec<f64> {
        let mut out = self.mean.to_vec();
        for i in 0..4 {
            for j in i..4 {
                out.push(self.cov[i][j]);
            }
        }
        out
    }
}

/// Marginal of the ordinary mode.
pub fn reduce_to_signal(gm: &GaussianMoments) -> ReducedGaussian {
    ReducedGaussian {
        mean: [gm.mean[0], gm.mean[1]],
        cov: [[gm.cov[0][0], gm.cov[0][1]], [gm.cov[1][0], gm.cov[1][1]]],
    }
}

impl ReducedGaussian {
    pub fn det(&self) -> f64 {
        self.cov[0][0] * self.cov[1][1] - self.cov[0][1] * self.cov[1][0]
    }

    /// `1 / (2 sqrt(det cov))`.
    pub fn purity(&self) -> f64 {
        0.5 / self.det().sqrt()
    }

    /// `⟨a⟩ = (⟨Q⟩ + i⟨P⟩)/√2`.
    pub fn mean_amplitude(&self) -> C64 {
        C64::new(self.mean[0], self.mean[1]) / SQRT2
    }

    /// `⟨a†a⟩ = (Var Q + Var P − 1)/2 + |⟨a⟩|²`.
    pub fn mean_photon_number(&self) -> f64 {
        0.5 * (self.cov[0][0] + self.cov[1][1] - 1.0) + self.mean_amplitude().norm_sqr()
    }
}

/// Quasiprobability of a rotationally symmetric reduced Gaussian:
/// `σ_W² = v/2`, `σ_Q² = σ_W² + 1/4`, `σ_P² = σ_W² − 1/4` with `v` the
/// per-quadrature variance.
pub fn reduced_to_qp(rg: &ReducedGaussian, which: QpKind) -> Result<GaussianQP> {
    let (vq, vp, cqp) = (rg.cov[0][0], rg.cov[1][1], rg.cov[0][1]);
    let scale = vq.abs().max(vp.abs()).max(1.0);
    if (vq - vp).abs() > 1e-12 * scale || cqp.abs() > 1e-12 * scale {
        return Err(TfdError::InvalidParameter(
            "reduced covariance is not rotationally symmetric".into(),
        ));
    }
    let sw2 = 0.25 * (vq + vp);
    let mean = rg.mean_amplitude();
    let s2 = match which {
        QpKind::W => sw2,
        QpKind::Q => sw2 + 0.25,
        QpKind::P => sw2 - 0.25,
    };
    // below ~1e-15 the P width is rounding noise from a pure state
    if s2 <= 1e-15 {
        return Err(TfdError::Degenerate { re: mean.re, im: mean.im });
    }
    GaussianQP::new(mean, s2.sqrt(), which)
}

/// Moments of a truncated two-mode state, from matrix-free ladder actions.
pub fn fock_moments(state: &TwoModeState) -> Result<GaussianMoments> {
    let d = state.dim_per_mode();
    let psi = state.amplitudes();
    let s = 1.0 / SQRT2;
    let i = C64::new(0.0, 1.0);
    let mut quads = Vec::with_capacity(4);
    for tilde in [false, true] {
        let mut x = LadderGenerator::zero(d)?;
        let mut p = LadderGenerator::zero(d)?;
        if tilde {
            x.c_t = C64::new(s, 0.0);
            x.c_td = C64::new(s, 0.0);
            p.c_td = i * s;
            p.c_t = -i * s;
        } else {
            x.c_a = C64::new(s, 0.0);
            x.c_ad = C64::new(s, 0.0);
            p.c_ad = i * s;
            p.c_a = -i * s;
        }
        quads.push(x.apply(psi));
        quads.push(p.apply(psi));
    }
    let mut mean = [0.0; 4];
    for k in 0..4 {
        mean[k] = linalg::inner(psi, &quads[k]).re;
    }
    let mut cov = [[0.0; 4]; 4];
    for j in 0..4 {
        for k in 0..4 {
            // Re⟨x_j ψ | x_k ψ⟩ = ⟨(x_j x_k + x_k x_j)/2⟩ for Hermitian x
            cov[j][k] = linalg::inner(&quads[j], &quads[k]).re - mean[j] * mean[k];
        }
    }
    Ok(GaussianMoments { mean, cov })
}
