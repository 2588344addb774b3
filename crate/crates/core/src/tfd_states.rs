//! Thermal vacuum, the three thermal coherent states and the ξ operator.
//!
//! Conventions: `G = i(a ã − ã† a†)`, so `U(θ) = exp(iθG) = exp(θ(a†ã† − a ã))`
//! and `U(θ)|0,0̃⟩ = (1/cosh θ) Σ tanhⁿθ |n,ñ⟩`. The displacement is
//! `D(α,ζ) = exp(α a† − α* a + ζ ã† − ζ* ã)`.

use serde::{Deserialize, Serialize};

use crate::equivalence::{map_double_to_round, map_trotter_to_round, one_minus_cosh_over, sinh_over};
use crate::error::{Result, TfdError};
use crate::fockspace::{
    coherent_vector, Cutoff, LadderGenerator, ModeMatrix, Slot, TwoModeOperator, TwoModeState,
    DEFAULT_EXPM_TOL,
};
use crate::linalg::{self, C64};

/// Inverse temperature, energy quantum and the derived squeeze angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalParams {
    beta: f64,
    epsilon: f64,
    theta: f64,
}

impl ThermalParams {
    /// Solves `sinh θ = (e^{βε} − 1)^{−1/2}`.
    pub fn theta_of_beta(beta: f64, epsilon: f64) -> Result<Self> {
        if !(beta > 0.0) || !(epsilon > 0.0) || !beta.is_finite() || !epsilon.is_finite() {
            return Err(TfdError::InvalidParameter(format!(
                "beta and epsilon must be positive and finite, got beta={beta}, epsilon={epsilon}"
            )));
        }
        let occupancy = 1.0 / (beta * epsilon).exp_m1();
        Ok(Self {
            beta,
            epsilon,
            theta: occupancy.sqrt().asinh(),
        })
    }

    /// Parameters for a given squeeze angle at `ε = 1`; `θ = 0` is `β = ∞`.
    pub fn from_theta(theta: f64) -> Result<Self> {
        Self::from_theta_with_epsilon(theta, 1.0)
    }

    pub fn from_theta_with_epsilon(theta: f64, epsilon: f64) -> Result<Self> {
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(TfdError::InvalidParameter(format!(
                "theta must be finite and non-negative, got {theta}"
            )));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(TfdError::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        let s = theta.sinh();
        let beta = if theta == 0.0 {
            f64::INFINITY
        } else {
            (1.0 / (s * s)).ln_1p() / epsilon
        };
        Ok(Self { beta, epsilon, theta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cosh(&self) -> f64 {
        self.theta.cosh()
    }

    pub fn sinh(&self) -> f64 {
        self.theta.sinh()
    }

    /// Bose-Einstein occupancy `sinh²θ`.
    pub fn occupancy(&self) -> f64 {
        let s = self.sinh();
        s * s
    }
}

/// Displacement amplitudes of the ordinary and tilde modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisplacementParams {
    alpha: C64,
    zeta: C64,
    tilde_invariant: bool,
}

impl DisplacementParams {
    pub fn new(alpha: C64, zeta: C64) -> Self {
        Self {
            alpha,
            zeta,
            tilde_invariant: false,
        }
    }

    /// `ζ = α*`.
    pub fn tilde_invariant(alpha: C64) -> Self {
        Self {
            alpha,
            zeta: alpha.conj(),
            tilde_invariant: true,
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn zeta(&self) -> C64 {
        self.zeta
    }

    pub fn is_tilde_invariant(&self) -> bool {
        self.tilde_invariant
    }
}

/// The three thermal coherent state families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    /// `U(β) D(α,ζ) |0,0̃⟩`.
    Round,
    /// `D(α,ζ) U(β) |0,0̃⟩`.
    Double,
    /// `exp[iθG + (α a† − α* a + ζ ã† − ζ* ã)] |0,0̃⟩`.
    Trotter,
}

impl StateKind {
    pub const ALL: [StateKind; 3] = [StateKind::Round, StateKind::Double, StateKind::Trotter];

    pub fn name(self) -> &'static str {
        match self {
            StateKind::Round => "round",
            StateKind::Double => "double",
            StateKind::Trotter => "trotter",
        }
    }
}

impl std::fmt::Display for StateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for StateKind {
    type Err = TfdError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "round" => Ok(StateKind::Round),
            "double" => Ok(StateKind::Double),
            "trotter" => Ok(StateKind::Trotter),
            other => Err(TfdError::InvalidParameter(format!("unknown state kind {other:?}"))),
        }
    }
}

/// `U·D` parameters `(α_r, ζ_r)` and phase with
/// `state(kind, α, ζ) = e^{i phase} U(θ) D(α_r, ζ_r) |0,0̃⟩`.
pub fn round_equivalent(kind: StateKind, dp: &DisplacementParams, theta: f64) -> (C64, C64, f64) {
    match kind {
        StateKind::Round => (dp.alpha, dp.zeta, 0.0),
        StateKind::Double => {
            let (a, z) = map_double_to_round(dp.alpha, dp.zeta, theta);
            (a, z, 0.0)
        }
        StateKind::Trotter => {
            let r = map_trotter_to_round(dp.alpha, dp.zeta, theta);
            (r.alpha_prime, r.zeta_prime, r.phase_theta)
        }
    }
}

/// Exact `(⟨a⟩, ⟨ã⟩)` of a thermal coherent state.
pub fn mean_amplitudes(kind: StateKind, dp: &DisplacementParams, theta: f64) -> (C64, C64) {
    let (a, z, _) = round_equivalent(kind, dp, theta);
    let (c, s) = (theta.cosh(), theta.sinh());
    (a * c + z.conj() * s, z * c + a.conj() * s)
}

/// `G = i(a ã − ã† a†)`.
#[allow(non_snake_case)]
pub fn generator_G(d: usize) -> Result<TwoModeOperator> {
    let k = LadderGenerator::squeeze(1.0, d)?.to_operator()?;
    // K = a†ã† − aã = iG
    Ok(k.scale(C64::new(0.0, -1.0)))
}

/// Dense `U(θ) = exp(iθG)`.
#[allow(non_snake_case)]
pub fn thermalizing_U(theta: f64, d: usize) -> Result<TwoModeOperator> {
    LadderGenerator::squeeze(theta, d)?
        .to_operator()?
        .exp(DEFAULT_EXPM_TOL)
}

/// Dense `D(α, ζ)`; fails when `d` cannot hold the coherent amplitudes.
#[allow(non_snake_case)]
pub fn displacement_D(alpha: C64, zeta: C64, d: usize) -> Result<TwoModeOperator> {
    let tol = Cutoff::default().tail_tol;
    coherent_vector(alpha, d, tol)?;
    coherent_vector(zeta, d, tol)?;
    LadderGenerator::displacement(alpha, zeta, d)?
        .to_operator()?
        .exp(DEFAULT_EXPM_TOL)
}

/// Displacement magnitude used to seed the adaptive cutoff.
fn magnitude(kind: StateKind, dp: &DisplacementParams, theta: f64) -> f64 {
    let (a, z) = mean_amplitudes(kind, dp, theta);
    a.norm().max(z.norm())
}

/// Builds a thermal coherent state at a single per-mode dimension, without
/// a tail check.
pub fn build_state_at(kind: StateKind, dp: &DisplacementParams, tp: &ThermalParams, d: usize) -> Result<TwoModeState> {
    let theta = tp.theta();
    match kind {
        StateKind::Round => {
            let u = coherent_vector(dp.alpha, d, 1.0)?.amplitudes;
            let v = coherent_vector(dp.zeta, d, 1.0)?.amplitudes;
            TwoModeState::product(&u, &v)?.evolve(&LadderGenerator::squeeze(theta, d)?)
        }
        StateKind::Double => TwoModeState::vacuum(d)?
            .evolve(&LadderGenerator::squeeze(theta, d)?)?
            .evolve(&LadderGenerator::displacement(dp.alpha, dp.zeta, d)?),
        StateKind::Trotter => {
            let gen = LadderGenerator::squeeze(theta, d)?.plus(&LadderGenerator::displacement(dp.alpha, dp.zeta, d)?)?;
            TwoModeState::vacuum(d)?.evolve(&gen)
        }
    }
}

/// Builds a thermal coherent state under a cutoff policy.
pub fn build_state(kind: StateKind, dp: &DisplacementParams, tp: &ThermalParams, cutoff: &Cutoff) -> Result<TwoModeState> {
    cutoff.resolve(magnitude(kind, dp, tp.theta()), tp.theta(), |d| build_state_at(kind, dp, tp, d))
}

/// `[U(θ/N) D(α/N, ζ/N)]^N |0,0̃⟩`.
pub fn build_trotter_finite(dp: &DisplacementParams, tp: &ThermalParams, n_slices: usize, cutoff: &Cutoff) -> Result<TwoModeState> {
    if n_slices == 0 {
        return Err(TfdError::InvalidParameter("number of Trotter slices must be at least 1".into()));
    }
    let theta = tp.theta();
    let inv = 1.0 / n_slices as f64;
    let m = magnitude(StateKind::Trotter, dp, theta).max(magnitude(StateKind::Round, dp, theta));
    cutoff.resolve(m, theta, |d| {
        let squeeze = LadderGenerator::squeeze(theta * inv, d)?;
        let disp = LadderGenerator::displacement(dp.alpha * inv, dp.zeta * inv, d)?;
        let mut amps = TwoModeState::vacuum(d)?.amplitudes().clone();
        for _ in 0..n_slices {
            amps = disp.exp_action(&amps)?;
            amps = squeeze.exp_action(&amps)?;
        }
        TwoModeState::from_amplitudes(d, amps)
    })
}

/// Matrix-free `ξ = cosh θ · a − sinh θ · ã†`.
pub fn xi_generator(tp: &ThermalParams, d: usize) -> Result<LadderGenerator> {
    let mut g = LadderGenerator::zero(d)?;
    g.c_a = C64::new(tp.cosh(), 0.0);
    g.c_td = C64::new(-tp.sinh(), 0.0);
    Ok(g)
}

/// Dense `ξ = cosh θ · a − sinh θ · ã†`.
pub fn xi_operator(tp: &ThermalParams, d: usize) -> Result<TwoModeOperator> {
    let a = ModeMatrix::annihilation(d)?;
    let ao = TwoModeOperator::embed(&a, Slot::Ordinary);
    let adt = TwoModeOperator::embed(&a.dagger(), Slot::Tilde);
    ao.scale(C64::new(tp.cosh(), 0.0))
        .sub(&adt.scale(C64::new(tp.sinh(), 0.0)))
}

/// `‖ξ|ψ⟩ − f|ψ⟩‖`.
pub fn eigen_residual(state: &TwoModeState, f: C64, tp: &ThermalParams) -> Result<f64> {
    let xi = xi_generator(tp, state.dim_per_mode())?;
    let psi = state.amplitudes();
    let diff = xi.apply(psi) - psi.mapv(|z| z * f);
    Ok(linalg::vec_norm(&diff))
}

/// Eigenvalue of ξ carried by each state family.
pub fn xi_eigenvalue(kind: StateKind, dp: &DisplacementParams, tp: &ThermalParams) -> C64 {
    let theta = tp.theta();
    match kind {
        StateKind::Round => dp.alpha,
        StateKind::Double => dp.alpha * tp.cosh() - dp.zeta.conj() * tp.sinh(),
        StateKind::Trotter => dp.alpha * sinh_over(theta) + dp.zeta.conj() * one_minus_cosh_over(theta),
    }
}

/// `exp(fξ† − f*ξ) U(β)|0,0̃⟩` and its tilde-invariance violation
/// `|f| (cosh θ − sinh θ)`.
pub fn improper_eigenvector(f: C64, tp: &ThermalParams, cutoff: &Cutoff) -> Result<(TwoModeState, f64)> {
    let (c, s) = (tp.cosh(), tp.sinh());
    let m = f.norm() * (c + s);
    let state = cutoff.resolve(m, tp.theta(), |d| {
        let mut gen = LadderGenerator::zero(d)?;
        gen.c_ad = f * c;
        gen.c_a = -f.conj() * c;
        gen.c_td = f.conj() * s;
        gen.c_t = -f * s;
        TwoModeState::vacuum(d)?
            .evolve(&LadderGenerator::squeeze(tp.theta(), d)?)?
            .evolve(&gen)
    })?;
    Ok((state, f.norm() * (-tp.theta()).exp()))
}
