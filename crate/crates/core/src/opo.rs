//! Non-degenerate optical parametric oscillator: the signal mode plays the
//! ordinary mode and the idler plays the tilde mode.
//!
//! Hamiltonians are returned in units of `ħ`, so `exp(−iT H)` is the
//! evolution over time `T`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, TfdError};
use crate::fockspace::{Cutoff, DensityMatrix, LadderGenerator, Slot, TwoModeOperator, TwoModeState, DEFAULT_EXPM_TOL};
use crate::linalg::C64;

/// Coupling, drive amplitudes, total crystal and resonator times, and the
/// number of round trips.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpoParams {
    pub chi2: f64,
    pub g_s: C64,
    pub g_i: C64,
    pub t1: f64,
    pub t2: f64,
    pub round_trips: usize,
}

impl OpoParams {
    pub fn new(chi2: f64, g_s: C64, g_i: C64, t1: f64, t2: f64, round_trips: usize) -> Result<Self> {
        if !chi2.is_finite() || !g_s.re.is_finite() || !g_s.im.is_finite() || !g_i.re.is_finite() || !g_i.im.is_finite() {
            return Err(TfdError::NonFinite);
        }
        if !(t1 >= 0.0) || !(t2 >= 0.0) || !t1.is_finite() || !t2.is_finite() {
            return Err(TfdError::InvalidParameter(format!("times must be finite and non-negative, got T1={t1}, T2={t2}")));
        }
        if round_trips == 0 {
            return Err(TfdError::InvalidParameter("at least one round trip is required".into()));
        }
        Ok(Self {
            chi2,
            g_s,
            g_i,
            t1,
            t2,
            round_trips,
        })
    }

    /// `θ = χ⁽²⁾ T₁`.
    pub fn theta(&self) -> f64 {
        self.chi2 * self.t1
    }

    /// `γ_s = g_s T₂`.
    pub fn gamma_s(&self) -> C64 {
        self.g_s * self.t2
    }

    /// `γ_i = g_i T₂`.
    pub fn gamma_i(&self) -> C64 {
        self.g_i * self.t2
    }

    pub fn total_time(&self) -> f64 {
        self.t1 + self.t2
    }

    /// Crystal time per round trip.
    pub fn dtau1(&self) -> f64 {
        self.t1 / self.round_trips as f64
    }

    /// Resonator time per round trip.
    pub fn dtau2(&self) -> f64 {
        self.t2 / self.round_trips as f64
    }

    pub fn with_round_trips(&self, round_trips: usize) -> Result<Self> {
        Self::new(self.chi2, self.g_s, self.g_i, self.t1, self.t2, round_trips)
    }
}

/// Order of the two factors inside each round trip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SliceOrder {
    /// `exp(−iΔτ₁H_I) exp(−iΔτ₂H_II)`.
    #[default]
    InteractionFirst,
    /// `exp(−iΔτ₂H_II) exp(−iΔτ₁H_I)`.
    DriveFirst,
}

/// `H_I/ħ = iχ⁽²⁾(a_s† a_i† − a_s a_i)`.
pub fn h_interaction(chi2: f64, d: usize) -> Result<TwoModeOperator> {
    Ok(LadderGenerator::squeeze(chi2, d)?.to_operator()?.scale(C64::new(0.0, 1.0)))
}

/// `H_II/ħ = i(g_s a_s† − g_s* a_s) + i(g_i a_i† − g_i* a_i)`.
pub fn h_drive(g_s: C64, g_i: C64, d: usize) -> Result<TwoModeOperator> {
    Ok(LadderGenerator::displacement(g_s, g_i, d)?.to_operator()?.scale(C64::new(0.0, 1.0)))
}

/// `−iT₁H_I/ħ − iT₂H_II/ħ = θ(a†ã† − aã) + γ_s a† − γ_s* a + γ_i ã† − γ_i* ã`.
pub fn closed_generator(op: &OpoParams, d: usize) -> Result<LadderGenerator> {
    LadderGenerator::squeeze(op.theta(), d)?.plus(&LadderGenerator::displacement(op.gamma_s(), op.gamma_i(), d)?)
}

/// `(exp(−iΔτ₁H_I/ħ) exp(−iΔτ₂H_II/ħ))^N`, or the reverse factor order.
pub fn sliced_unitary(op: &OpoParams, d: usize, order: SliceOrder) -> Result<TwoModeOperator> {
    let inv = 1.0 / op.round_trips as f64;
    let e1 = LadderGenerator::squeeze(op.theta() * inv, d)?
        .to_operator()?
        .exp(DEFAULT_EXPM_TOL)?;
    let e2 = LadderGenerator::displacement(op.gamma_s() * inv, op.gamma_i() * inv, d)?
        .to_operator()?
        .exp(DEFAULT_EXPM_TOL)?;
    let slice = match order {
        SliceOrder::InteractionFirst => e1.mul(&e2)?,
        SliceOrder::DriveFirst => e2.mul(&e1)?,
    };
    Ok(slice.pow(op.round_trips as u64))
}

/// `exp[−θ(a_s a_i − a_s† a_i†) + γ_s a_s† − γ_s* a_s + γ_i a_i† − γ_i* a_i]`.
pub fn closed_unitary(op: &OpoParams, d: usize) -> Result<TwoModeOperator> {
    closed_generator(op, d)?.to_operator()?.exp(DEFAULT_EXPM_TOL)
}

/// The closed round-trip evolution applied to `|0,0̃⟩`, without forming the
/// unitary.
pub fn closed_state(op: &OpoParams, cutoff: &Cutoff) -> Result<TwoModeState> {
    let m = (op.gamma_s().norm() + op.gamma_i().norm()) * op.theta().abs().exp();
    cutoff.resolve(m, op.theta(), |d| TwoModeState::vacuum(d)?.evolve(&closed_generator(op, d)?))
}

/// Signal-mode density matrix after tracing out the idler.
pub fn signal_density(op: &OpoParams, cutoff: &Cutoff) -> Result<DensityMatrix> {
    Ok(closed_state(op, cutoff)?.reduced(Slot::Ordinary))
}
