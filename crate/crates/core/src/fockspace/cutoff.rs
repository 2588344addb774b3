//! Fock cutoff selection.

use serde::{Deserialize, Serialize};

use super::TwoModeState;
use crate::error::{Result, TfdError};

/// Default bound on the population of the top two retained levels.
pub const DEFAULT_TAIL_TOL: f64 = 1e-8;
/// Largest per-mode dimension the adaptive policy will try.
pub const MAX_ADAPTIVE_DIM: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutoffPolicy {
    /// Always use this per-mode dimension.
    Fixed(usize),
    /// Grow the dimension until the tail tolerance is met.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cutoff {
    pub policy: CutoffPolicy,
    pub tail_tol: f64,
}

impl Default for Cutoff {
    fn default() -> Self {
        Self::adaptive(DEFAULT_TAIL_TOL)
    }
}

/// Starting dimension `ceil((m + 3)^2 + 10 sinh^2 θ)` for displacement
/// magnitude `m` and squeeze `θ`.
pub fn initial_adaptive_dim(m: f64, theta: f64) -> usize {
    let s = theta.sinh();
    ((m + 3.0).powi(2) + 10.0 * s * s).ceil().max(2.0) as usize
}

impl Cutoff {
    pub fn fixed(d: usize) -> Self {
        Self {
            policy: CutoffPolicy::Fixed(d),
            tail_tol: DEFAULT_TAIL_TOL,
        }
    }

    pub fn adaptive(tail_tol: f64) -> Self {
        Self {
            policy: CutoffPolicy::Adaptive,
            tail_tol,
        }
    }

    pub fn with_tail_tol(self, tail_tol: f64) -> Self {
        Self { tail_tol, ..self }
    }

    /// Builds a state with `build(d)`, checking its tail mass. The adaptive
    /// policy starts at [`initial_adaptive_dim`] and doubles until the tail
    /// falls below tolerance.
    pub fn resolve<F>(&self, magnitude: f64, theta: f64, mut build: F) -> Result<TwoModeState>
    where
        F: FnMut(usize) -> Result<TwoModeState>,
    {
        if !(self.tail_tol > 0.0) {
            return Err(TfdError::InvalidParameter(format!(
                "tail tolerance must be positive, got {}",
                self.tail_tol
            )));
        }
        match self.policy {
            CutoffPolicy::Fixed(d) => {
                let st = build(d)?;
                self.check(st)
            }
            CutoffPolicy::Adaptive => {
                let mut d = initial_adaptive_dim(magnitude, theta).min(MAX_ADAPTIVE_DIM);
                loop {
                    let last = match build(d).and_then(|st| self.check(st)) {
                        Ok(st) => return Ok(st),
                        Err(e @ TfdError::CutoffTooSmall { .. }) => e,
                        Err(e) => return Err(e),
                    };
                    if d >= MAX_ADAPTIVE_DIM {
                        return Err(last);
                    }
                    d = (2 * d).min(MAX_ADAPTIVE_DIM);
                }
            }
        }
    }

    fn check(&self, st: TwoModeState) -> Result<TwoModeState> {
        if st.tail_mass() > self.tail_tol {
            Err(TfdError::CutoffTooSmall {
                dim: st.dim_per_mode(),
                tail_mass: st.tail_mass(),
                tolerance: self.tail_tol,
            })
        } else {
            Ok(st)
        }
    }
}
