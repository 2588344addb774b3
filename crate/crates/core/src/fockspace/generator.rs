//! Matrix-free two-mode generators that are at most bilinear in ladder
//! operators, and their exponential action on state vectors.

use ndarray::{Array1, Array2};

use super::{check_cutoff, TwoModeOperator};
use crate::error::{Result, TfdError};
use crate::linalg::{self, C64, ZERO};

/// Relative size of the last Taylor term at which a step stops.
const ACTION_TOL: f64 = 1e-17;
/// Upper bound on the operator norm handled by one Taylor step.
const STEP_NORM: f64 = 4.0;

/// `c_a a + c_ad a† + c_t ã + c_td ã† + c_aa a ã + c_dd a† ã†` on the
/// truncated two-mode space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderGenerator {
    d: usize,
    pub c_a: C64,
    pub c_ad: C64,
    pub c_t: C64,
    pub c_td: C64,
    pub c_aa: C64,
    pub c_dd: C64,
}

impl LadderGenerator {
    pub fn zero(d: usize) -> Result<Self> {
        check_cutoff(d)?;
        Ok(Self {
            d,
            c_a: ZERO,
            c_ad: ZERO,
            c_t: ZERO,
            c_td: ZERO,
            c_aa: ZERO,
            c_dd: ZERO,
        })
    }

    /// `α a† − α* a + ζ ã† − ζ* ã`.
    pub fn displacement(alpha: C64, zeta: C64, d: usize) -> Result<Self> {
        let mut g = Self::zero(d)?;
        g.c_ad = alpha;
        g.c_a = -alpha.conj();
        g.c_td = zeta;
        g.c_t = -zeta.conj();
        Ok(g)
    }

    /// `θ (a† ã† − a ã)`.
    pub fn squeeze(theta: f64, d: usize) -> Result<Self> {
        let mut g = Self::zero(d)?;
        g.c_dd = C64::new(theta, 0.0);
        g.c_aa = C64::new(-theta, 0.0);
        Ok(g)
    }

    pub fn dim_per_mode(&self) -> usize {
        self.d
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(TfdError::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        Ok(Self {
            d: self.d,
            c_a: self.c_a + other.c_a,
            c_ad: self.c_ad + other.c_ad,
            c_t: self.c_t + other.c_t,
            c_td: self.c_td + other.c_td,
            c_aa: self.c_aa + other.c_aa,
            c_dd: self.c_dd + other.c_dd,
        })
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            d: self.d,
            c_a: self.c_a * s,
            c_ad: self.c_ad * s,
            c_t: self.c_t * s,
            c_td: self.c_td * s,
            c_aa: self.c_aa * s,
            c_dd: self.c_dd * s,
        }
    }

    fn coefficients(&self) -> [C64; 6] {
        [self.c_a, self.c_ad, self.c_t, self.c_td, self.c_aa, self.c_dd]
    }

    fn is_finite(&self) -> bool {
        self.coefficients()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Upper bound on the truncated operator norm.
    pub fn norm_bound(&self) -> f64 {
        let lin = (self.d as f64 - 1.0).sqrt();
        let bil = self.d as f64 - 1.0;
        (self.c_a.norm() + self.c_ad.norm() + self.c_t.norm() + self.c_td.norm()) * lin
            + (self.c_aa.norm() + self.c_dd.norm()) * bil
    }

    /// Applies the generator to a two-mode vector.
    pub fn apply(&self, v: &Array1<C64>) -> Array1<C64> {
        let d = self.d;
        assert_eq!(v.len(), d * d, "vector length must be d*d");
        let sq: Vec<f64> = (0..=d).map(|k| (k as f64).sqrt()).collect();
        let mut out = Array1::zeros(d * d);
        let [c_a, c_ad, c_t, c_td, c_aa, c_dd] = self.coefficients();
        for n in 0..d {
            for m in 0..d {
                let x = v[n * d + m];
                if x == ZERO {
                    continue;
                }
                if n > 0 {
                    out[(n - 1) * d + m] += c_a * sq[n] * x;
                }
                if n + 1 < d {
                    out[(n + 1) * d + m] += c_ad * sq[n + 1] * x;
                }
                if m > 0 {
                    out[n * d + m - 1] += c_t * sq[m] * x;
                }
                if m + 1 < d {
                    out[n * d + m + 1] += c_td * sq[m + 1] * x;
                }
                if n > 0 && m > 0 {
                    out[(n - 1) * d + m - 1] += c_aa * (sq[n] * sq[m]) * x;
                }
                if n + 1 < d && m + 1 < d {
                    out[(n + 1) * d + m + 1] += c_dd * (sq[n + 1] * sq[m + 1]) * x;
                }
            }
        }
        out
    }

    /// `exp(M) v` by a stepped Taylor series; never forms a matrix.
    pub fn exp_action(&self, v: &Array1<C64>) -> Result<Array1<C64>> {
        if v.len() != self.d * self.d {
            return Err(TfdError::DimensionMismatch {
                expected: self.d * self.d,
                got: v.len(),
            });
        }
        if !self.is_finite() || v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TfdError::NonFinite);
        }
        let bound = self.norm_bound();
        if bound == 0.0 {
            return Ok(v.clone());
        }
        let steps = (bound / STEP_NORM).ceil().max(1.0) as usize;
        let step = self.scaled(1.0 / steps as f64);
        let mut acc = v.clone();
        for _ in 0..steps {
            let scale = linalg::vec_norm(&acc);
            let mut term = acc.clone();
            let mut k = 1usize;
            loop {
                term = step.apply(&term);
                term.mapv_inplace(|z| z / k as f64);
                acc += &term;
                let t = linalg::vec_norm(&term);
                if !t.is_finite() {
                    return Err(TfdError::NonFinite);
                }
                if t <= ACTION_TOL * scale || k >= 60 {
                    break;
                }
                k += 1;
            }
        }
        Ok(acc)
    }

    /// Dense matrix of the generator.
    pub fn to_operator(&self) -> Result<TwoModeOperator> {
        let n = self.d * self.d;
        let mut mat = Array2::zeros((n, n));
        let mut e = Array1::zeros(n);
        for j in 0..n {
            e[j] = C64::new(1.0, 0.0);
            mat.column_mut(j).assign(&self.apply(&e));
            e[j] = ZERO;
        }
        TwoModeOperator::from_array(self.d, mat)
    }
}
