//! P, Q and Wigner distributions of the reduced thermal coherent states.
//!
//! `d²μ` means `dRe(μ) dIm(μ)` throughout.

use std::f64::consts::PI;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TfdError};
use crate::exec::Exec;
use crate::fockspace::{coherent_amplitudes, coherent_vector, Cutoff, DensityMatrix, Slot};
use crate::linalg::{self, C64};
use crate::observables::{displacement_matrix, fig1_ordinate};
use crate::tfd_states::{build_state, DisplacementParams, StateKind, ThermalParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QpKind {
    P,
    Q,
    W,
}

impl std::fmt::Display for QpKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QpKind::P => "P",
            QpKind::Q => "Q",
            QpKind::W => "W",
        })
    }
}

/// Rotationally symmetric Gaussian `(1/2πσ²) exp(−|x − μ̄|²/2σ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianQP {
    mean: C64,
    sigma: f64,
    kind: QpKind,
}

impl GaussianQP {
    pub fn new(mean: C64, sigma: f64, kind: QpKind) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(TfdError::InvalidParameter(format!("width must be positive, got {sigma}")));
        }
        if !mean.re.is_finite() || !mean.im.is_finite() {
            return Err(TfdError::NonFinite);
        }
        Ok(Self { mean, sigma, kind })
    }

    pub fn mean(&self) -> C64 {
        self.mean
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn kind(&self) -> QpKind {
        self.kind
    }

    pub fn evaluate(&self, x: C64) -> f64 {
        let s2 = self.sigma * self.sigma;
        (-(x - self.mean).norm_sqr() / (2.0 * s2)).exp() / (2.0 * PI * s2)
    }

    pub fn peak(&self) -> f64 {
        1.0 / (2.0 * PI * self.sigma * self.sigma)
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(TfdError::InvalidParameter(format!("theta must be finite and non-negative, got {theta}")));
    }
    Ok(())
}

/// Common mean of the three distributions under `ζ = α*`.
pub fn distribution_mean(kind: StateKind, alpha: C64, theta: f64) -> C64 {
    alpha * fig1_ordinate(kind, theta)
}

/// P-representation; `θ = 0` is the delta function at `α` and is reported as
/// [`TfdError::Degenerate`].
pub fn p_rep(kind: StateKind, alpha: C64, theta: f64) -> Result<GaussianQP> {
    check_theta(theta)?;
    let mean = distribution_mean(kind, alpha, theta);
    if theta == 0.0 {
        return Err(TfdError::Degenerate { re: mean.re, im: mean.im });
    }
    GaussianQP::new(mean, theta.sinh() / 2f64.sqrt(), QpKind::P)
}

/// Q-function, width `cosh θ/√2`.
pub fn q_func(kind: StateKind, alpha: C64, theta: f64) -> Result<GaussianQP> {
    check_theta(theta)?;
    GaussianQP::new(distribution_mean(kind, alpha, theta), theta.cosh() / 2f64.sqrt(), QpKind::Q)
}

/// Wigner function, width `½ sqrt(cosh 2θ)`.
pub fn wigner(kind: StateKind, alpha: C64, theta: f64) -> Result<GaussianQP> {
    check_theta(theta)?;
    GaussianQP::new(distribution_mean(kind, alpha, theta), 0.5 * (2.0 * theta).cosh().sqrt(), QpKind::W)
}

/// `(1/π)⟨μ|ρ|μ⟩`; fails when `ρ`'s cutoff cannot represent `|μ⟩` to
/// within `tail_tol`.
pub fn q_func_numeric(rho: &DensityMatrix, mu: C64, tail_tol: f64) -> Result<f64> {
    let d = rho.dim();
    coherent_vector(mu, d, tail_tol)?;
    // ρ lives on levels < d, so the truncated bra is exact.
    let c = coherent_amplitudes(mu, d);
    let r = rho.as_array();
    let mut total = C64::new(0.0, 0.0);
    for m in 0..d {
        let left = c[m].conj();
        for n in 0..d {
            total += left * r[[m, n]] * c[n];
        }
    }
    Ok(total.re / PI)
}

/// Square trapezoid grid for the characteristic-function integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerQuadrature {
    /// Half-width of the square in the η-plane; chosen from ρ when `None`.
    pub half_width: Option<f64>,
    /// Intervals per side on the coarsest level.
    pub initial_intervals: usize,
    /// Halving steps allowed before giving up.
    pub max_refinements: usize,
    /// Agreement required between successive levels.
    pub tol: f64,
    /// Levels with less population than this are dropped from ρ.
    pub trim_tol: f64,
}

impl Default for WignerQuadrature {
    fn default() -> Self {
        Self {
            half_width: None,
            initial_intervals: 32,
            max_refinements: 4,
            tol: 1e-9,
            trim_tol: 1e-18,
        }
    }
}

/// Square half-width: `6` in vacuum units, widened so that `|χ|` at the edge
/// is below `e^{−36}` given the mean quadrature variance of `ρ`.
pub fn default_half_width(rho: &DensityMatrix) -> f64 {
    // χ ~ exp(−v̄ |η|²) with v̄ the mean of Var(x), Var(p), x = (a + a†)/√2
    let n = rho.mean_photon_number();
    let a = rho.mean_amplitude();
    let a2: C64 = (2..rho.dim())
        .map(|k| rho.as_array()[[k, k - 2]] * ((k * (k - 1)) as f64).sqrt())
        .sum();
    let var_x = 0.5 * (2.0 * (a2.re + n) + 1.0) - 2.0 * a.re * a.re;
    let var_p = 0.5 * (2.0 * (n - a2.re) + 1.0) - 2.0 * a.im * a.im;
    let v = (0.5 * (var_x + var_p)).max(1e-3);
    6f64.max((36.0 / v).sqrt())
}

/// `W(μ) = (1/π²) ∬ χ(η) e^{−ημ* + η*μ} d²η` for a batch of points, with
/// `χ(η) = Tr[ρ D(η)]` and trapezoid refinement until two successive levels
/// agree.
pub fn wigner_numeric_grid(rho: &DensityMatrix, mus: &[C64], grid: &WignerQuadrature, exec: Exec) -> Result<Vec<f64>> {
    if grid.initial_intervals < 2 {
        return Err(TfdError::InvalidParameter("quadrature needs at least 2 intervals".into()));
    }
    let rho = rho.trimmed(grid.trim_tol);
    let half = grid.half_width.unwrap_or_else(|| default_half_width(&rho));
    let mut previous: Option<Vec<f64>> = None;
    let mut intervals = grid.initial_intervals;
    let mut last_diff = f64::INFINITY;
    for _ in 0..=grid.max_refinements {
        let current = wigner_trapezoid(&rho, mus, half, intervals, exec);
        if let Some(prev) = &previous {
            last_diff = prev
                .iter()
                .zip(&current)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if last_diff <= grid.tol {
                return Ok(current);
            }
        }
        previous = Some(current);
        intervals *= 2;
    }
    Err(TfdError::QuadratureNotConverged {
        difference: last_diff,
        tolerance: grid.tol,
    })
}

/// Single-point form of [`wigner_numeric_grid`].
pub fn wigner_numeric(rho: &DensityMatrix, mu: C64, grid: &WignerQuadrature) -> Result<f64> {
    Ok(wigner_numeric_grid(rho, &[mu], grid, Exec::Sequential)?[0])
}

fn wigner_trapezoid(rho: &DensityMatrix, mus: &[C64], half: f64, intervals: usize, exec: Exec) -> Vec<f64> {
    let h = 2.0 * half / intervals as f64;
    let coords: Vec<f64> = (0..=intervals).map(|k| -half + k as f64 * h).collect();
    let weight = |k: usize| if k == 0 || k == intervals { 0.5 } else { 1.0 };
    let d = rho.dim();
    let r = rho.as_array();
    // one row of the η grid per task: χ values with their trapezoid weights
    let rows: Vec<usize> = (0..=intervals).collect();
    let chi_rows: Vec<Vec<(C64, C64)>> = exec.map(&rows, |&iy| {
        (0..=intervals)
            .map(|ix| {
                let eta = C64::new(coords[ix], coords[iy]);
                let dm = displacement_matrix(eta, d);
                let mut chi = C64::new(0.0, 0.0);
                for n in 0..d {
                    for m in 0..d {
                        chi += r[[n, m]] * dm[[m, n]];
                    }
                }
                (eta, chi * (weight(ix) * weight(iy)))
            })
            .collect()
    });
    let scale = h * h / (PI * PI);
    mus.iter()
        .map(|&mu| {
            let mut total = linalg::CompensatedSum::default();
            for row in &chi_rows {
                for &(eta, wchi) in row {
                    let kernel = (eta.conj() * mu - eta * mu.conj()).exp();
                    total.add((wchi * kernel).re);
                }
            }
            total.value() * scale
        })
        .collect()
}

/// `(1/π)(cosh θ + sinh θ)² = e^{2θ}/π`.
pub fn completeness_constant(theta: f64) -> f64 {
    (2.0 * theta).exp() / PI
}

/// Disk quadrature for the resolution of the identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskQuadrature {
    pub radius: f64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        Self {
            radius: 6.0,
            radial_nodes: 48,
            angular_nodes: 32,
        }
    }
}

/// `(e^{2θ}/π) ∫_{|α| ≤ R} d²α ρ(α)` on the lowest `levels` Fock levels,
/// where `ρ(α)` is the reduced `U·D` state with `ζ = α*`.
///
/// Radial nodes are Gauss-Legendre; the angular trapezoid uses
/// `ρ(r e^{iφ}) = e^{iφn} ρ(r) e^{−iφn}`, so only one state per radius is
/// built.
pub fn numeric_identity_resolution(
    theta: f64,
    levels: usize,
    disk: &DiskQuadrature,
    cutoff: &Cutoff,
    exec: Exec,
) -> Result<Array2<C64>> {
    check_theta(theta)?;
    if levels < 1 || disk.radial_nodes < 1 || disk.angular_nodes < 1 || !(disk.radius > 0.0) {
        return Err(TfdError::InvalidParameter("empty disk quadrature".into()));
    }
    let tp = ThermalParams::from_theta(theta)?;
    let nodes = linalg::gauss_legendre(disk.radial_nodes, 0.0, disk.radius);
    let radial: Vec<Result<Array2<C64>>> = exec.map(&nodes, |&(r, _)| {
        let dp = DisplacementParams::tilde_invariant(C64::new(r, 0.0));
        let st = build_state(StateKind::Round, &dp, &tp, cutoff)?;
        let rho = st.reduced(Slot::Ordinary);
        if rho.dim() < levels {
            return Err(TfdError::DimensionMismatch {
                expected: levels,
                got: rho.dim(),
            });
        }
        Ok(rho.as_array().slice(ndarray::s![..levels, ..levels]).to_owned())
    });
    let dphi = 2.0 * PI / disk.angular_nodes as f64;
    let mut out = Array2::<C64>::zeros((levels, levels));
    for ((r, w), rho) in nodes.iter().zip(radial) {
        let rho = rho?;
        for k in 0..disk.angular_nodes {
            let phi = k as f64 * dphi;
            for m in 0..levels {
                for n in 0..levels {
                    let rot = C64::from_polar(1.0, phi * (m as f64 - n as f64));
                    out[[m, n]] += rot * rho[[m, n]] * (w * r * dphi);
                }
            }
        }
    }
    Ok(out.mapv(|z| z * completeness_constant(theta)))
}
