//! Truncated bosonic Fock space for one ordinary mode and one tilde mode.
//!
//! Each mode keeps the levels `0..d`. Two-mode vectors and operators use the
//! row-major index `n_ordinary * d + n_tilde` everywhere; [`two_mode_index`]
//! is the only place that spells it out.

mod cutoff;
mod density;
mod generator;

pub use cutoff::{initial_adaptive_dim, Cutoff, CutoffPolicy, DEFAULT_TAIL_TOL, MAX_ADAPTIVE_DIM};
pub use density::{partial_trace, DensityMatrix};
pub use generator::LadderGenerator;

use ndarray::{Array1, Array2};

use crate::error::{Result, TfdError};
use crate::exec::Exec;
use crate::linalg::{self, C64, ONE, ZERO};

/// Default target accuracy for dense matrix exponentials.
pub const DEFAULT_EXPM_TOL: f64 = 1e-12;

#[inline]
pub fn two_mode_index(d: usize, n_ordinary: usize, n_tilde: usize) -> usize {
    debug_assert!(n_ordinary < d && n_tilde < d);
    n_ordinary * d + n_tilde
}

pub(crate) fn check_cutoff(d: usize) -> Result<()> {
    if d < 2 {
        Err(TfdError::InvalidCutoff(d))
    } else {
        Ok(())
    }
}

/// Which factor of `H ⊗ H~` an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    Ordinary,
    Tilde,
}

/// A `d x d` operator on a single truncated mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMatrix {
    mat: Array2<C64>,
}

impl ModeMatrix {
    pub fn from_array(mat: Array2<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(TfdError::DimensionMismatch {
                expected: mat.nrows(),
                got: mat.ncols(),
            });
        }
        check_cutoff(mat.nrows())?;
        Ok(Self { mat })
    }

    /// `a` with `<n-1|a|n> = sqrt(n)`.
    pub fn annihilation(d: usize) -> Result<Self> {
        check_cutoff(d)?;
        let mut mat = Array2::zeros((d, d));
        for n in 1..d {
            mat[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
        }
        Ok(Self { mat })
    }

    pub fn creation(d: usize) -> Result<Self> {
        Ok(Self::annihilation(d)?.dagger())
    }

    pub fn number(d: usize) -> Result<Self> {
        check_cutoff(d)?;
        Ok(Self {
            mat: Array2::from_diag(&Array1::from_iter((0..d).map(|n| C64::new(n as f64, 0.0)))),
        })
    }

    pub fn identity(d: usize) -> Result<Self> {
        check_cutoff(d)?;
        Ok(Self {
            mat: linalg::identity(d),
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn as_array(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn into_array(self) -> Array2<C64> {
        self.mat
    }

    pub fn dagger(&self) -> Self {
        Self {
            mat: linalg::dagger(&self.mat),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            mat: self.mat.dot(&other.mat),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            mat: self.mat.mapv(|z| z * c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat + &other.mat,
        }
    }

    pub fn exp(&self, tol: f64) -> Result<Self> {
        Ok(Self {
            mat: linalg::expm(&self.mat, tol, Exec::default())?,
        })
    }

    pub fn apply(&self, v: &Array1<C64>) -> Array1<C64> {
        self.mat.dot(v)
    }
}

/// A dense operator on the `d^2`-dimensional two-mode space.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeOperator {
    d: usize,
    mat: Array2<C64>,
}

impl TwoModeOperator {
    pub fn from_array(d: usize, mat: Array2<C64>) -> Result<Self> {
        check_cutoff(d)?;
        if mat.nrows() != d * d || mat.ncols() != d * d {
            return Err(TfdError::DimensionMismatch {
                expected: d * d,
                got: mat.nrows().max(mat.ncols()),
            });
        }
        Ok(Self { d, mat })
    }

    pub fn identity(d: usize) -> Result<Self> {
        check_cutoff(d)?;
        Ok(Self {
            d,
            mat: linalg::identity(d * d),
        })
    }

    pub fn zeros(d: usize) -> Result<Self> {
        check_cutoff(d)?;
        Ok(Self {
            d,
            mat: Array2::zeros((d * d, d * d)),
        })
    }

    /// `op ⊗ I` for [`Slot::Ordinary`], `I ⊗ op` for [`Slot::Tilde`].
    pub fn embed(op: &ModeMatrix, slot: Slot) -> Self {
        let d = op.dim();
        let mut mat = Array2::zeros((d * d, d * d));
        for i in 0..d {
            for j in 0..d {
                let x = op.mat[[i, j]];
                if x == ZERO {
                    continue;
                }
                for k in 0..d {
                    let (r, c) = match slot {
                        Slot::Ordinary => (two_mode_index(d, i, k), two_mode_index(d, j, k)),
                        Slot::Tilde => (two_mode_index(d, k, i), two_mode_index(d, k, j)),
                    };
                    mat[[r, c]] = x;
                }
            }
        }
        Self { d, mat }
    }

    pub fn dim_per_mode(&self) -> usize {
        self.d
    }

    pub fn as_array(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn into_array(self) -> Array2<C64> {
        self.mat
    }

    pub fn dagger(&self) -> Self {
        Self {
            d: self.d,
            mat: linalg::dagger(&self.mat),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(TfdError::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            d: self.d,
            mat: linalg::matmul(&self.mat, &other.mat, Exec::default()),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            d: self.d,
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            d: self.d,
            mat: &self.mat - &other.mat,
        })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            d: self.d,
            mat: self.mat.mapv(|z| z * c),
        }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut result = linalg::identity(self.d * self.d);
        let mut base = self.mat.clone();
        let mut first = true;
        while n > 0 {
            if n & 1 == 1 {
                result = if first {
                    base.clone()
                } else {
                    linalg::matmul(&result, &base, Exec::default())
                };
                first = false;
            }
            n >>= 1;
            if n > 0 {
                base = linalg::matmul(&base, &base, Exec::default());
            }
        }
        Self { d: self.d, mat: result }
    }

    pub fn apply(&self, v: &Array1<C64>) -> Array1<C64> {
        self.mat.dot(v)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.mat)
    }

    /// `max |entry|`.
    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.mat)
    }

    /// Spectral (operator) norm.
    pub fn op_norm(&self) -> f64 {
        linalg::spectral_norm(&self.mat)
    }

    /// Spectral norm of the operator restricted to inputs with both
    /// occupation numbers at most `max_level`.
    pub fn op_norm_on_low_levels(&self, max_level: usize) -> f64 {
        let cols: Vec<usize> = (0..=max_level.min(self.d - 1))
            .flat_map(|n| (0..=max_level.min(self.d - 1)).map(move |m| (n, m)))
            .map(|(n, m)| two_mode_index(self.d, n, m))
            .collect();
        let sub = self.mat.select(ndarray::Axis(1), &cols);
        linalg::spectral_norm(&sub)
    }

    /// `‖X†X − I‖∞` (max entry).
    pub fn unitarity_defect(&self) -> f64 {
        let p = linalg::matmul(&linalg::dagger(&self.mat), &self.mat, Exec::default());
        linalg::max_abs(&(p - linalg::identity(self.d * self.d)))
    }

    pub fn exp(&self, tol: f64) -> Result<Self> {
        matrix_exp(self, tol)
    }
}

/// Dense matrix exponential of a two-mode operator.
pub fn matrix_exp(m: &TwoModeOperator, tol: f64) -> Result<TwoModeOperator> {
    Ok(TwoModeOperator {
        d: m.d,
        mat: linalg::expm(&m.mat, tol, Exec::default())?,
    })
}

/// Population of the top two levels of either mode.
pub fn tail_mass(d: usize, amps: &Array1<C64>) -> f64 {
    let edge = d.saturating_sub(2);
    let mut s = 0.0;
    for n in 0..d {
        for m in 0..d {
            if n >= edge || m >= edge {
                s += amps[two_mode_index(d, n, m)].norm_sqr();
            }
        }
    }
    s
}

/// A normalized two-mode state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    d: usize,
    amps: Array1<C64>,
    tail_mass: f64,
}

impl TwoModeState {
    /// Normalizes `amps` and records its tail mass.
    pub fn from_amplitudes(d: usize, amps: Array1<C64>) -> Result<Self> {
        check_cutoff(d)?;
        if amps.len() != d * d {
            return Err(TfdError::DimensionMismatch {
                expected: d * d,
                got: amps.len(),
            });
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TfdError::NonFinite);
        }
        let norm = linalg::vec_norm(&amps);
        if norm == 0.0 {
            return Err(TfdError::InvalidParameter("zero state vector".into()));
        }
        let amps = amps.mapv(|z| z / norm);
        let tail_mass = tail_mass(d, &amps);
        Ok(Self { d, amps, tail_mass })
    }

    /// `|0, 0~>`.
    pub fn vacuum(d: usize) -> Result<Self> {
        check_cutoff(d)?;
        let mut amps = Array1::zeros(d * d);
        amps[0] = ONE;
        Ok(Self {
            d,
            amps,
            tail_mass: 0.0,
        })
    }

    /// `|u> ⊗ |v~>` from single-mode vectors.
    pub fn product(u: &Array1<C64>, v: &Array1<C64>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(TfdError::DimensionMismatch {
                expected: u.len(),
                got: v.len(),
            });
        }
        let d = u.len();
        let amps = Array1::from_iter((0..d).flat_map(|n| (0..d).map(move |m| u[n] * v[m])));
        Self::from_amplitudes(d, amps)
    }

    pub fn dim_per_mode(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amps
    }

    pub fn amplitude(&self, n_ordinary: usize, n_tilde: usize) -> C64 {
        self.amps[two_mode_index(self.d, n_ordinary, n_tilde)]
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm(&self) -> f64 {
        linalg::vec_norm(&self.amps)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_same(other)?;
        Ok(linalg::inner(&self.amps, &other.amps))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(TfdError::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        Ok(())
    }

    /// `‖self − other‖` without any phase alignment.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Distance after rotating `candidate` by the global phase that best
    /// aligns it with `self`.
    pub fn aligned_distance(&self, candidate: &Self) -> Result<f64> {
        let overlap = self.inner(candidate)?;
        let phase = if overlap.norm() > 0.0 {
            overlap.conj() / overlap.norm()
        } else {
            ONE
        };
        Ok(self
            .amps
            .iter()
            .zip(candidate.amps.iter())
            .map(|(a, b)| (a - b * phase).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Multiplies the state by `e^{i phi}`.
    pub fn with_phase(&self, phi: f64) -> Self {
        let f = C64::from_polar(1.0, phi);
        Self {
            d: self.d,
            amps: self.amps.mapv(|z| z * f),
            tail_mass: self.tail_mass,
        }
    }

    /// `exp(M)|self>` for a matrix-free generator.
    pub fn evolve(&self, gen: &LadderGenerator) -> Result<Self> {
        if gen.dim_per_mode() != self.d {
            return Err(TfdError::DimensionMismatch {
                expected: self.d,
                got: gen.dim_per_mode(),
            });
        }
        let amps = gen.exp_action(&self.amps)?;
        Self::from_amplitudes(self.d, amps)
    }

    /// `<self|A|self>` for a dense operator.
    pub fn expectation(&self, op: &TwoModeOperator) -> Result<C64> {
        if op.d != self.d {
            return Err(TfdError::DimensionMismatch {
                expected: self.d,
                got: op.d,
            });
        }
        Ok(linalg::inner(&self.amps, &op.apply(&self.amps)))
    }

    /// Reduced density matrix of the kept mode.
    pub fn reduced(&self, keep: Slot) -> DensityMatrix {
        let d = self.d;
        let psi = self
            .amps
            .view()
            .into_shape_with_order((d, d))
            .expect("state length is d*d");
        let rho = match keep {
            // rho[n, n'] = sum_m psi(n, m) psi*(n', m)
            Slot::Ordinary => psi.dot(&psi.t().mapv(|z| z.conj())),
            // rho[m, m'] = sum_n psi(n, m) psi*(n, m')
            Slot::Tilde => psi.t().dot(&psi.mapv(|z| z.conj())),
        };
        DensityMatrix::from_hermitian_unchecked(rho)
    }
}

/// A single-mode coherent vector truncated to `d` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentVector {
    pub amplitudes: Array1<C64>,
    /// Population of the exact coherent state outside levels `0..d-2`.
    pub tail_mass: f64,
}

/// Exact coherent amplitudes `e^{-|mu|^2/2} mu^n / sqrt(n!)` for `n < d`,
/// not renormalized.
pub fn coherent_amplitudes(mu: C64, d: usize) -> Array1<C64> {
    let mut out = Array1::zeros(d);
    if d == 0 {
        return out;
    }
    out[0] = C64::new((-0.5 * mu.norm_sqr()).exp(), 0.0);
    for n in 1..d {
        out[n] = out[n - 1] * mu / (n as f64).sqrt();
    }
    out
}

/// Renormalized truncated coherent vector; fails when the exact state puts
/// more than `tail_tol` of its population on the top two retained levels or
/// beyond.
pub fn coherent_vector(mu: C64, d: usize, tail_tol: f64) -> Result<CoherentVector> {
    check_cutoff(d)?;
    let raw = coherent_amplitudes(mu, d);
    let kept: f64 = raw.iter().take(d - 2).map(|z| z.norm_sqr()).sum();
    let tail = (1.0 - kept).max(0.0);
    // 1 - kept loses everything below ~1e-16; sum the edge directly.
    let tail = if tail < 1e-12 {
        coherent_tail_series(mu, d)
    } else {
        tail
    };
    if tail > tail_tol {
        return Err(TfdError::CutoffTooSmall {
            dim: d,
            tail_mass: tail,
            tolerance: tail_tol,
        });
    }
    let norm = linalg::vec_norm(&raw);
    Ok(CoherentVector {
        amplitudes: raw.mapv(|z| z / norm),
        tail_mass: tail,
    })
}

/// Poisson mass on `n >= d-2`, summed term by term.
fn coherent_tail_series(mu: C64, d: usize) -> f64 {
    let lambda = mu.norm_sqr();
    if lambda == 0.0 {
        return 0.0;
    }
    let start = d - 2;
    // log pmf at n = start
    let mut log_p = -lambda + start as f64 * lambda.ln() - ln_factorial(start);
    let mut total = 0.0;
    let mut n = start;
    loop {
        let p = log_p.exp();
        total += p;
        n += 1;
        log_p += lambda.ln() - (n as f64).ln();
        if (p < 1e-300 || p < total * 1e-17) && n as f64 > lambda {
            break;
        }
        if n > start + 100_000 {
            break;
        }
    }
    total
}

pub(crate) fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn annihilation_d2_and_d3() {
        let a = ModeMatrix::annihilation(2).unwrap();
        assert_eq!(a.as_array()[[0, 1]], c(1.0, 0.0));
        assert_eq!(a.as_array()[[0, 0]], c(0.0, 0.0));
        assert_eq!(a.as_array()[[1, 0]], c(0.0, 0.0));
        assert_eq!(a.as_array()[[1, 1]], c(0.0, 0.0));
        let a3 = ModeMatrix::annihilation(3).unwrap();
        assert_abs_diff_eq!(a3.as_array()[[1, 2]].re, 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn invalid_cutoff_rejected() {
        assert_eq!(ModeMatrix::annihilation(1), Err(TfdError::InvalidCutoff(1)));
        assert_eq!(ModeMatrix::annihilation(0), Err(TfdError::InvalidCutoff(0)));
    }

    #[test]
    fn number_operator_is_diagonal() {
        let a = ModeMatrix::annihilation(5).unwrap();
        let n = a.dagger().mul(&a);
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j { i as f64 } else { 0.0 };
                assert_abs_diff_eq!(n.as_array()[[i, j]].re, expected, epsilon = 1e-14);
                assert_abs_diff_eq!(n.as_array()[[i, j]].im, 0.0);
            }
        }
        let exact = ModeMatrix::number(5).unwrap();
        assert!(linalg::max_abs(&(n.as_array() - exact.as_array())) < 1e-14);
    }

    #[test]
    fn creation_is_dagger_of_annihilation() {
        let a = ModeMatrix::annihilation(6).unwrap();
        assert_eq!(ModeMatrix::creation(6).unwrap(), a.dagger());
    }

    #[test]
    fn ordinary_and_tilde_annihilators_commute() {
        let a = ModeMatrix::annihilation(6).unwrap();
        let ao = TwoModeOperator::embed(&a, Slot::Ordinary);
        let at = TwoModeOperator::embed(&a, Slot::Tilde);
        assert_eq!(ao.commutator(&at).unwrap().max_abs(), 0.0);
        let atd = TwoModeOperator::embed(&a.dagger(), Slot::Tilde);
        assert_eq!(ao.commutator(&atd).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn embed_identity_is_identity() {
        let i = ModeMatrix::identity(4).unwrap();
        for slot in [Slot::Ordinary, Slot::Tilde] {
            assert_eq!(TwoModeOperator::embed(&i, slot), TwoModeOperator::identity(4).unwrap());
        }
    }

    #[test]
    fn embedded_annihilator_lowers_ordinary_mode() {
        let d = 4;
        let a = TwoModeOperator::embed(&ModeMatrix::annihilation(d).unwrap(), Slot::Ordinary);
        let mut v = Array1::zeros(d * d);
        v[two_mode_index(d, 1, 0)] = ONE;
        let out = a.apply(&v);
        assert_eq!(out[two_mode_index(d, 0, 0)], ONE);
        assert_abs_diff_eq!(linalg::vec_norm(&out), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn truncated_canonical_commutator() {
        let d = 7;
        let a = TwoModeOperator::embed(&ModeMatrix::annihilation(d).unwrap(), Slot::Ordinary);
        let comm = a.commutator(&a.dagger()).unwrap();
        for n in 0..d {
            for m in 0..d {
                let i = two_mode_index(d, n, m);
                let expected = if n <= d - 2 { 1.0 } else { -((d - 1) as f64) };
                assert_abs_diff_eq!(comm.as_array()[[i, i]].re, expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn exp_of_displacement_generator_is_coherent_state() {
        // single mode, theta = 0.5, d = 20; oracle: 200-term Taylor sum of exp on vacuum
        let d = 20;
        let theta = 0.5;
        let a = ModeMatrix::annihilation(d).unwrap();
        let gen = a.dagger().add(&a.scale(c(-1.0, 0.0))).scale(c(theta, 0.0));
        let u = gen.exp(1e-13).unwrap();
        let mut vac = Array1::zeros(d);
        vac[0] = ONE;
        let got = u.apply(&vac);

        let mut term = vac.clone();
        let mut series = vac.clone();
        for k in 1..=200 {
            term = gen.apply(&term).mapv(|z| z / k as f64);
            series = series + &term;
        }
        for n in 0..d {
            assert_abs_diff_eq!(got[n].re, series[n].re, epsilon = 1e-12);
            assert_abs_diff_eq!(got[n].im, series[n].im, epsilon = 1e-12);
        }
        // and the low levels match the closed form
        let mut fact = 1.0;
        for n in 0..8 {
            if n > 0 {
                fact *= n as f64;
            }
            let expected = (-theta * theta / 2.0).exp() * theta.powi(n as i32) / fact.sqrt();
            assert_abs_diff_eq!(got[n].re, expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn coherent_vector_vacuum_and_mean() {
        let v = coherent_vector(C64::new(0.0, 0.0), 8, 1e-8).unwrap();
        assert_eq!(v.amplitudes[0], ONE);
        assert_eq!(v.tail_mass, 0.0);
        let v = coherent_vector(C64::new(1.0, 0.0), 25, 1e-8).unwrap();
        let mean: f64 = v
            .amplitudes
            .iter()
            .enumerate()
            .map(|(n, z)| n as f64 * z.norm_sqr())
            .sum();
        assert_abs_diff_eq!(mean, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(linalg::vec_norm(&v.amplitudes), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn coherent_vector_rejects_small_cutoff() {
        let err = coherent_vector(C64::new(3.0, 0.0), 8, 1e-8).unwrap_err();
        assert!(matches!(err, TfdError::CutoffTooSmall { dim: 8, .. }));
    }

    #[test]
    fn product_state_reduces_to_factor() {
        let mu = coherent_vector(c(0.4, -0.2), 12, 1e-8).unwrap().amplitudes;
        let nu = coherent_vector(c(-0.3, 0.5), 12, 1e-8).unwrap().amplitudes;
        let st = TwoModeState::product(&mu, &nu).unwrap();
        let rho = st.reduced(Slot::Ordinary);
        for i in 0..12 {
            for j in 0..12 {
                let expected = mu[i] * mu[j].conj();
                assert!((rho.as_array()[[i, j]] - expected).norm() < 1e-14);
            }
        }
        let rho_t = st.reduced(Slot::Tilde);
        assert!((rho_t.as_array()[[1, 0]] - nu[1] * nu[0].conj()).norm() < 1e-14);
    }

    #[test]
    fn aligned_distance_ignores_global_phase() {
        let mu = coherent_vector(c(0.4, 0.1), 10, 1e-8).unwrap().amplitudes;
        let st = TwoModeState::product(&mu, &mu).unwrap();
        let rotated = st.with_phase(1.234);
        assert!(st.distance(&rotated).unwrap() > 0.1);
        assert!(st.aligned_distance(&rotated).unwrap() < 1e-14);
    }

    #[test]
    fn matrix_power_matches_repeated_product() {
        let d = 3;
        let a = TwoModeOperator::embed(&ModeMatrix::annihilation(d).unwrap(), Slot::Ordinary);
        let x = a.add(&a.dagger()).unwrap().scale(c(0.3, 0.1));
        let p5 = x.pow(5);
        let mut q = TwoModeOperator::identity(d).unwrap();
        for _ in 0..5 {
            q = q.mul(&x).unwrap();
        }
        assert!(p5.sub(&q).unwrap().max_abs() < 1e-14);
        assert_eq!(x.pow(0), TwoModeOperator::identity(d).unwrap());
    }
}
