//! Single-mode density matrices and the partial trace.

use ndarray::{s, Array1, Array2};

use super::{check_cutoff, two_mode_index, ModeMatrix, Slot, TwoModeOperator};
use crate::error::{Result, TfdError};
use crate::linalg::{self, C64};

const TRACE_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-12;
const POSITIVITY_TOL: f64 = 1e-10;
/// Hermiticity defect accepted on the two-mode input of [`partial_trace`].
const PARTIAL_TRACE_HERMITIAN_TOL: f64 = 1e-10;

/// A single-mode density matrix on levels `0..d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: Array2<C64>,
}

impl DensityMatrix {
    /// Validates unit trace, Hermiticity and positivity.
    pub fn new(mat: Array2<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(TfdError::DimensionMismatch {
                expected: mat.nrows(),
                got: mat.ncols(),
            });
        }
        check_cutoff(mat.nrows())?;
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TfdError::NonFinite);
        }
        let defect = linalg::hermiticity_defect(&mat);
        if defect > HERMITIAN_TOL {
            return Err(TfdError::NotHermitian(defect));
        }
        let rho = Self { mat };
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(TfdError::NotDensityMatrix(format!("trace {tr} differs from 1")));
        }
        let min = rho.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(TfdError::NotDensityMatrix(format!("negative eigenvalue {min}")));
        }
        Ok(rho)
    }

    pub(crate) fn from_hermitian_unchecked(mat: Array2<C64>) -> Self {
        Self { mat }
    }

    /// `|v><v|` for a normalized vector.
    pub fn pure(v: &Array1<C64>) -> Result<Self> {
        let n = linalg::vec_norm(v);
        if n == 0.0 || !n.is_finite() {
            return Err(TfdError::InvalidParameter("pure state needs a nonzero finite vector".into()));
        }
        let u = v.mapv(|z| z / n);
        let d = u.len();
        Self::new(Array2::from_shape_fn((d, d), |(i, j)| u[i] * u[j].conj()))
    }

    /// Bose-Einstein diagonal `(1 - t) t^n` renormalized on `d` levels.
    pub fn thermal(t: f64, d: usize) -> Result<Self> {
        check_cutoff(d)?;
        if !(0.0..1.0).contains(&t) {
            return Err(TfdError::InvalidParameter(format!("thermal ratio {t} not in [0, 1)")));
        }
        let p: Vec<f64> = (0..d).map(|n| (1.0 - t) * t.powi(n as i32)).collect();
        let total: f64 = p.iter().sum();
        Ok(Self {
            mat: Array2::from_diag(&Array1::from_iter(p.iter().map(|x| C64::new(x / total, 0.0)))),
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn as_array(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.diag().iter().map(|z| z.re).sum()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.mat)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.mat)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// `Tr(ρ A)`.
    pub fn expectation(&self, op: &ModeMatrix) -> Result<C64> {
        if op.dim() != self.dim() {
            return Err(TfdError::DimensionMismatch {
                expected: self.dim(),
                got: op.dim(),
            });
        }
        Ok(self.mat.t().iter().zip(op.as_array().iter()).map(|(r, a)| r * a).sum())
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.mat.diag().iter().enumerate().map(|(n, z)| n as f64 * z.re).sum()
    }

    /// `Tr(ρ a)`.
    pub fn mean_amplitude(&self) -> C64 {
        (1..self.dim())
            .map(|n| self.mat[[n, n - 1]] * (n as f64).sqrt())
            .sum()
    }

    /// Drops the highest levels whose combined population is at most `tol`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let d = self.dim();
        let mut keep = d;
        let mut dropped = 0.0;
        while keep > 2 {
            let p = self.mat[[keep - 1, keep - 1]].re.max(0.0);
            if dropped + p > tol {
                break;
            }
            dropped += p;
            keep -= 1;
        }
        Self {
            mat: self.mat.slice(s![..keep, ..keep]).to_owned(),
        }
    }

    /// Embeds `ρ` in a `d`-level space by zero padding; `d` below the
    /// current dimension is rejected.
    pub fn padded(&self, d: usize) -> Result<Self> {
        if d < self.dim() {
            return Err(TfdError::DimensionMismatch {
                expected: self.dim(),
                got: d,
            });
        }
        let mut mat = Array2::zeros((d, d));
        mat.slice_mut(s![..self.dim(), ..self.dim()]).assign(&self.mat);
        Ok(Self { mat })
    }

    /// Population on the top two levels.
    pub fn tail_mass(&self) -> f64 {
        let d = self.dim();
        (d.saturating_sub(2)..d).map(|n| self.mat[[n, n]].re).sum()
    }
}

/// Reduced density matrix of the kept mode of a two-mode density operator.
pub fn partial_trace(rho: &TwoModeOperator, keep: Slot) -> Result<DensityMatrix> {
    let defect = rho.hermiticity_defect();
    if defect > PARTIAL_TRACE_HERMITIAN_TOL {
        return Err(TfdError::NotHermitian(defect));
    }
    let d = rho.dim_per_mode();
    let full = rho.as_array();
    let mut out = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            out[[i, j]] = (0..d)
                .map(|k| match keep {
                    Slot::Ordinary => full[[two_mode_index(d, i, k), two_mode_index(d, j, k)]],
                    Slot::Tilde => full[[two_mode_index(d, k, i), two_mode_index(d, k, j)]],
                })
                .sum();
        }
    }
    Ok(DensityMatrix::from_hermitian_unchecked(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::{coherent_vector, TwoModeState};
    use approx::assert_abs_diff_eq;

    fn outer(st: &TwoModeState) -> TwoModeOperator {
        let v = st.amplitudes();
        let n = v.len();
        TwoModeOperator::from_array(
            st.dim_per_mode(),
            Array2::from_shape_fn((n, n), |(i, j)| v[i] * v[j].conj()),
        )
        .unwrap()
    }

    #[test]
    fn partial_trace_of_product_state() {
        let d = 10;
        let mu = coherent_vector(C64::new(0.5, 0.2), d, 1e-6).unwrap().amplitudes;
        let nu = coherent_vector(C64::new(-0.1, 0.4), d, 1e-6).unwrap().amplitudes;
        let st = TwoModeState::product(&mu, &nu).unwrap();
        let full = outer(&st);
        let rho = partial_trace(&full, Slot::Ordinary).unwrap();
        let expected = DensityMatrix::pure(&mu).unwrap();
        assert!(linalg::max_abs(&(rho.as_array() - expected.as_array())) < 1e-14);
        let rho_t = partial_trace(&full, Slot::Tilde).unwrap();
        let expected_t = DensityMatrix::pure(&nu).unwrap();
        assert!(linalg::max_abs(&(rho_t.as_array() - expected_t.as_array())) < 1e-14);
        assert_abs_diff_eq!(rho.trace(), 1.0, epsilon = 1e-12);
        // the vector shortcut agrees with the operator route
        assert!(linalg::max_abs(&(st.reduced(Slot::Ordinary).as_array() - rho.as_array())) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_non_hermitian() {
        let d = 3;
        let mut m = Array2::zeros((9, 9));
        m[[0, 1]] = C64::new(1.0, 0.0);
        let op = TwoModeOperator::from_array(d, m).unwrap();
        assert!(matches!(partial_trace(&op, Slot::Ordinary), Err(TfdError::NotHermitian(_))));
    }

    #[test]
    fn density_validation() {
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = C64::new(0.5, 0.0);
        assert!(matches!(DensityMatrix::new(m.clone()), Err(TfdError::NotDensityMatrix(_))));
        m[[1, 1]] = C64::new(0.5, 0.0);
        let rho = DensityMatrix::new(m).unwrap();
        assert_abs_diff_eq!(rho.purity(), 0.5, epsilon = 1e-15);
        let mut neg = Array2::zeros((2, 2));
        neg[[0, 0]] = C64::new(1.5, 0.0);
        neg[[1, 1]] = C64::new(-0.5, 0.0);
        assert!(matches!(DensityMatrix::new(neg), Err(TfdError::NotDensityMatrix(_))));
    }

    #[test]
    fn thermal_mean_photon_number() {
        let t = 0.3;
        let rho = DensityMatrix::thermal(t, 80).unwrap();
        assert_abs_diff_eq!(rho.mean_photon_number(), t / (1.0 - t), epsilon = 1e-12);
        assert_abs_diff_eq!(rho.purity(), (1.0 - t) / (1.0 + t), epsilon = 1e-12);
    }

    #[test]
    fn trimming_keeps_populated_levels() {
        let rho = DensityMatrix::thermal(0.1, 40).unwrap();
        let small = rho.trimmed(1e-30);
        assert!(small.dim() < 40);
        assert!(small.dim() > 20);
        assert_abs_diff_eq!(small.trace(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn padding_preserves_moments() {
        let rho = DensityMatrix::thermal(0.3, 6).unwrap();
        let big = rho.padded(9).unwrap();
        assert_eq!(big.dim(), 9);
        assert_eq!(big.mean_photon_number(), rho.mean_photon_number());
        assert!(rho.padded(4).is_err());
    }
}
