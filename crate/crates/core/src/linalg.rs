//! Dense complex linear algebra used by the Fock-space engine.

use ndarray::{s, Array1, Array2, Axis};
use num_complex::Complex64;

use crate::error::{Result, TfdError};
use crate::exec::Exec;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Row count above which [`matmul`] splits the product into row blocks.
const PAR_MATMUL_MIN_ROWS: usize = 256;
const PAR_MATMUL_BLOCK: usize = 64;

pub fn identity(n: usize) -> Array2<C64> {
    Array2::from_diag_elem(n, ONE)
}

pub fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

/// Largest entry modulus.
pub fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Maximum column sum of moduli.
pub fn norm1(m: &Array2<C64>) -> f64 {
    m.axis_iter(Axis(1))
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `max |M - M†|`.
pub fn hermiticity_defect(m: &Array2<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    worst
}

pub fn vec_norm(v: &Array1<C64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Matrix product; large products are split into row blocks evaluated
/// under `exec`.
pub fn matmul(a: &Array2<C64>, b: &Array2<C64>, exec: Exec) -> Array2<C64> {
    let n = a.nrows();
    if !exec.is_parallel() || n < PAR_MATMUL_MIN_ROWS {
        return a.dot(b);
    }
    let starts: Vec<usize> = (0..n).step_by(PAR_MATMUL_BLOCK).collect();
    let blocks = exec.map(&starts, |&r0| {
        let r1 = (r0 + PAR_MATMUL_BLOCK).min(n);
        a.slice(s![r0..r1, ..]).dot(b)
    });
    let mut out = Array2::zeros((n, b.ncols()));
    for (&r0, block) in starts.iter().zip(blocks) {
        let r1 = r0 + block.nrows();
        out.slice_mut(s![r0..r1, ..]).assign(&block);
    }
    out
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
///
/// The matrix is scaled by `2^-s` until its 1-norm is at most 1/2; the
/// Taylor order is the smallest `m` whose remainder bound
/// `b^(m+1)/(m+1)! * e^b` (with `b` the scaled 1-norm) falls below `tol`.
pub fn expm(m: &Array2<C64>, tol: f64, exec: Exec) -> Result<Array2<C64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(TfdError::DimensionMismatch {
            expected: n,
            got: m.ncols(),
        });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(TfdError::NonFinite);
    }
    if !(tol > 0.0) {
        return Err(TfdError::InvalidParameter(format!(
            "matrix exponential tolerance must be positive, got {tol}"
        )));
    }
    let norm = norm1(m);
    if norm == 0.0 {
        return Ok(identity(n));
    }
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = norm / 2f64.powi(squarings);
    let scaled = m.mapv(|z| z / 2f64.powi(squarings));
    let order = taylor_order(b, tol);
    let mut acc = taylor_paterson_stockmeyer(&scaled, order, exec);
    for _ in 0..squarings {
        acc = matmul(&acc, &acc, exec);
    }
    Ok(acc)
}

/// `sum_{k<=order} B^k / k!` with about `2 sqrt(order)` matrix products.
fn taylor_paterson_stockmeyer(b: &Array2<C64>, order: usize, exec: Exec) -> Array2<C64> {
    let n = b.nrows();
    let p = ((order as f64).sqrt().ceil() as usize).max(1);
    // powers[k] = B^k for k = 0..=p
    let mut powers = vec![identity(n), b.clone()];
    for k in 2..=p {
        let next = matmul(&powers[k - 1], b, exec);
        powers.push(next);
    }
    let mut inv_fact = vec![1.0f64; order + 1];
    for k in 1..=order {
        inv_fact[k] = inv_fact[k - 1] / k as f64;
    }
    // sum_j (B^p)^j * sum_{i<p} c_{jp+i} B^i, evaluated by Horner in B^p
    let blocks = order / p + 1;
    let block = |j: usize| {
        let mut acc = Array2::<C64>::zeros((n, n));
        for i in 0..p {
            let k = j * p + i;
            if k > order {
                break;
            }
            acc.scaled_add(C64::new(inv_fact[k], 0.0), &powers[i]);
        }
        acc
    };
    let mut acc = block(blocks - 1);
    for j in (0..blocks - 1).rev() {
        acc = matmul(&powers[p], &acc, exec);
        acc += &block(j);
    }
    acc
}

fn taylor_order(b: f64, tol: f64) -> usize {
    let mut term = b; // b^(m+1)/(m+1)! for m = 0
    let growth = b.exp();
    let mut m = 0usize;
    while term * growth > tol && m < 60 {
        m += 1;
        term *= b / (m + 1) as f64;
    }
    m.max(1)
}

/// Spectral norm (largest singular value) by Lanczos iteration on `A†A`
/// with full reorthogonalization.
pub fn spectral_norm(a: &Array2<C64>) -> f64 {
    let n = a.ncols();
    if n == 0 || a.nrows() == 0 {
        return 0.0;
    }
    let ad = dagger(a);
    let apply = |v: &Array1<C64>| ad.dot(&a.dot(v));
    // Deterministic start vector with no special alignment to any basis.
    let mut q: Array1<C64> = (0..n)
        .map(|k| {
            let x = k as f64;
            C64::from_polar(1.0 + 0.5 * (1.7 * x).sin(), 0.61 * x + 0.3 * (x * x).cos())
        })
        .collect();
    let nq = vec_norm(&q);
    q.mapv_inplace(|z| z / nq);
    let max_steps = n.min(400);
    let mut basis: Vec<Array1<C64>> = Vec::with_capacity(max_steps);
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut last = f64::NAN;
    for step in 0..max_steps {
        let mut w = apply(&q);
        let alpha = inner(&q, &w).re;
        basis.push(q.clone());
        // full reorthogonalization, twice for stability
        for _ in 0..2 {
            for v in &basis {
                let c = inner(v, &w);
                w.scaled_add(-c, v);
            }
        }
        alphas.push(alpha);
        let beta = vec_norm(&w);
        let converged_space = beta <= 1e-14 * alphas.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
        if step % 5 == 4 || converged_space || step + 1 == max_steps {
            let lmax = tridiagonal_max_eigenvalue(&alphas, &betas);
            if converged_space || (lmax - last).abs() <= 1e-14 * lmax.abs() {
                return lmax.max(0.0).sqrt();
            }
            last = lmax;
        }
        betas.push(beta);
        q = w.mapv(|z| z / beta);
    }
    last.max(0.0).sqrt()
}

fn tridiagonal_max_eigenvalue(alphas: &[f64], betas: &[f64]) -> f64 {
    let k = alphas.len();
    let t = nalgebra::DMatrix::<f64>::from_fn(k, k, |i, j| {
        if i == j {
            alphas[i]
        } else if i + 1 == j {
            betas[i]
        } else if j + 1 == i {
            betas[j]
        } else {
            0.0
        }
    });
    nalgebra::SymmetricEigen::new(t)
        .eigenvalues
        .iter()
        .fold(f64::NEG_INFINITY, |m, &x| m.max(x))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &Array2<C64>) -> Vec<f64> {
    let n = m.nrows();
    let mat = nalgebra::DMatrix::<C64>::from_fn(n, n, |i, j| 0.5 * (m[[i, j]] + m[[j, i]].conj()));
    let mut eig: Vec<f64> = nalgebra::SymmetricEigen::new(mat).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| a.total_cmp(b));
    eig
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Gauss-Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    for i in 0..n {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((mid - half * x, half * w));
    }
    out.reverse();
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
