//! Dense real/complex linear-algebra kernels consumed by every other module.
//!
//! The heavy decompositions (real Schur, SVD, LU) come from `nalgebra`; the
//! equation solvers built on top of them live here.

mod expm;
mod solve;
mod sylvester;

pub use expm::{expm, expm_t};
pub use solve::{orthonormalize, realify, shifted_solve, shifted_solve_real, to_complex};
pub use sylvester::{solve_lyap, solve_lyap_tol, solve_sylv, solve_sylv_tol};

use nalgebra::{DMatrix, Scalar};
use num_complex::Complex64;

use crate::error::{MorError, Result};

/// Default relative residual tolerance for equation solvers.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;

/// Relative singular-value threshold below which columns count as dependent.
pub const RANK_TOL: f64 = 1e-10;

/// Stability margin: all eigenvalues must satisfy `Re λ < -MARGIN`.
pub const STABILITY_MARGIN: f64 = 1e-12;

pub(crate) trait FiniteEntry: Scalar {
    fn entry_finite(&self) -> bool;
}

impl FiniteEntry for f64 {
    fn entry_finite(&self) -> bool {
        self.is_finite()
    }
}

impl FiniteEntry for Complex64 {
    fn entry_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Reject NaN/Inf entries at kernel entry points.
pub(crate) fn ensure_finite<T: FiniteEntry>(m: &DMatrix<T>, context: &str) -> Result<()> {
    if m.iter().all(|x| x.entry_finite()) {
        Ok(())
    } else {
        Err(MorError::NonFinite(format!("{context}: matrix contains NaN or Inf")))
    }
}

/// Real Schur decomposition `A = Q T Qᵀ` with `T` upper quasi-triangular.
pub fn schur(a: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if a.nrows() != a.ncols() {
        return Err(MorError::Dimension(format!(
            "Schur requires a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    ensure_finite(a, "schur")?;
    let n = a.nrows();
    if n == 0 {
        return Ok((DMatrix::zeros(0, 0), DMatrix::zeros(0, 0)));
    }
    let max_iter = 100 * n.max(10);
    nalgebra::linalg::Schur::try_new(a.clone(), f64::EPSILON, max_iter)
        .map(|s| s.unpack())
        .ok_or_else(|| MorError::Defective("real Schur iteration failed to converge".into()))
}

/// Eigenvalues of a square real matrix, in the order produced by the Schur form.
pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let (_, t) = schur(a)?;
    Ok(quasi_eigenvalues(&t))
}

/// Eigenvalues read off an upper quasi-triangular matrix.
pub(crate) fn quasi_eigenvalues(t: &DMatrix<f64>) -> Vec<Complex64> {
    let n = t.nrows();
    let mut eigs = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if k + 1 < n && t[(k + 1, k)] != 0.0 {
            // 2x2 block: eigenvalues of [[a, b], [c, d]]
            let (a, b) = (t[(k, k)], t[(k, k + 1)]);
            let (c, d) = (t[(k + 1, k)], t[(k + 1, k + 1)]);
            let mean = 0.5 * (a + d);
            let det = a * d - b * c;
            let disc = mean * mean - det;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                eigs.push(Complex64::new(mean + sq, 0.0));
                eigs.push(Complex64::new(mean - sq, 0.0));
            } else {
                let sq = (-disc).sqrt();
                eigs.push(Complex64::new(mean, sq));
                eigs.push(Complex64::new(mean, -sq));
            }
            k += 2;
        } else {
            eigs.push(Complex64::new(t[(k, k)], 0.0));
            k += 1;
        }
    }
    eigs
}

/// Largest real part over the spectrum of `a`.
pub fn spectral_abscissa(a: &DMatrix<f64>) -> Result<f64> {
    let eigs = eigenvalues(a)?;
    Ok(eigs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max))
}

/// `true` when every eigenvalue satisfies `Re λ < -STABILITY_MARGIN`.
pub fn is_stable(a: &DMatrix<f64>) -> Result<bool> {
    Ok(spectral_abscissa(a)? < -STABILITY_MARGIN)
}

/// Factor a symmetric positive semidefinite matrix as `Z Zᵀ` with
/// `Z: n×rank`. Eigenvalues below `clamp_rel · max λ` are clamped to zero.
pub fn psd_factor(m: &DMatrix<f64>, clamp_rel: f64) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(MorError::Dimension("psd_factor requires a square matrix".into()));
    }
    ensure_finite(m, "psd_factor")?;
    let sym = (m + m.transpose()) * 0.5;
    let eig = nalgebra::linalg::SymmetricEigen::new(sym);
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let floor = clamp_rel * lmax.max(f64::MIN_POSITIVE);
    let mut cols = Vec::new();
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l > floor {
            cols.push(eig.eigenvectors.column(i) * l.sqrt());
        }
    }
    let n = m.nrows();
    if cols.is_empty() {
        return Ok(DMatrix::zeros(n, 0));
    }
    Ok(DMatrix::from_columns(&cols))
}

/// 2-norm condition number estimate via SVD.
pub fn cond_2(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0f64, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}
