//! Shifted linear solves and rank-revealing orthonormalization.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{MorError, Result};
use crate::numkit::{ensure_finite, RANK_TOL};

/// Lift a real matrix into the complex field.
pub fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Truncate a numerically-real complex matrix back to the reals.
///
/// Imaginary residue up to `rel_tol` times the matrix norm is discarded;
/// anything larger signals a realification bug upstream and is an error.
pub fn realify(m: &DMatrix<Complex64>, rel_tol: f64) -> Result<DMatrix<f64>> {
    let scale: f64 = m.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let max_imag = m.iter().map(|x| x.im.abs()).fold(0.0f64, f64::max);
    if max_imag > rel_tol * scale.max(f64::MIN_POSITIVE) {
        return Err(MorError::IllConditioned(format!(
            "imaginary residue {max_imag:e} exceeds {rel_tol:e} of scale {scale:e}"
        )));
    }
    Ok(m.map(|x| x.re))
}

/// Solve `(σI - A) X = R` for complex shift `σ` and complex right-hand side.
pub fn shifted_solve(
    a: &DMatrix<f64>,
    sigma: Complex64,
    rhs: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    if a.nrows() != a.ncols() {
        return Err(MorError::Dimension("shifted_solve: state map must be square".into()));
    }
    if rhs.nrows() != a.nrows() {
        return Err(MorError::Dimension(format!(
            "shifted_solve: rhs has {} rows, expected {}",
            rhs.nrows(),
            a.nrows()
        )));
    }
    ensure_finite(a, "shifted_solve")?;
    ensure_finite(rhs, "shifted_solve")?;

    let n = a.nrows();
    let mut m = to_complex(&(-a));
    for i in 0..n {
        m[(i, i)] += sigma;
    }
    let x = m
        .clone()
        .lu()
        .solve(rhs)
        .ok_or_else(|| MorError::SingularShift(format!("shift {sigma} lies in the spectrum")))?;

    let residual = (&m * &x - rhs).norm();
    let scale = m.norm() * x.norm() + rhs.norm();
    if !residual.is_finite() || residual > 1e-8 * scale.max(f64::MIN_POSITIVE) {
        return Err(MorError::SingularShift(format!(
            "shift {sigma} is (numerically) an eigenvalue; residual {residual:e}"
        )));
    }
    Ok(x)
}

/// Real-path variant of [`shifted_solve`] for a real shift.
pub fn shifted_solve_real(
    a: &DMatrix<f64>,
    sigma: f64,
    rhs: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    let x = shifted_solve(a, Complex64::new(sigma, 0.0), &to_complex(rhs))?;
    realify(&x, 1e-12)
}

/// Orthonormal basis with the same column span as `v`.
///
/// Rank deficiency is detected via the singular values and reported together
/// with the numerical rank.
pub fn orthonormalize(v: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (n, c) = v.shape();
    if c == 0 || n == 0 {
        return Err(MorError::Dimension("orthonormalize: empty matrix".into()));
    }
    if c > n {
        return Err(MorError::Dimension(format!(
            "orthonormalize: {c} columns exceed {n} rows"
        )));
    }
    ensure_finite(v, "orthonormalize")?;

    let svd = v.clone().svd(true, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL * smax.max(f64::MIN_POSITIVE))
        .count();
    if rank < c {
        return Err(MorError::RankDeficient {
            rank,
            context: format!("orthonormalize: {c} columns span a rank-{rank} space"),
        });
    }
    let u = svd.u.expect("svd with compute_u");
    Ok(u.columns(0, c).into_owned())
}
