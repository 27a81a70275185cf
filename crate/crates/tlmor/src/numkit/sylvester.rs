//! Bartels–Stewart solvers for Lyapunov and Sylvester equations.
//!
//! `A X + X B + C = 0` is reduced to quasi-triangular form by two real Schur
//! decompositions and solved by block back-substitution over the 1×1/2×2
//! diagonal blocks. The Kronecker vectorization of the same equations is kept
//! in test code as an independent oracle.

use nalgebra::DMatrix;

use crate::error::{MorError, Result};
use crate::numkit::{ensure_finite, schur, DEFAULT_RESIDUAL_TOL};

/// Solve the Lyapunov equation `A X + X Aᵀ + W = 0`.
///
/// Requires that `A` and `-Aᵀ` share no eigenvalue. The result is symmetrized
/// when `W` is symmetric.
pub fn solve_lyap(a: &DMatrix<f64>, w: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    solve_lyap_tol(a, w, DEFAULT_RESIDUAL_TOL)
}

/// [`solve_lyap`] with an explicit relative residual tolerance.
pub fn solve_lyap_tol(a: &DMatrix<f64>, w: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(MorError::Dimension("solve_lyap: A must be square".into()));
    }
    if w.nrows() != n || w.ncols() != n {
        return Err(MorError::Dimension(format!(
            "solve_lyap: W is {}x{}, expected {n}x{n}",
            w.nrows(),
            w.ncols()
        )));
    }
    ensure_finite(a, "solve_lyap")?;
    ensure_finite(w, "solve_lyap")?;
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }

    let (u, t) = schur(a)?;
    let f = u.transpose() * (-w) * &u;
    let y = solve_quasi_triangular(&t, &t, &f, true)?;
    let mut x = &u * y * u.transpose();

    let w_sym = (w - w.transpose()).norm() <= 1e-13 * w.norm().max(f64::MIN_POSITIVE);
    if w_sym {
        x = (&x + x.transpose()) * 0.5;
    }

    let residual = (a * &x + &x * a.transpose() + w).norm();
    let scale = (a.norm() * x.norm() + w.norm()).max(f64::MIN_POSITIVE);
    if !residual.is_finite() || residual > tol * scale {
        return Err(MorError::SingularEquation(format!(
            "Lyapunov residual {residual:e} exceeds {tol:e} of scale {scale:e}"
        )));
    }
    Ok(x)
}

/// Solve the Sylvester equation `A X + X B + C = 0`.
pub fn solve_sylv(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    solve_sylv_tol(a, b, c, DEFAULT_RESIDUAL_TOL)
}

/// [`solve_sylv`] with an explicit relative residual tolerance.
pub fn solve_sylv_tol(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    c: &DMatrix<f64>,
    tol: f64,
) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let m = b.nrows();
    if a.ncols() != n || b.ncols() != m {
        return Err(MorError::Dimension("solve_sylv: A and B must be square".into()));
    }
    if c.nrows() != n || c.ncols() != m {
        return Err(MorError::Dimension(format!(
            "solve_sylv: C is {}x{}, expected {n}x{m}",
            c.nrows(),
            c.ncols()
        )));
    }
    ensure_finite(a, "solve_sylv")?;
    ensure_finite(b, "solve_sylv")?;
    ensure_finite(c, "solve_sylv")?;
    if n == 0 || m == 0 {
        return Ok(DMatrix::zeros(n, m));
    }

    let (ua, ta) = schur(a)?;
    let (ub, tb) = schur(b)?;
    let f = ua.transpose() * (-c) * &ub;
    let y = solve_quasi_triangular(&ta, &tb, &f, false)?;
    let x = &ua * y * ub.transpose();

    let residual = (a * &x + &x * b + c).norm();
    let scale = ((a.norm() + b.norm()) * x.norm() + c.norm()).max(f64::MIN_POSITIVE);
    if !residual.is_finite() || residual > tol * scale {
        return Err(MorError::SingularEquation(format!(
            "Sylvester residual {residual:e} exceeds {tol:e} of scale {scale:e}"
        )));
    }
    Ok(x)
}

/// Diagonal block structure of an upper quasi-triangular matrix.
fn quasi_blocks(t: &DMatrix<f64>) -> Vec<(usize, usize)> {
    let n = t.nrows();
    let mut blocks = Vec::new();
    let mut k = 0;
    while k < n {
        if k + 1 < n && t[(k + 1, k)] != 0.0 {
            blocks.push((k, 2));
            k += 2;
        } else {
            blocks.push((k, 1));
            k += 1;
        }
    }
    blocks
}

/// Solve `Ta Y + Y Tb = F` (or `Ta Y + Y Tbᵀ = F` when `tb_transposed`),
/// with `Ta`, `Tb` upper quasi-triangular.
fn solve_quasi_triangular(
    ta: &DMatrix<f64>,
    tb: &DMatrix<f64>,
    f: &DMatrix<f64>,
    tb_transposed: bool,
) -> Result<DMatrix<f64>> {
    let n = ta.nrows();
    let m = tb.nrows();
    let a_blocks = quasi_blocks(ta);
    let b_blocks = quasi_blocks(tb);
    let mut y = DMatrix::<f64>::zeros(n, m);

    let col_order: Vec<(usize, usize)> = if tb_transposed {
        b_blocks.iter().rev().cloned().collect()
    } else {
        b_blocks
    };

    for &(j0, js) in &col_order {
        for &(i0, is) in a_blocks.iter().rev() {
            let mut rhs = f.view((i0, j0), (is, js)).clone_owned();

            // Couplings from already-computed row blocks below block i.
            let below = i0 + is;
            if below < n {
                rhs -= ta.view((i0, below), (is, n - below)) * y.view((below, j0), (n - below, js));
            }
            // Couplings from already-computed column blocks.
            if tb_transposed {
                let after = j0 + js;
                if after < m {
                    // (Y Tbᵀ)[:, j] couples with columns l > j via Tb[j, l].
                    rhs -= y.view((i0, after), (is, m - after))
                        * tb.view((j0, after), (js, m - after)).transpose();
                }
            } else if j0 > 0 {
                rhs -= y.view((i0, 0), (is, j0)) * tb.view((0, j0), (j0, js));
            }

            let p = ta.view((i0, i0), (is, is)).clone_owned();
            let q = if tb_transposed {
                tb.view((j0, j0), (js, js)).transpose()
            } else {
                tb.view((j0, j0), (js, js)).clone_owned()
            };
            let yij = solve_small_sylvester(&p, &q, &rhs)?;
            y.view_mut((i0, j0), (is, js)).copy_from(&yij);
        }
    }
    Ok(y)
}

/// Direct Kronecker solve of `P Y + Y Q = R` for blocks of size at most 2.
fn solve_small_sylvester(
    p: &DMatrix<f64>,
    q: &DMatrix<f64>,
    r: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    let pr = p.nrows();
    let qr = q.nrows();
    let k = pr * qr;
    // (I ⊗ P + Qᵀ ⊗ I) vec(Y) = vec(R), column-major vectorization.
    let mut m = DMatrix::<f64>::zeros(k, k);
    for j in 0..qr {
        for i in 0..pr {
            let row = j * pr + i;
            for u in 0..pr {
                m[(row, j * pr + u)] += p[(i, u)];
            }
            for l in 0..qr {
                m[(row, l * pr + i)] += q[(l, j)];
            }
        }
    }
    let mut rhs = nalgebra::DVector::<f64>::zeros(k);
    for j in 0..qr {
        for i in 0..pr {
            rhs[j * pr + i] = r[(i, j)];
        }
    }
    let sol = m.lu().solve(&rhs).ok_or_else(|| {
        MorError::SingularEquation(
            "spectra of the coefficient matrices overlap; no unique solution".into(),
        )
    })?;
    let mut y = DMatrix::<f64>::zeros(pr, qr);
    for j in 0..qr {
        for i in 0..pr {
            y[(i, j)] = sol[j * pr + i];
        }
    }
    Ok(y)
}
