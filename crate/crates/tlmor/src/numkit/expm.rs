//! Matrix exponential via scaling-and-squaring with a diagonal Padé(13) approximant.
//!
//! Follows Higham's revisited scaling-and-squaring scheme: scale `A` by a
//! power of two until its 1-norm is below the Padé(13) threshold, evaluate the
//! rational approximant, and square the result back up.

use nalgebra::DMatrix;

use crate::error::{MorError, Result};
use crate::numkit::ensure_finite;

/// 1-norm threshold below which the Padé(13) approximant is accurate to f64
/// round-off (Higham 2005, Table 10.2).
const THETA_13: f64 = 5.371_920_351_148_152;

/// Padé(13,13) numerator coefficients b_0..b_13.
const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Compute `e^M` for a square real matrix.
///
/// `expm(0) = I` exactly; a non-square or non-finite input is rejected.
pub fn expm(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(MorError::Dimension(format!(
            "expm requires a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    ensure_finite(m, "expm")?;
    let n = m.nrows();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    if n == 1 {
        return Ok(DMatrix::from_element(1, 1, m[(0, 0)].exp()));
    }

    let norm = one_norm(m);
    if norm == 0.0 {
        return Ok(DMatrix::identity(n, n));
    }
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as u32
    } else {
        0
    };

    let scaled = m * 2f64.powi(-(squarings as i32));
    let mut result = pade_13(&scaled)?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// Convenience for `e^{Mt}`.
pub fn expm_t(m: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    expm(&(m * t))
}

fn pade_13(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let eye = DMatrix::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let w1 = &a6 * PADE_13[13] + &a4 * PADE_13[11] + &a2 * PADE_13[9];
    let w2 = &w1 * &a6 + &a6 * PADE_13[7] + &a4 * PADE_13[5] + &a2 * PADE_13[3] + &eye * PADE_13[1];
    let u = a * w2;

    let z1 = &a6 * PADE_13[12] + &a4 * PADE_13[10] + &a2 * PADE_13[8];
    let v = &z1 * &a6 + &a6 * PADE_13[6] + &a4 * PADE_13[4] + &a2 * PADE_13[2] + &eye * PADE_13[0];

    // exp(A) ≈ (V - U)^{-1} (V + U)
    let denom = &v - &u;
    let numer = &v + &u;
    denom
        .lu()
        .solve(&numer)
        .ok_or_else(|| MorError::SingularEquation("Padé denominator is singular".into()))
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    let mut max = 0.0f64;
    for j in 0..m.ncols() {
        let s: f64 = m.column(j).iter().map(|x| x.abs()).sum();
        max = max.max(s);
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) {
        assert_eq!(a.shape(), b.shape());
        let diff = (a - b).norm();
        assert!(diff <= tol, "matrices differ by {diff:e} > {tol:e}");
    }

    #[test]
    fn zero_maps_to_identity() {
        let z = DMatrix::<f64>::zeros(3, 3);
        let e = expm(&z).unwrap();
        assert_eq!(e, DMatrix::identity(3, 3));
    }

    #[test]
    fn diagonal_closed_form() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, -2.0]));
        let e = expm(&d).unwrap();
        let expected = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            0.367_879_441_171_442_3,
            0.135_335_283_236_612_7,
        ]));
        assert_close(&e, &expected, 1e-14);
    }

    #[test]
    fn nilpotent_series_terminates() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let e = expm(&m).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert_close(&e, &expected, 1e-15);
    }

    #[test]
    fn rejects_non_square() {
        let m = DMatrix::<f64>::zeros(2, 3);
        assert!(matches!(expm(&m), Err(MorError::Dimension(_))));
    }

    #[test]
    fn rejects_nan() {
        let mut m = DMatrix::<f64>::zeros(2, 2);
        m[(0, 1)] = f64::NAN;
        assert!(matches!(expm(&m), Err(MorError::NonFinite(_))));
    }

    #[test]
    fn large_norm_requires_scaling() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![30.0, -30.0]));
        let e = expm(&d).unwrap();
        assert!((e[(0, 0)] - 30.0f64.exp()).abs() / 30.0f64.exp() < 1e-12);
        assert!((e[(1, 1)] - (-30.0f64).exp()).abs() < 1e-20);
    }

    // Column-wise RK4 integration of x' = Ax is an independent oracle for expm.
    #[test]
    fn matches_rk4_integration_on_stable_system() {
        let a = DMatrix::from_row_slice(
            5,
            5,
            &[
                -2.0, 0.3, -0.1, 0.4, 0.0, //
                0.2, -1.5, 0.5, -0.3, 0.1, //
                -0.4, 0.1, -3.0, 0.2, 0.6, //
                0.0, -0.2, 0.3, -2.5, -0.1, //
                0.5, 0.0, -0.6, 0.1, -1.8,
            ],
        );
        let e = expm(&a).unwrap();

        let steps = 4000;
        let h = 1.0 / steps as f64;
        for col in 0..5 {
            let mut x = nalgebra::DVector::<f64>::zeros(5);
            x[col] = 1.0;
            for _ in 0..steps {
                let k1 = &a * &x;
                let k2 = &a * (&x + &k1 * (h / 2.0));
                let k3 = &a * (&x + &k2 * (h / 2.0));
                let k4 = &a * (&x + &k3 * h);
                x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
            }
            let diff = (&x - e.column(col)).norm();
            assert!(diff < 1e-8, "column {col} differs from RK4 by {diff:e}");
        }
    }
}
