//! Left-handed quaternion discrete cosine transform.
//!
//! The forward transform splits `A = A_a + A_b j`, applies the orthonormal
//! 2-D DCT-II to both complex parts, reassembles, and left-multiplies every
//! entry by the quaternionization factor `q̇` (a unit pure quaternion, so
//! `q̇² = −1`). The DCT is real-linear, so transforming the complex parts is
//! the same as transforming the four real planes; each plane is transformed
//! separably as `C_M · P · C_Nᵀ` with the orthonormal DCT-II matrices.
//!
//! The inverse undoes the steps in reverse order, left-multiplying by
//! `q̇⁻¹ = −q̇` first.

use std::f64::consts::PI;

use ndarray::linalg::general_mat_mul;
use ndarray::Array2;

use crate::error::{Error, Result};
use crate::matrix::QuaternionMatrix;
use crate::quaternion::Quaternion;

const AXIS_TOL: f64 = 1e-12;

/// Orthonormal DCT-II matrix: `C[s, m] = ψ(s)·cos(π(2m+1)s / 2n)` with
/// `ψ(0) = √(1/n)` and `ψ(s) = √(2/n)` otherwise.
pub fn dct_matrix(n: usize) -> Array2<f64> {
    let nf = n as f64;
    Array2::from_shape_fn((n, n), |(s, m)| {
        let psi = if s == 0 { (1.0 / nf).sqrt() } else { (2.0 / nf).sqrt() };
        psi * (PI * (2 * m + 1) as f64 * s as f64 / (2.0 * nf)).cos()
    })
}

/// Quaternionization factor plus cached DCT matrices for one matrix shape.
#[derive(Clone, Debug)]
pub struct QdctContext {
    axis: Quaternion,
    rows: usize,
    cols: usize,
    dct_rows: Array2<f64>,
    dct_cols: Array2<f64>,
}

impl QdctContext {
    /// Context with the default factor `(i + j + k)/√3`.
    pub fn new(rows: usize, cols: usize) -> Self {
        Self::with_axis(Quaternion::gray_axis(), rows, cols).expect("gray axis is a unit pure quaternion")
    }

    /// Context with an explicit factor, which must be pure with unit modulus.
    pub fn with_axis(axis: Quaternion, rows: usize, cols: usize) -> Result<Self> {
        if axis.w.abs() > AXIS_TOL || (axis.modulus() - 1.0).abs() > AXIS_TOL {
            return Err(Error::arg(format!(
                "quaternionization factor {axis} must be a unit pure quaternion"
            )));
        }
        Ok(QdctContext {
            axis,
            rows,
            cols,
            dct_rows: dct_matrix(rows),
            dct_cols: dct_matrix(cols),
        })
    }

    pub fn axis(&self) -> Quaternion {
        self.axis
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn check(&self, a: &QuaternionMatrix) -> Result<()> {
        if a.shape() != (self.rows, self.cols) {
            return Err(Error::dims(format!(
                "QDCT context is {}x{}, matrix is {}x{}",
                self.rows,
                self.cols,
                a.rows(),
                a.cols()
            )));
        }
        Ok(())
    }

    fn planes_forward(&self, a: &QuaternionMatrix) -> QuaternionMatrix {
        let planes = a.planes().clone().map(|p| {
            let mut tmp = Array2::zeros((self.rows, self.cols));
            general_mat_mul(1.0, &self.dct_rows, &p, 0.0, &mut tmp);
            let mut out = Array2::zeros((self.rows, self.cols));
            general_mat_mul(1.0, &tmp, &self.dct_cols.t(), 0.0, &mut out);
            out
        });
        QuaternionMatrix::from_planes(planes).expect("shapes preserved")
    }

    fn planes_inverse(&self, b: &QuaternionMatrix) -> QuaternionMatrix {
        let planes = b.planes().clone().map(|p| {
            let mut tmp = Array2::zeros((self.rows, self.cols));
            general_mat_mul(1.0, &self.dct_rows.t(), &p, 0.0, &mut tmp);
            let mut out = Array2::zeros((self.rows, self.cols));
            general_mat_mul(1.0, &tmp, &self.dct_cols, 0.0, &mut out);
            out
        });
        QuaternionMatrix::from_planes(planes).expect("shapes preserved")
    }
}

/// Forward left-handed QDCT.
pub fn fqdct_l(ctx: &QdctContext, a: &QuaternionMatrix) -> Result<QuaternionMatrix> {
    ctx.check(a)?;
    Ok(ctx.planes_forward(a).left_scalar_mul(ctx.axis))
}

/// Inverse left-handed QDCT; `iqdct_l(fqdct_l(A)) = A`.
pub fn iqdct_l(ctx: &QdctContext, b: &QuaternionMatrix) -> Result<QuaternionMatrix> {
    ctx.check(b)?;
    Ok(ctx.planes_inverse(&b.left_scalar_mul(-ctx.axis)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tests_support::random_matrix;
    use crate::quaternion::qmul;

    /// Direct evaluation of the defining double sum.
    fn direct(axis: Quaternion, a: &QuaternionMatrix) -> QuaternionMatrix {
        let (m, n) = a.shape();
        let psi = |s: usize, len: usize| if s == 0 { (1.0 / len as f64).sqrt() } else { (2.0 / len as f64).sqrt() };
        QuaternionMatrix::from_fn(m, n, |s, t| {
            let mut acc = Quaternion::ZERO;
            for i in 0..m {
                for j in 0..n {
                    let c = (PI * (2 * i + 1) as f64 * s as f64 / (2.0 * m as f64)).cos()
                        * (PI * (2 * j + 1) as f64 * t as f64 / (2.0 * n as f64)).cos();
                    acc += qmul(axis, a.get(i, j)) * c;
                }
            }
            acc * (psi(s, m) * psi(t, n))
        })
    }

    #[test]
    fn scalar_input_maps_to_axis() {
        let ctx = QdctContext::new(1, 1);
        let out = fqdct_l(&ctx, &QuaternionMatrix::identity(1)).unwrap();
        assert!(out.get(0, 0).abs_diff_eq(Quaternion::gray_axis(), 1e-15));
    }

    #[test]
    fn zero_maps_to_zero() {
        let ctx = QdctContext::new(3, 5);
        let z = QuaternionMatrix::zeros(3, 5);
        assert_eq!(fqdct_l(&ctx, &z).unwrap().frobenius_norm(), 0.0);
        assert_eq!(iqdct_l(&ctx, &z).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn round_trip_and_parseval() {
        let ctx = QdctContext::new(8, 8);
        let a = random_matrix(8, 8, 51);
        let b = fqdct_l(&ctx, &a).unwrap();
        assert!(((b.frobenius_norm() - a.frobenius_norm()) / a.frobenius_norm()).abs() < 1e-10);
        let back = iqdct_l(&ctx, &b).unwrap();
        assert!(back.max_abs_diff(&a) < 1e-10);
    }

    #[test]
    fn constant_input_concentrates_at_dc() {
        let ctx = QdctContext::new(4, 4);
        let ones = QuaternionMatrix::from_fn(4, 4, |_, _| Quaternion::ONE);
        let b = fqdct_l(&ctx, &ones).unwrap();
        let oracle = direct(ctx.axis(), &ones);
        assert!((oracle.get(0, 0).modulus() - 4.0).abs() < 1e-12);
        assert!((b.get(0, 0).modulus() - 4.0).abs() < 1e-12);
        for s in 0..4 {
            for t in 0..4 {
                if (s, t) != (0, 0) {
                    assert!(b.get(s, t).modulus() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn matches_direct_double_sum() {
        let axis = Quaternion::pure(0.0, 0.6, 0.8);
        let ctx = QdctContext::with_axis(axis, 5, 7).unwrap();
        let a = random_matrix(5, 7, 52);
        let fast = fqdct_l(&ctx, &a).unwrap();
        assert!(fast.max_abs_diff(&direct(axis, &a)) < 1e-12);
    }

    #[test]
    fn rejects_bad_axis_and_shape() {
        assert!(QdctContext::with_axis(Quaternion::new(0.1, 1.0, 0.0, 0.0), 2, 2).is_err());
        assert!(QdctContext::with_axis(Quaternion::pure(1.0, 1.0, 0.0), 2, 2).is_err());
        let ctx = QdctContext::new(2, 3);
        assert!(matches!(
            fqdct_l(&ctx, &QuaternionMatrix::zeros(3, 2)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(iqdct_l(&ctx, &QuaternionMatrix::zeros(3, 2)).is_err());
    }
}
