//! Quaternion matrix factorizations.

mod cqsvd;
mod qqr;
mod qsvd;

pub use cqsvd::{cqsvd_qqr, cqsvd_qqr_step, TriFactor};
pub(crate) use cqsvd::{update_left, update_right};
pub use qqr::{qqr, QqrResult};
pub use qsvd::{equivalent_complex_singular_values, nuclear_norm, qsvd, QsvdResult};

use crate::matrix::QuaternionMatrix;

/// `‖QᴴQ − I‖_F` for a matrix with (intended) orthonormal columns.
pub fn unitary_defect(q: &QuaternionMatrix) -> f64 {
    let gram = q.adjoint_matmul(q).expect("square Gram matrix");
    (&gram - &QuaternionMatrix::identity(q.cols())).frobenius_norm()
}
