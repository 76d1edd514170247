//! Closed-form proximal operators on quaternion matrices.
//!
//! The column-wise L2,1 shrinkage keeps its factor-4 threshold `(‖y‖ − 4β)₊`,
//! which comes from the quaternion-derivative convention used to derive it,
//! while the weighted variant thresholds at `ω/μ`. The two agree under
//! `ω = 4βμ`:
//!
//! ```text
//! weighted_l21_prox(Y, [4βμ; N], μ) == l21_prox(Y, β)
//! ```

use crate::error::{Error, Result};
use crate::linalg::qsvd;
use crate::matrix::QuaternionMatrix;
use crate::quaternion::Quaternion;

/// Per-column scaling factors applied by a column shrinkage, each in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnShrinkage {
    pub coefficients: Vec<f64>,
}

impl ColumnShrinkage {
    /// `(norm − threshold)₊ / norm`, with zero columns mapping to 0.
    pub fn from_norms(norms: &[f64], thresholds: impl IntoIterator<Item = f64>) -> Self {
        let coefficients = norms
            .iter()
            .zip(thresholds)
            .map(|(&n, t)| if n > t && n > 0.0 { (n - t) / n } else { 0.0 })
            .collect();
        ColumnShrinkage { coefficients }
    }

    pub fn apply(&self, y: &QuaternionMatrix) -> Result<QuaternionMatrix> {
        y.scale_columns(&self.coefficients)
    }
}

/// `argmin_X β‖X‖_{2,1} + ½‖X − Y‖²_F` in the factor-4 convention: column `n`
/// is scaled by `(‖Y_{·n}‖₂ − 4β)₊ / ‖Y_{·n}‖₂`.
pub fn l21_prox(y: &QuaternionMatrix, beta: f64) -> Result<(QuaternionMatrix, ColumnShrinkage)> {
    if !(beta >= 0.0) {
        return Err(Error::arg(format!("beta must be nonnegative, got {beta}")));
    }
    let norms = y.column_norms();
    let shrink = ColumnShrinkage::from_norms(&norms, std::iter::repeat(4.0 * beta));
    Ok((shrink.apply(y)?, shrink))
}

/// Weighted column shrinkage: column `m` is scaled by `(σ_m − ω_m/μ)₊ / σ_m`
/// where `σ_m` is the norm of column `m` (the only singular value of that
/// column taken as a matrix).
pub fn weighted_l21_prox(y: &QuaternionMatrix, weights: &[f64], mu: f64) -> Result<QuaternionMatrix> {
    if weights.len() != y.cols() {
        return Err(Error::dims(format!(
            "{} weights for {} columns",
            weights.len(),
            y.cols()
        )));
    }
    if !(mu > 0.0) {
        return Err(Error::arg(format!("mu must be positive, got {mu}")));
    }
    if weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(Error::arg("weights must be nonnegative"));
    }
    let norms = y.column_norms();
    let shrink = ColumnShrinkage::from_norms(&norms, weights.iter().map(|w| w / mu));
    shrink.apply(y)
}

/// Quaternion singular value thresholding `U·diag((σ − μ)₊)·Vᴴ`.
pub fn qsvt_prox(y: &QuaternionMatrix, mu: f64) -> Result<QuaternionMatrix> {
    if !(mu >= 0.0) {
        return Err(Error::arg(format!("mu must be nonnegative, got {mu}")));
    }
    let k = y.rows().min(y.cols());
    weighted_qsvt_prox(y, &vec![1.0; k], mu)
}

/// Weighted singular value thresholding `U·diag((σ_l − μω_l)₊)·Vᴴ` for
/// nondecreasing nonnegative weights (so the thresholded values stay sorted).
pub fn weighted_qsvt_prox(y: &QuaternionMatrix, weights: &[f64], mu: f64) -> Result<QuaternionMatrix> {
    let k = y.rows().min(y.cols());
    if weights.len() != k {
        return Err(Error::dims(format!("{} weights for {k} singular values", weights.len())));
    }
    if !(mu >= 0.0) {
        return Err(Error::arg(format!("mu must be nonnegative, got {mu}")));
    }
    if weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(Error::arg("weights must be nonnegative"));
    }
    if weights.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::arg("weights must be nondecreasing"));
    }
    let svd = qsvd(y);
    let shrunk: Vec<f64> = svd
        .sigma
        .iter()
        .zip(weights)
        .map(|(s, w)| (s - mu * w).max(0.0))
        .collect();
    let us = svd.u.scale_columns(&shrunk)?;
    us.matmul_adjoint(&svd.v)
}

/// Entrywise soft threshold `S_t(x) = (x/|x|)·max(|x| − t, 0)`.
pub fn soft_threshold_elementwise(y: &QuaternionMatrix, t: f64) -> Result<QuaternionMatrix> {
    if !(t >= 0.0) {
        return Err(Error::arg(format!("threshold must be nonnegative, got {t}")));
    }
    Ok(y.map(|q| soft_threshold(q, t)))
}

#[inline]
fn soft_threshold(q: Quaternion, t: f64) -> Quaternion {
    let m = q.modulus();
    if m <= t || m == 0.0 {
        Quaternion::ZERO
    } else {
        q * ((m - t) / m)
    }
}
