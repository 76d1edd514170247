//! QQR-based tri-factorization `X ≈ L·D·R` (CQSVD-QQR).
//!
//! Each sweep is one step of a two-sided subspace iteration:
//!
//! ```text
//! [Q, ~]  = qqr(X·Rᴴ),   L = Q(:, 1:r)
//! [T, S]  = qqr(Xᴴ·L),   R = T(:, 1:r)ᴴ,   D = S(1:r, 1:r)ᴴ
//! ```
//!
//! `D = Lᴴ X Rᴴ` is lower triangular and, as the sweeps converge, diagonal
//! with `|d_ss| = σ_s(X)`.

use crate::error::{Error, Result};
use crate::linalg::qqr::qqr;
use crate::matrix::QuaternionMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct TriFactor {
    /// `M×r`, orthonormal columns.
    pub l: QuaternionMatrix,
    /// `r×r`.
    pub d: QuaternionMatrix,
    /// `r×N`, orthonormal rows.
    pub rfac: QuaternionMatrix,
    pub target_rank: usize,
}

impl TriFactor {
    /// The `eye(M, r)`, `eye(r, r)`, `eye(r, N)` starting point.
    pub fn eye(rows: usize, cols: usize, rank: usize) -> Result<Self> {
        if rank == 0 || rank > rows.min(cols) {
            return Err(Error::arg(format!(
                "rank {rank} outside 1..={} for a {rows}x{cols} matrix",
                rows.min(cols)
            )));
        }
        Ok(TriFactor {
            l: QuaternionMatrix::eye(rows, rank),
            d: QuaternionMatrix::identity(rank),
            rfac: QuaternionMatrix::eye(rank, cols),
            target_rank: rank,
        })
    }

    /// `|d_ss|` for every diagonal entry.
    pub fn diagonal_moduli(&self) -> Vec<f64> {
        self.d.diagonal().iter().map(|q| q.modulus()).collect()
    }

    pub fn product(&self) -> QuaternionMatrix {
        self.l.matmul(&self.d).and_then(|ld| ld.matmul(&self.rfac)).expect("consistent tri-factor")
    }

    pub(crate) fn check_against(&self, rows: usize, cols: usize) -> Result<()> {
        let r = self.target_rank;
        if self.l.shape() != (rows, r) || self.d.shape() != (r, r) || self.rfac.shape() != (r, cols) {
            return Err(Error::dims(format!(
                "tri-factor {:?}·{:?}·{:?} does not fit a {rows}x{cols} matrix at rank {r}",
                self.l.shape(),
                self.d.shape(),
                self.rfac.shape()
            )));
        }
        Ok(())
    }
}

/// New `L` from `qqr(X·Rᴴ)`.
pub(crate) fn update_left(x: &QuaternionMatrix, rfac: &QuaternionMatrix) -> QuaternionMatrix {
    let r = rfac.rows();
    let xr = x.matmul_adjoint(rfac).expect("checked shapes");
    qqr(&xr).q.column_range(0, r)
}

/// New `(R, D)` from `qqr(Xᴴ·L)`: `R = T(:, 1:r)ᴴ`, `D = S(1:r, 1:r)ᴴ`.
pub(crate) fn update_right(x: &QuaternionMatrix, l: &QuaternionMatrix) -> (QuaternionMatrix, QuaternionMatrix) {
    let r = l.cols();
    let xl = x.adjoint_matmul(l).expect("checked shapes");
    let res = qqr(&xl);
    let t = res.q.column_range(0, r);
    let s = res.r.row_range(0, r).column_range(0, r);
    (t.conj_transpose(), s.conj_transpose())
}

/// One CQSVD-QQR sweep starting from `tf.rfac`.
pub fn cqsvd_qqr_step(x: &QuaternionMatrix, tf: &TriFactor) -> Result<TriFactor> {
    tf.check_against(x.rows(), x.cols())?;
    let l = update_left(x, &tf.rfac);
    let (rfac, d) = update_right(x, &l);
    Ok(TriFactor {
        l,
        d,
        rfac,
        target_rank: tf.target_rank,
    })
}

/// Runs sweeps from the `eye` initialization until the largest change of
/// `|d_ss|`, relative to the largest `|d_ss|`, drops below `tol` or `max_iter`
/// sweeps have been made.
pub fn cqsvd_qqr(x: &QuaternionMatrix, rank: usize, max_iter: usize, tol: f64) -> Result<TriFactor> {
    let mut tf = TriFactor::eye(x.rows(), x.cols(), rank)?;
    let mut prev = tf.diagonal_moduli();
    for _ in 0..max_iter {
        tf = cqsvd_qqr_step(x, &tf)?;
        let cur = tf.diagonal_moduli();
        let scale = cur.iter().cloned().fold(0.0, f64::max);
        let change = cur.iter().zip(&prev).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prev = cur;
        if change <= tol * scale || scale == 0.0 {
            break;
        }
    }
    Ok(tf)
}
