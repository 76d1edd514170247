//! ADMM solvers for quaternion matrix completion on a tri-factorization
//! `X ≈ L·D·R`.
//!
//! Every iteration refreshes `L` and `(R, D̂)` by one CQSVD-QQR sweep on
//! `X + E/μ`, regularizes the core `D̂`, rebuilds `X` on the unobserved
//! entries and takes a dual ascent step on `E` (and `F` for the sparse
//! variant). Observed entries of `X` always equal the data.

mod config;
mod mask;
mod schedule;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use config::{
    preset_rank, preset_ranks_256, Method, SolverConfig, DEFAULT_MAX_ITER, DEFAULT_MU_MAX, DEFAULT_TOL,
    PRESET_MISSING_RATIOS,
};
pub use mask::Mask;
pub use schedule::{make_weight_schedule, WeightSchedule};

use crate::error::{Error, Result};
use crate::linalg::{update_left, update_right, TriFactor};
use crate::matrix::QuaternionMatrix;
use crate::prox::{l21_prox, soft_threshold_elementwise};
use crate::transforms::{fqdct_l, iqdct_l, QdctContext};

/// Per-iteration diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    /// `‖X⁺ − X‖_F / max(1, ‖X‖_F)`.
    pub relative_change: f64,
    /// `‖X⁺ − L·D·R‖_F / max(1, ‖X⁺‖_F)`.
    pub primal_residual: f64,
    /// Penalty used by this iteration.
    pub mu: f64,
    pub shrinkage_min: f64,
    pub shrinkage_max: f64,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct SolverReport {
    pub method: Method,
    pub iterations: usize,
    pub converged: bool,
    pub history: Vec<IterationRecord>,
    pub factors: TriFactor,
    /// Completed matrix.
    pub x: QuaternionMatrix,
    /// QDCT coefficients `C` (QLNM-QQR-SR only).
    pub sparse_coefficients: Option<QuaternionMatrix>,
}

impl SolverReport {
    pub fn relative_changes(&self) -> Vec<f64> {
        self.history.iter().map(|h| h.relative_change).collect()
    }

    pub fn total_seconds(&self) -> f64 {
        self.history.iter().map(|h| h.seconds).sum()
    }
}

/// Snapshot handed to an observer after every iteration.
pub struct IterationState<'a> {
    /// 1-based.
    pub iteration: usize,
    pub mu: f64,
    pub l: &'a QuaternionMatrix,
    /// Regularized core.
    pub d: &'a QuaternionMatrix,
    /// Core before regularization, `S(1:r, 1:r)ᴴ` of the right QQR.
    pub d_hat: &'a QuaternionMatrix,
    pub rfac: &'a QuaternionMatrix,
    pub x: &'a QuaternionMatrix,
    /// Multiplier `E` after its update.
    pub dual: &'a QuaternionMatrix,
    /// Column factors applied to `D̂` to obtain `D`.
    pub shrinkage: &'a [f64],
    pub relative_change: f64,
    pub primal_residual: f64,
}

/// Runs the solver selected by `cfg.method`.
pub fn complete(m: &QuaternionMatrix, mask: &Mask, cfg: &SolverConfig) -> Result<SolverReport> {
    complete_observed(m, mask, cfg, &mut |_: &IterationState<'_>| {})
}

/// Like [`complete`], calling `observer` after every iteration.
pub fn complete_observed(
    m: &QuaternionMatrix,
    mask: &Mask,
    cfg: &SolverConfig,
    observer: &mut dyn FnMut(&IterationState<'_>),
) -> Result<SolverReport> {
    cfg.validate(m.rows(), m.cols())?;
    let core = match cfg.method {
        Method::QlnmQqr | Method::QlnmQqrSr => CoreUpdate::L21,
        Method::IrqlnmQqr => CoreUpdate::Reweight(make_weight_schedule(cfg.rank, cfg.varsigma, cfg.v)?),
    };
    run(m, mask, cfg, core, observer)
}

pub fn qlnm_qqr_complete(m: &QuaternionMatrix, mask: &Mask, cfg: &SolverConfig) -> Result<SolverReport> {
    complete(m, mask, &cfg.clone().with_method(Method::QlnmQqr))
}

pub fn irqlnm_qqr_complete(m: &QuaternionMatrix, mask: &Mask, cfg: &SolverConfig) -> Result<SolverReport> {
    complete(m, mask, &cfg.clone().with_method(Method::IrqlnmQqr))
}

pub fn qlnm_qqr_sr_complete(m: &QuaternionMatrix, mask: &Mask, cfg: &SolverConfig) -> Result<SolverReport> {
    complete(m, mask, &cfg.clone().with_method(Method::QlnmQqrSr))
}

/// IRQLNM-QQR with an explicit column scaling in place of the one derived
/// from `cfg.varsigma` and `cfg.v`.
pub fn irqlnm_qqr_complete_with_schedule(
    m: &QuaternionMatrix,
    mask: &Mask,
    cfg: &SolverConfig,
    schedule: &WeightSchedule,
    observer: &mut dyn FnMut(&IterationState<'_>),
) -> Result<SolverReport> {
    if schedule.len() != cfg.rank {
        return Err(Error::config(format!(
            "schedule has {} weights for rank {}",
            schedule.len(),
            cfg.rank
        )));
    }
    // the explicit schedule replaces varsigma and v, so validate as QLNM-QQR
    cfg.clone().with_method(Method::QlnmQqr).validate(m.rows(), m.cols())?;
    let cfg = cfg.clone().with_method(Method::IrqlnmQqr);
    run(m, mask, &cfg, CoreUpdate::Reweight(schedule.clone()), observer)
}

enum CoreUpdate {
    L21,
    Reweight(WeightSchedule),
}

struct SparseState {
    ctx: QdctContext,
    c: QuaternionMatrix,
    f: QuaternionMatrix,
}

/// Runs the iteration for a configuration its caller has validated.
fn run(
    m: &QuaternionMatrix,
    mask: &Mask,
    cfg: &SolverConfig,
    core: CoreUpdate,
    observer: &mut dyn FnMut(&IterationState<'_>),
) -> Result<SolverReport> {
    let (rows, cols) = m.shape();
    if mask.shape() != (rows, cols) {
        return Err(Error::dims(format!(
            "mask is {}x{}, data is {rows}x{cols}",
            mask.rows(),
            mask.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::arg("observed matrix contains non-finite entries"));
    }

    let observed = mask.project(m)?;
    let mut x = observed.clone();
    let mut tf = TriFactor::eye(rows, cols, cfg.rank)?;
    let mut e = QuaternionMatrix::zeros(rows, cols);
    let mut sparse = match cfg.method {
        Method::QlnmQqrSr => Some(SparseState {
            ctx: QdctContext::with_axis(cfg.qdct_axis, rows, cols)?,
            c: QuaternionMatrix::zeros(rows, cols),
            f: QuaternionMatrix::zeros(rows, cols),
        }),
        _ => None,
    };

    let mut mu = cfg.mu0;
    let mut history = Vec::new();
    let mut converged = false;

    for iteration in 1..=cfg.max_iter {
        let start = Instant::now();
        let xb = &x + &(e.scale(1.0 / mu));

        let l = update_left(&xb, &tf.rfac);
        let (rfac, d_hat) = update_right(&xb, &l);
        let (d, shrinkage) = match &core {
            CoreUpdate::L21 => {
                let (d, s) = l21_prox(&d_hat, 1.0 / mu)?;
                (d, s.coefficients)
            }
            CoreUpdate::Reweight(s) => (d_hat.scale_columns(&s.a_hat)?, s.a_hat.clone()),
        };
        let ldr = l.matmul(&d)?.matmul(&rfac)?;

        let x_new = match &sparse {
            Some(sp) => {
                let back = iqdct_l(&sp.ctx, &(&sp.c + &sp.f.scale(1.0 / mu)))?;
                let fill = (&(&ldr - &e.scale(1.0 / mu)) + &back).scale(0.5);
                mask.merge(&observed, &fill)?
            }
            None => mask.merge(&observed, &ldr)?,
        };

        let gap = &x_new - &ldr;
        let primal_residual = gap.frobenius_norm() / x_new.frobenius_norm().max(1.0);
        e += &gap.scale(mu);
        if let Some(sp) = &mut sparse {
            let tx = fqdct_l(&sp.ctx, &x_new)?;
            sp.c = soft_threshold_elementwise(&(&tx - &sp.f.scale(1.0 / mu)), 4.0 * cfg.beta / mu)?;
            sp.f += &(&sp.c - &tx).scale(mu);
        }

        let relative_change = (&x_new - &x).frobenius_norm() / x.frobenius_norm().max(1.0);
        x = x_new;
        tf = TriFactor {
            l,
            d,
            rfac,
            target_rank: cfg.rank,
        };

        observer(&IterationState {
            iteration,
            mu,
            l: &tf.l,
            d: &tf.d,
            d_hat: &d_hat,
            rfac: &tf.rfac,
            x: &x,
            dual: &e,
            shrinkage: &shrinkage,
            relative_change,
            primal_residual,
        });
        history.push(IterationRecord {
            relative_change,
            primal_residual,
            mu,
            shrinkage_min: shrinkage.iter().copied().fold(f64::INFINITY, f64::min),
            shrinkage_max: shrinkage.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            seconds: start.elapsed().as_secs_f64(),
        });

        if !x.is_finite() {
            return Err(Error::arg(format!("iterate diverged at iteration {iteration}")));
        }
        mu = (cfg.rho * mu).min(cfg.mu_max);
        // a small change alone is not enough: while the threshold zeroes the
        // whole core, X sits at P_Ω(M) without moving
        if relative_change < cfg.tol && primal_residual < cfg.tol {
            converged = true;
            break;
        }
    }

    Ok(SolverReport {
        method: cfg.method,
        iterations: history.len(),
        converged,
        history,
        factors: tf,
        x,
        sparse_coefficients: sparse.map(|s| s.c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tests_support::random_matrix;

    fn low_rank(rows: usize, cols: usize, rank: usize, seed: u64) -> QuaternionMatrix {
        random_matrix(rows, rank, seed).matmul(&random_matrix(rank, cols, seed + 1)).unwrap()
    }

    #[test]
    fn fully_observed_returns_data_after_one_iteration() {
        let m = low_rank(10, 8, 2, 81);
        let mask = Mask::all_observed(10, 8);
        for method in Method::ALL {
            let mut cfg = SolverConfig::new(method, 4);
            cfg.max_iter = 1;
            let rep = complete(&m, &mask, &cfg).unwrap();
            assert_eq!(rep.iterations, 1, "{method}");
            assert_eq!(rep.x, m);
        }
    }

    #[test]
    fn zero_data_stays_zero() {
        let m = QuaternionMatrix::zeros(6, 7);
        let mask = Mask::from_fn(6, 7, |r, c| (r + c) % 2 == 0);
        for method in Method::ALL {
            let rep = complete(&m, &mask, &SolverConfig::new(method, 4)).unwrap();
            assert_eq!(rep.x.frobenius_norm(), 0.0, "{method}");
        }
    }

    #[test]
    fn observed_entries_are_reproduced() {
        let m = low_rank(12, 10, 2, 82);
        let mask = Mask::from_fn(12, 10, |r, c| (3 * r + c) % 4 != 0);
        let mut cfg = SolverConfig::new(Method::QlnmQqrSr, 4);
        cfg.max_iter = 5;
        let rep = complete(&m, &mask, &cfg).unwrap();
        assert_eq!(mask.project(&rep.x).unwrap(), mask.project(&m).unwrap());
        assert!(rep.sparse_coefficients.is_some());
    }

    #[test]
    fn mu_follows_schedule() {
        let m = low_rank(8, 8, 2, 83);
        let mask = Mask::from_fn(8, 8, |r, c| (r * c) % 3 != 1);
        let mut cfg = SolverConfig::new(Method::QlnmQqr, 3);
        cfg.tol = 0.0;
        cfg.max_iter = 20;
        cfg.mu_max = 0.004;
        let rep = complete(&m, &mask, &cfg).unwrap();
        let mut mu = cfg.mu0;
        for h in &rep.history {
            assert_eq!(h.mu, mu);
            mu = (mu * cfg.rho).min(cfg.mu_max);
        }
        assert_eq!(rep.history.last().unwrap().mu, 0.004);
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = QuaternionMatrix::zeros(4, 4);
        let mask = Mask::all_observed(4, 5);
        assert!(complete(&m, &mask, &SolverConfig::new(Method::QlnmQqr, 2)).is_err());
        let mask = Mask::all_observed(4, 4);
        assert!(matches!(
            complete(&m, &mask, &SolverConfig::new(Method::QlnmQqr, 5)),
            Err(Error::InvalidConfig(_))
        ));
        let sched = WeightSchedule::from_scaling(vec![1.0; 3]).unwrap();
        let cfg = SolverConfig::new(Method::IrqlnmQqr, 2);
        assert!(irqlnm_qqr_complete_with_schedule(&m, &mask, &cfg, &sched, &mut |_| {}).is_err());
    }
}
