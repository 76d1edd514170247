use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Column-wise L2,1 shrinkage of the tri-factor core.
    QlnmQqr,
    /// Fixed reweighting of the core columns.
    IrqlnmQqr,
    /// QLNM-QQR plus an L1 penalty on the QDCT coefficients.
    QlnmQqrSr,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::QlnmQqr, Method::IrqlnmQqr, Method::QlnmQqrSr];

    pub fn name(self) -> &'static str {
        match self {
            Method::QlnmQqr => "qlnm-qqr",
            Method::IrqlnmQqr => "irqlnm-qqr",
            Method::QlnmQqrSr => "qlnm-qqr-sr",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::arg(format!("unknown method {s:?} (expected qlnm-qqr, irqlnm-qqr or qlnm-qqr-sr)")))
    }
}

/// Hyperparameters shared by the three completion solvers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub method: Method,
    /// Target rank `r` of the tri-factorization.
    pub rank: usize,
    /// Initial penalty `μ⁰`.
    pub mu0: f64,
    /// Penalty growth factor `ρ ≥ 1`.
    pub rho: f64,
    pub mu_max: f64,
    /// Weight of the QDCT sparsity term (QLNM-QQR-SR only).
    pub beta: f64,
    /// Final weight `ς > 1` of the reweighting schedule (IRQLNM-QQR only).
    pub varsigma: f64,
    /// Number of leading unit weights `V` (IRQLNM-QQR only).
    pub v: usize,
    /// Stop once both `‖X⁺ − X‖_F / max(1, ‖X‖_F)` and the primal residual
    /// `‖X⁺ − LDR‖_F / max(1, ‖X⁺‖_F)` fall below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Quaternionization factor of the QDCT (QLNM-QQR-SR only).
    pub qdct_axis: Quaternion,
    pub seed: u64,
}

pub const DEFAULT_MU_MAX: f64 = 1e7;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 300;

impl SolverConfig {
    /// Defaults used in the reference experiments for `method`.
    pub fn new(method: Method, rank: usize) -> Self {
        let (mu0, rho) = match method {
            Method::QlnmQqr => (0.003, 1.05),
            Method::IrqlnmQqr => (0.003, 1.0),
            Method::QlnmQqrSr => (0.5, 1.05),
        };
        SolverConfig {
            method,
            rank,
            mu0,
            rho,
            mu_max: DEFAULT_MU_MAX,
            beta: 0.5,
            varsigma: 10.0,
            v: 3,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            qdct_axis: Quaternion::gray_axis(),
            seed: 0,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    /// Checks every invariant against an `rows×cols` problem.
    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        let bound = rows.min(cols);
        if self.rank == 0 || self.rank > bound {
            return Err(Error::config(format!("rank {} outside 1..={bound}", self.rank)));
        }
        if !(self.mu0 > 0.0 && self.mu0.is_finite()) {
            return Err(Error::config(format!("mu0 must be positive, got {}", self.mu0)));
        }
        if !(self.rho >= 1.0 && self.rho.is_finite()) {
            return Err(Error::config(format!("rho must be at least 1, got {}", self.rho)));
        }
        if !(self.mu_max >= self.mu0) {
            return Err(Error::config(format!(
                "mu_max {} is below mu0 {}",
                self.mu_max, self.mu0
            )));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::config(format!("tol must be nonnegative, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::config("max_iter must be positive"));
        }
        match self.method {
            Method::QlnmQqrSr => {
                if !(self.beta >= 0.0 && self.beta.is_finite()) {
                    return Err(Error::config(format!("beta must be nonnegative, got {}", self.beta)));
                }
                let a = self.qdct_axis;
                if a.w.abs() > 1e-12 || (a.modulus() - 1.0).abs() > 1e-12 {
                    return Err(Error::config(format!("qdct_axis {a} is not a unit pure quaternion")));
                }
            }
            Method::IrqlnmQqr => {
                if !(self.varsigma > 1.0 && self.varsigma.is_finite()) {
                    return Err(Error::config(format!("varsigma must exceed 1, got {}", self.varsigma)));
                }
                if self.v <= 1 || self.v >= self.rank {
                    return Err(Error::config(format!(
                        "v must satisfy 1 < v < rank, got v = {} with rank {}",
                        self.v, self.rank
                    )));
                }
            }
            Method::QlnmQqr => {}
        }
        Ok(())
    }
}

/// Missing ratios with tabulated rank presets.
pub const PRESET_MISSING_RATIOS: [f64; 4] = [0.85, 0.75, 0.65, 0.5];

/// Ranks tuned on 256×256 color images, indexed like [`PRESET_MISSING_RATIOS`].
pub fn preset_ranks_256(method: Method) -> [usize; 4] {
    match method {
        Method::QlnmQqr => [65, 90, 105, 125],
        Method::IrqlnmQqr => [115, 125, 155, 170],
        Method::QlnmQqrSr => [60, 85, 100, 120],
    }
}

/// Preset rank for a tabulated missing ratio, scaled linearly from the
/// 256×256 table by `min(rows, cols)/256` and clamped to `1..=min(rows, cols)`.
///
/// Returns `None` for missing ratios outside the table.
pub fn preset_rank(method: Method, missing_ratio: f64, rows: usize, cols: usize) -> Option<usize> {
    let idx = PRESET_MISSING_RATIOS
        .iter()
        .position(|&mr| (mr - missing_ratio).abs() < 1e-9)?;
    let base = preset_ranks_256(method)[idx] as f64;
    let bound = rows.min(cols);
    let scaled = (base * bound as f64 / 256.0).round() as usize;
    Some(scaled.clamp(1, bound))
}
