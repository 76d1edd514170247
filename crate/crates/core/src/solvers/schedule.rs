use crate::error::{Error, Result};

/// Column weights of the reweighted solver: `ω` rises linearly from 1 after
/// the first `V` entries up to `ς`, and the core columns are scaled by
/// `â = 1/ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSchedule {
    pub omega: Vec<f64>,
    pub a_hat: Vec<f64>,
}

impl WeightSchedule {
    /// Schedule with explicit scaling factors, e.g. the degenerate all-ones
    /// schedule. Factors must lie in `(0, 1]` and be nonincreasing.
    pub fn from_scaling(a_hat: Vec<f64>) -> Result<Self> {
        if a_hat.iter().any(|&a| !(a > 0.0 && a <= 1.0)) {
            return Err(Error::arg("scaling factors must lie in (0, 1]"));
        }
        if a_hat.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::arg("scaling factors must be nonincreasing"));
        }
        let omega = a_hat.iter().map(|a| 1.0 / a).collect();
        Ok(WeightSchedule { omega, a_hat })
    }

    pub fn len(&self) -> usize {
        self.a_hat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_hat.is_empty()
    }
}

/// `ω_l = 1` for `l ≤ V`, then `ω_l = ω_{l−1} + (ς − 1)/(r − V)`; `â_l = 1/ω_l`.
pub fn make_weight_schedule(rank: usize, varsigma: f64, v: usize) -> Result<WeightSchedule> {
    if !(varsigma > 1.0 && varsigma.is_finite()) {
        return Err(Error::arg(format!("varsigma must exceed 1, got {varsigma}")));
    }
    if v <= 1 || v >= rank {
        return Err(Error::arg(format!("need 1 < v < rank, got v = {v}, rank = {rank}")));
    }
    let step = (varsigma - 1.0) / (rank - v) as f64;
    let mut omega = Vec::with_capacity(rank);
    for l in 0..rank {
        let w = if l < v { 1.0 } else { omega[l - 1] + step };
        omega.push(w);
    }
    let a_hat = omega.iter().map(|w| 1.0 / w).collect();
    Ok(WeightSchedule { omega, a_hat })
}
