use crate::error::{Error, Result};
use crate::matrix::QuaternionMatrix;

/// Observed-entry set `Ω` of an `M×N` matrix. Whole quaternion entries are
/// either observed or missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    rows: usize,
    cols: usize,
    /// Row-major, `true` = observed.
    observed: Vec<bool>,
}

impl Mask {
    pub fn new(rows: usize, cols: usize, observed: Vec<bool>) -> Result<Self> {
        if observed.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} mask flags for a {rows}x{cols} matrix",
                observed.len()
            )));
        }
        Ok(Mask { rows, cols, observed })
    }

    pub fn all_observed(rows: usize, cols: usize) -> Self {
        Mask {
            rows,
            cols,
            observed: vec![true; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let observed = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Mask { rows, cols, observed }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_observed(&self, r: usize, c: usize) -> bool {
        self.observed[r * self.cols + c]
    }

    /// Row-major flags.
    pub fn as_slice(&self) -> &[bool] {
        &self.observed
    }

    pub fn observed_count(&self) -> usize {
        self.observed.iter().filter(|&&o| o).count()
    }

    pub fn missing_count(&self) -> usize {
        self.observed.len() - self.observed_count()
    }

    pub fn missing_ratio(&self) -> f64 {
        if self.observed.is_empty() {
            0.0
        } else {
            self.missing_count() as f64 / self.observed.len() as f64
        }
    }

    fn check(&self, x: &QuaternionMatrix) -> Result<()> {
        if x.shape() != self.shape() {
            return Err(Error::dims(format!(
                "mask is {}x{}, matrix is {}x{}",
                self.rows,
                self.cols,
                x.rows(),
                x.cols()
            )));
        }
        Ok(())
    }

    fn keep_where(&self, x: &QuaternionMatrix, keep: bool) -> Result<QuaternionMatrix> {
        self.check(x)?;
        let mut out = x.clone();
        for p in out.planes_mut() {
            let data = p.as_slice_mut().expect("standard layout");
            for (v, &o) in data.iter_mut().zip(&self.observed) {
                if o != keep {
                    *v = 0.0;
                }
            }
        }
        Ok(out)
    }

    /// `P_Ω(X)`: zeroes every unobserved entry.
    pub fn project(&self, x: &QuaternionMatrix) -> Result<QuaternionMatrix> {
        self.keep_where(x, true)
    }

    /// `P_Ωᶜ(X)`: zeroes every observed entry.
    pub fn project_complement(&self, x: &QuaternionMatrix) -> Result<QuaternionMatrix> {
        self.keep_where(x, false)
    }

    /// `P_Ω(observed) + P_Ωᶜ(fill)`, copying entries rather than adding so the
    /// observed part is reproduced bit for bit.
    pub fn merge(&self, observed: &QuaternionMatrix, fill: &QuaternionMatrix) -> Result<QuaternionMatrix> {
        self.check(observed)?;
        self.check(fill)?;
        let mut out = fill.clone();
        for (p, src) in out.planes_mut().iter_mut().zip(observed.planes()) {
            let data = p.as_slice_mut().expect("standard layout");
            let src = src.as_slice().expect("standard layout");
            for ((v, &s), &o) in data.iter_mut().zip(src).zip(&self.observed) {
                if o {
                    *v = s;
                }
            }
        }
        Ok(out)
    }
}
