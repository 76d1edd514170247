//! Color images as pure quaternion matrices, masks, I/O and quality metrics.

mod metrics;
mod png;
mod qmsk;

use ndarray::Array2;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use metrics::{psnr, ssim, QualityReport};
pub use png::{load_mask_png, load_png, save_mask_png, save_png};
pub use qmsk::{decode_qmsk, encode_qmsk, load_qmsk, save_qmsk};

use crate::error::{Error, Result};
use crate::matrix::QuaternionMatrix;
use crate::solvers::{complete, Mask, SolverConfig, SolverReport};

/// RGB image with `f64` channels on the `[0, 255]` scale.
#[derive(Clone, Debug, PartialEq)]
pub struct ColorImage {
    channels: [Array2<f64>; 3],
}

impl ColorImage {
    pub fn new(red: Array2<f64>, green: Array2<f64>, blue: Array2<f64>) -> Result<Self> {
        if red.dim() != green.dim() || red.dim() != blue.dim() {
            return Err(Error::dims("color channels differ in shape"));
        }
        Ok(ColorImage {
            channels: [red, green, blue],
        })
    }

    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> [f64; 3]) -> Self {
        let mut channels = [(); 3].map(|_| Array2::zeros((height, width)));
        for r in 0..height {
            for c in 0..width {
                let px = f(r, c);
                for (ch, v) in channels.iter_mut().zip(px) {
                    ch[[r, c]] = v;
                }
            }
        }
        ColorImage { channels }
    }

    pub fn height(&self) -> usize {
        self.channels[0].nrows()
    }

    pub fn width(&self) -> usize {
        self.channels[0].ncols()
    }

    pub fn channel(&self, k: usize) -> &Array2<f64> {
        &self.channels[k]
    }

    pub fn channels(&self) -> &[Array2<f64>; 3] {
        &self.channels
    }

    pub fn pixel(&self, r: usize, c: usize) -> [f64; 3] {
        [0, 1, 2].map(|k| self.channels[k][[r, c]])
    }

    /// Rounds and clamps every channel to `[0, 255]`.
    pub fn quantized(&self) -> Self {
        ColorImage {
            channels: self.channels.clone().map(|ch| ch.mapv(|v| v.round().clamp(0.0, 255.0))),
        }
    }
}

/// `Q(m, n) = R·i + G·j + B·k`.
pub fn image_to_quaternion(img: &ColorImage) -> QuaternionMatrix {
    let [r, g, b] = img.channels.clone();
    let zero = Array2::zeros(r.dim());
    QuaternionMatrix::from_planes([zero, r, g, b]).expect("channels share a shape")
}

/// Inverse of [`image_to_quaternion`]: drops the real part, which solvers may
/// leave slightly nonzero, and clamps the channels to `[0, 255]`.
pub fn quaternion_to_image(q: &QuaternionMatrix) -> ColorImage {
    let clamp = |p: ndarray::ArrayView2<'_, f64>| p.mapv(|v| v.clamp(0.0, 255.0));
    ColorImage {
        channels: [clamp(q.plane(1)), clamp(q.plane(2)), clamp(q.plane(3))],
    }
}

/// Mask with exactly `round(missing_ratio·M·N)` missing pixels chosen
/// uniformly without replacement.
pub fn random_mask(rows: usize, cols: usize, missing_ratio: f64, seed: u64) -> Result<Mask> {
    if !(0.0..=1.0).contains(&missing_ratio) {
        return Err(Error::arg(format!("missing ratio must lie in [0, 1], got {missing_ratio}")));
    }
    let total = rows * cols;
    let missing = ((missing_ratio * total as f64).round() as usize).min(total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut observed = vec![true; total];
    for i in sample(&mut rng, total, missing) {
        observed[i] = false;
    }
    Mask::new(rows, cols, observed)
}

/// Factor applied to pixel values before they reach a solver. The default
/// hyperparameters set absolute thresholds (`4/μ`, `4β/μ`) that are
/// calibrated for unit-range data.
pub const SOLVER_SCALE: f64 = 1.0 / 255.0;

/// Completes the unobserved pixels of `img` with the solver selected by
/// `cfg`. The solver runs on `image_to_quaternion(img)·SOLVER_SCALE`; the
/// report's `x`, core `d` and QDCT coefficients are scaled back to `[0, 255]`
/// and observed pixels are copied from the input.
pub fn inpaint(img: &ColorImage, mask: &Mask, cfg: &SolverConfig) -> Result<(ColorImage, SolverReport)> {
    if mask.shape() != (img.height(), img.width()) {
        return Err(Error::dims("mask and image differ in shape"));
    }
    let q = image_to_quaternion(img);
    let observed = mask.project(&q)?;
    let mut report = complete(&observed.scale(SOLVER_SCALE), mask, cfg)?;
    report.x = mask.merge(&observed, &report.x.scale(1.0 / SOLVER_SCALE))?;
    report.factors.d = report.factors.d.scale(1.0 / SOLVER_SCALE);
    report.sparse_coefficients = report.sparse_coefficients.map(|c| c.scale(1.0 / SOLVER_SCALE));
    Ok((quaternion_to_image(&report.x), report))
}

/// Replaces every unobserved pixel of a color image by `fill`.
pub fn apply_mask(img: &ColorImage, mask: &Mask, fill: [f64; 3]) -> Result<ColorImage> {
    if mask.shape() != (img.height(), img.width()) {
        return Err(Error::dims("mask and image differ in shape"));
    }
    Ok(ColorImage::from_fn(img.height(), img.width(), |r, c| {
        if mask.is_observed(r, c) {
            img.pixel(r, c)
        } else {
            fill
        }
    }))
}
