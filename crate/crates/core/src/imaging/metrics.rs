use ndarray::Array2;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::imaging::ColorImage;

const PEAK: f64 = 255.0;
const WINDOW: usize = 11;
const SIGMA: f64 = 1.5;
const K1: f64 = 0.01;
const K2: f64 = 0.03;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    /// `+∞` for identical images, serialized as the string `"inf"`.
    #[serde(serialize_with = "ser_psnr", deserialize_with = "de_psnr")]
    pub psnr_db: f64,
    pub ssim: f64,
}

impl QualityReport {
    pub fn compute(reference: &ColorImage, test: &ColorImage) -> Result<Self> {
        Ok(QualityReport {
            psnr_db: psnr(reference, test)?,
            ssim: ssim(reference, test)?,
        })
    }
}

fn ser_psnr<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_infinite() && *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*v)
    }
}

fn de_psnr<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }
    match Repr::deserialize(d)? {
        Repr::Num(v) => Ok(v),
        Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
        Repr::Text(t) => Err(serde::de::Error::custom(format!("invalid psnr {t:?}"))),
    }
}

fn check_dims(a: &ColorImage, b: &ColorImage) -> Result<()> {
    if (a.height(), a.width()) != (b.height(), b.width()) {
        return Err(Error::dims(format!(
            "images are {}x{} and {}x{}",
            a.height(),
            a.width(),
            b.height(),
            b.width()
        )));
    }
    Ok(())
}

/// `10·log10(255² / MSE)` with the MSE taken over all pixels and channels;
/// identical images give `+∞`.
pub fn psnr(reference: &ColorImage, test: &ColorImage) -> Result<f64> {
    check_dims(reference, test)?;
    let mut sum = 0.0;
    let mut count = 0usize;
    for (a, b) in reference.channels().iter().zip(test.channels()) {
        sum += a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
        count += a.len();
    }
    if sum == 0.0 {
        return Ok(f64::INFINITY);
    }
    let mse = sum / count as f64;
    Ok(10.0 * (PEAK * PEAK / mse).log10())
}

fn gaussian_window() -> [f64; WINDOW] {
    let half = (WINDOW / 2) as f64;
    let mut w = [0.0; WINDOW];
    for (i, v) in w.iter_mut().enumerate() {
        let x = i as f64 - half;
        *v = (-x * x / (2.0 * SIGMA * SIGMA)).exp();
    }
    let total: f64 = w.iter().sum();
    w.map(|v| v / total)
}

/// Separable valid-mode filtering with the normalized Gaussian window.
fn filter_valid(x: &Array2<f64>, w: &[f64; WINDOW]) -> Array2<f64> {
    let (h, wd) = x.dim();
    let (oh, ow) = (h + 1 - WINDOW, wd + 1 - WINDOW);
    let rows = Array2::from_shape_fn((h, ow), |(r, c)| (0..WINDOW).map(|k| w[k] * x[[r, c + k]]).sum::<f64>());
    Array2::from_shape_fn((oh, ow), |(r, c)| (0..WINDOW).map(|k| w[k] * rows[[r + k, c]]).sum::<f64>())
}

fn ssim_channel(a: &Array2<f64>, b: &Array2<f64>, w: &[f64; WINDOW]) -> f64 {
    let c1 = (K1 * PEAK).powi(2);
    let c2 = (K2 * PEAK).powi(2);
    let mu_a = filter_valid(a, w);
    let mu_b = filter_valid(b, w);
    let aa = filter_valid(&(a * a), w);
    let bb = filter_valid(&(b * b), w);
    let ab = filter_valid(&(a * b), w);
    let mut total = 0.0;
    for i in 0..mu_a.len() {
        let (ma, mb) = (mu_a.as_slice().unwrap()[i], mu_b.as_slice().unwrap()[i]);
        let va = aa.as_slice().unwrap()[i] - ma * ma;
        let vb = bb.as_slice().unwrap()[i] - mb * mb;
        let cov = ab.as_slice().unwrap()[i] - ma * mb;
        total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
    total / mu_a.len() as f64
}

/// Mean SSIM over an 11×11 Gaussian window (σ = 1.5) restricted to positions
/// where the window fits, with `K₁ = 0.01`, `K₂ = 0.03`, `L = 255`, averaged
/// over the three channels.
pub fn ssim(reference: &ColorImage, test: &ColorImage) -> Result<f64> {
    check_dims(reference, test)?;
    if reference.height() < WINDOW || reference.width() < WINDOW {
        return Err(Error::arg(format!(
            "SSIM needs images of at least {WINDOW}x{WINDOW}, got {}x{}",
            reference.height(),
            reference.width()
        )));
    }
    let w = gaussian_window();
    let sum: f64 = reference
        .channels()
        .iter()
        .zip(test.channels())
        .map(|(a, b)| ssim_channel(a, b, &w))
        .sum();
    Ok(sum / 3.0)
}
