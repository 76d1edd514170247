use std::path::Path;

use image::{DynamicImage, GrayImage, ImageReader, Rgb, RgbImage};

use crate::error::{Error, Result};
use crate::imaging::ColorImage;
use crate::solvers::Mask;

/// Reads an 8- or 16-bit RGB or grayscale image. Images with an alpha channel
/// are rejected rather than silently flattened.
pub fn load_png(path: impl AsRef<Path>) -> Result<ColorImage> {
    let img = ImageReader::open(path.as_ref())?.with_guessed_format()?.decode()?;
    if img.color().has_alpha() {
        return Err(Error::UnsupportedImage(format!(
            "{} has an alpha channel",
            path.as_ref().display()
        )));
    }
    let rgb = match img {
        DynamicImage::ImageRgb8(rgb) => rgb,
        other => other.to_rgb8(),
    };
    let (w, h) = rgb.dimensions();
    Ok(ColorImage::from_fn(h as usize, w as usize, |r, c| {
        let Rgb(px) = *rgb.get_pixel(c as u32, r as u32);
        px.map(f64::from)
    }))
}

/// Writes an 8-bit RGB PNG, rounding and clamping every channel.
pub fn save_png(img: &ColorImage, path: impl AsRef<Path>) -> Result<()> {
    let q = img.quantized();
    let out = RgbImage::from_fn(img.width() as u32, img.height() as u32, |c, r| {
        Rgb(q.pixel(r as usize, c as usize).map(|v| v as u8))
    });
    out.save(path)?;
    Ok(())
}

/// Grayscale mask image: 255 = observed, 0 = missing.
pub fn save_mask_png(mask: &Mask, path: impl AsRef<Path>) -> Result<()> {
    let out = GrayImage::from_fn(mask.cols() as u32, mask.rows() as u32, |c, r| {
        image::Luma([if mask.is_observed(r as usize, c as usize) { 255 } else { 0 }])
    });
    out.save(path)?;
    Ok(())
}

/// Reads a mask image; pixels with luma of at least 128 are observed.
pub fn load_mask_png(path: impl AsRef<Path>) -> Result<Mask> {
    let img = ImageReader::open(path)?.with_guessed_format()?.decode()?.to_luma8();
    let (w, h) = img.dimensions();
    Ok(Mask::from_fn(h as usize, w as usize, |r, c| {
        img.get_pixel(c as u32, r as u32)[0] >= 128
    }))
}
