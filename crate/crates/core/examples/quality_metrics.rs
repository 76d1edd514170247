//! PSNR and SSIM on a synthetic image under a few distortions.

use qmc::imaging::{psnr, ssim, ColorImage};

fn main() -> qmc::Result<()> {
    let reference = ColorImage::from_fn(64, 64, |r, c| {
        let v = 128.0 + 70.0 * ((r as f64 * 0.3).sin() * (c as f64 * 0.2).cos());
        [v.round(), (255.0 - v).round(), (0.5 * v + 40.0).round()]
    });
    let distortions: [(&str, Box<dyn Fn(usize, usize, f64) -> f64>); 4] = [
        ("identical", Box::new(|_, _, v| v)),
        ("offset +16", Box::new(|_, _, v| (v + 16.0).min(255.0))),
        ("checker noise ±8", Box::new(|r, c, v| v + if (r + c) % 2 == 0 { 8.0 } else { -8.0 })),
        ("negative", Box::new(|_, _, v| 255.0 - v)),
    ];
    for (name, f) in distortions {
        let test = ColorImage::from_fn(64, 64, |r, c| reference.pixel(r, c).map(|v| f(r, c, v).clamp(0.0, 255.0)));
        let p = psnr(&reference, &test)?;
        let p = if p.is_infinite() { "inf".to_string() } else { format!("{p:.3}") };
        println!("{name:>18}: PSNR {p:>7} dB  SSIM {:.4}", ssim(&reference, &test)?);
    }
    Ok(())
}
