//! Inpaints a color PNG with a random mask and writes the masked and
//! restored images.
//!
//! Usage: `inpaint_image [input.png] [missing_ratio] [out_dir]`

use std::path::PathBuf;

use qmc::imaging::{apply_mask, inpaint, load_png, random_mask, save_png, QualityReport};
use qmc::solvers::{preset_rank, Method, SolverConfig};

fn main() -> qmc::Result<()> {
    let mut args = std::env::args().skip(1);
    let input = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/astronaut_128.png"));
    let mr: f64 = args.next().map(|s| s.parse().expect("missing ratio")).unwrap_or(0.5);
    let out_dir = args.next().map(PathBuf::from).unwrap_or_else(std::env::temp_dir);

    let img = load_png(&input)?;
    let (h, w) = (img.height(), img.width());
    let mask = random_mask(h, w, mr, 2024)?;
    let masked = apply_mask(&img, &mask, [0.0; 3])?;
    save_png(&masked, out_dir.join("masked.png"))?;
    println!("{}: {w}x{h}, {:.0}% missing", input.display(), 100.0 * mask.missing_ratio());

    for method in Method::ALL {
        let rank = preset_rank(method, mr, h, w).unwrap_or(h.min(w) / 4);
        let (out, rep) = inpaint(&img, &mask, &SolverConfig::new(method, rank))?;
        let q = QualityReport::compute(&img, &out.quantized())?;
        let path = out_dir.join(format!("{method}.png"));
        save_png(&out, &path)?;
        println!(
            "{method:>12} r={rank:<3} {:>3} it  PSNR {:6.2} dB  SSIM {:.4}  -> {}",
            rep.iterations,
            q.psnr_db,
            q.ssim,
            path.display()
        );
    }
    Ok(())
}
