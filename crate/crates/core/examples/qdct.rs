//! Left-handed quaternion DCT: energy compaction, Parseval and inversion.

use qmc::transforms::{fqdct_l, iqdct_l, QdctContext};
use qmc::{Quaternion, QuaternionMatrix};

fn main() -> qmc::Result<()> {
    let (m, n) = (16, 16);
    let smooth = QuaternionMatrix::from_fn(m, n, |r, c| {
        let (x, y) = (r as f64 / m as f64, c as f64 / n as f64);
        Quaternion::pure(0.6 + 0.3 * x, 0.4 + 0.2 * (3.0 * y).cos(), 0.5 * x * y)
    });
    let ctx = QdctContext::new(m, n);
    let coeffs = fqdct_l(&ctx, &smooth)?;

    let total = coeffs.frobenius_norm_sqr();
    let low = coeffs.row_range(0, 4).column_range(0, 4).frobenius_norm_sqr();
    println!("energy in the 4x4 low-frequency block: {:.4}%", 100.0 * low / total);
    println!("Parseval: ‖B‖ / ‖A‖ = {:.12}", coeffs.frobenius_norm() / smooth.frobenius_norm());
    let back = iqdct_l(&ctx, &coeffs)?;
    println!("round trip error: {:.2e}", back.max_abs_diff(&smooth));

    let red_axis = QdctContext::with_axis(Quaternion::I, m, n)?;
    println!("DC coefficient, gray axis: {}", coeffs.get(0, 0));
    println!("DC coefficient, i axis:    {}", fqdct_l(&red_axis, &smooth)?.get(0, 0));
    Ok(())
}
