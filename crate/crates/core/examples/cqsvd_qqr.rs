//! Alternating QQR sweeps: the diagonal of D approaches the top singular values.

use qmc::linalg::{cqsvd_qqr_step, qsvd, TriFactor};
use qmc::synth::low_rank;

fn main() -> qmc::Result<()> {
    let x = low_rank(40, 30, 30, 11)?;
    let rank = 5;
    let sigma = qsvd(&x).sigma;
    println!("top σ     = {:?}", &sigma[..rank].iter().map(|v| (v * 1e3).round() / 1e3).collect::<Vec<_>>());

    let mut tf = TriFactor::eye(40, 30, rank)?;
    for sweep in 1..=60 {
        tf = cqsvd_qqr_step(&x, &tf)?;
        if sweep % 10 == 0 {
            let mut d = tf.diagonal_moduli();
            d.sort_by(|a, b| b.total_cmp(a));
            let err = d.iter().zip(&sigma).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            println!("sweep {sweep:>3}: max | |d_ss| − σ_s | = {err:.3e}");
        }
    }
    let resid = (&x - &tf.product()).frobenius_norm() / x.frobenius_norm();
    println!("relative residual of the rank-{rank} tri-factor: {resid:.4}");
    Ok(())
}
