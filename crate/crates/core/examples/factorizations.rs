//! Householder QQR and the quaternion SVD of a random matrix.

use qmc::linalg::{nuclear_norm, qqr, qsvd, unitary_defect};
use qmc::synth::low_rank;

fn main() -> qmc::Result<()> {
    let a = low_rank(12, 9, 9, 3)?;

    let f = qqr(&a);
    println!("QQR: Q is {:?}, R is {:?}", f.q.shape(), f.r.shape());
    println!("  ‖QᴴQ − I‖ = {:.2e}", unitary_defect(&f.q));
    println!("  ‖QR − A‖  = {:.2e}", (&f.q.matmul(&f.r)? - &a).frobenius_norm());
    let diag: Vec<String> = f.r.diagonal().iter().map(|d| format!("{:.3}", d.w)).collect();
    println!("  diag(R)   = [{}]", diag.join(", "));

    let s = qsvd(&a);
    let sigma: Vec<String> = s.sigma.iter().map(|v| format!("{v:.3}")).collect();
    println!("QSVD: σ = [{}]", sigma.join(", "));
    println!("  ‖UΣVᴴ − A‖ = {:.2e}", (&s.reconstruct() - &a).frobenius_norm());
    println!("  ‖A‖_* = {:.4} ≤ ‖A‖_2,1 = {:.4}", nuclear_norm(&a), a.l21_norm());
    Ok(())
}
