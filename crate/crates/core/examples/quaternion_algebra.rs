//! Hamilton products, conjugation and the equivalent complex matrix.

use qmc::complex::{from_equivalent_complex, to_equivalent_complex};
use qmc::{Quaternion, QuaternionMatrix};

fn main() -> qmc::Result<()> {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    println!("ij = {}, ji = {}, ijk = {}", i * j, j * i, i * j * k);

    let q = Quaternion::new(1.0, 2.0, -1.0, 0.5);
    println!("q = {q}, |q| = {:.4}, q·q⁻¹ = {}", q.modulus(), q * q.inverse().unwrap());

    let a = QuaternionMatrix::from_fn(3, 2, |r, c| Quaternion::new(r as f64, c as f64, 1.0, -(r as f64)));
    let b = QuaternionMatrix::from_fn(2, 3, |r, c| Quaternion::new(1.0, (r + c) as f64, 0.0, 0.5));
    let ab = a.matmul(&b)?;

    // χ turns quaternion products into complex ones
    let chi = to_equivalent_complex(&a).matmul(&to_equivalent_complex(&b))?;
    let back = from_equivalent_complex(&chi)?;
    println!("‖χ(A)χ(B) mapped back − AB‖ = {:.2e}", (&back - &ab).frobenius_norm());
    println!(
        "‖χ(A)‖ / ‖A‖ = {:.6} (√2 = {:.6})",
        to_equivalent_complex(&a).frobenius_norm() / a.frobenius_norm(),
        2f64.sqrt()
    );
    Ok(())
}
