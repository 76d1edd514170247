#![allow(dead_code)]

use std::path::PathBuf;

use qmc::{Quaternion, QuaternionMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Entries with every component uniform in `[-1, 1)`.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> QuaternionMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix_with(rows, cols, &mut rng)
}

pub fn random_matrix_with(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(rows, cols, |_, _| random_quaternion(rng))
}

pub fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// `‖a − b‖_F / max(‖b‖_F, tiny)`.
pub fn rel_diff(a: &QuaternionMatrix, b: &QuaternionMatrix) -> f64 {
    (a - b).frobenius_norm() / b.frobenius_norm().max(f64::MIN_POSITIVE)
}

pub fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

/// Strict upper-triangularity: every entry below the diagonal is exactly zero.
pub fn is_upper_triangular(r: &QuaternionMatrix) -> bool {
    (0..r.rows()).all(|i| (0..r.cols().min(i)).all(|j| r.get(i, j).is_zero()))
}
