//! Seeded synthetic test matrices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::QuaternionMatrix;
use crate::quaternion::Quaternion;
use crate::transforms::{iqdct_l, QdctContext};

/// Matrix with i.i.d. standard normal components.
pub fn gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> QuaternionMatrix {
    let mut sample = || -> f64 { StandardNormal.sample(rng) };
    QuaternionMatrix::from_fn(rows, cols, |_, _| Quaternion::new(sample(), sample(), sample(), sample()))
}

/// `A·B` with Gaussian factors `A` (`rows×rank`) and `B` (`rank×cols`), so the
/// result has rank `rank` almost surely.
pub fn low_rank(rows: usize, cols: usize, rank: usize, seed: u64) -> Result<QuaternionMatrix> {
    if rank == 0 || rank > rows.min(cols) {
        return Err(Error::arg(format!("rank {rank} outside 1..={}", rows.min(cols))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = gaussian(rows, rank, &mut rng);
    let b = gaussian(rank, cols, &mut rng);
    a.matmul(&b)
}

/// Matrix of rank at most `rank` whose left QDCT is supported on a
/// low-frequency block covering about `density` of the entries.
///
/// The coefficients are a rank-`rank` Gaussian product placed in the top-left
/// block and zero elsewhere; the inverse QDCT keeps the rank because it is a
/// product with invertible matrices.
pub fn qdct_sparse_low_rank(
    rows: usize,
    cols: usize,
    rank: usize,
    density: f64,
    seed: u64,
    ctx: &QdctContext,
) -> Result<QuaternionMatrix> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::arg(format!("density must lie in (0, 1], got {density}")));
    }
    let side = density.sqrt();
    let br = ((rows as f64 * side).round() as usize).clamp(1, rows);
    let bc = ((cols as f64 * side).round() as usize).clamp(1, cols);
    if rank == 0 || rank > br.min(bc) {
        return Err(Error::arg(format!(
            "rank {rank} does not fit a {br}x{bc} coefficient block"
        )));
    }
    let block = low_rank(br, bc, rank, seed)?;
    let coeffs = QuaternionMatrix::from_fn(rows, cols, |r, c| {
        if r < br && c < bc {
            block.get(r, c)
        } else {
            Quaternion::ZERO
        }
    });
    iqdct_l(ctx, &coeffs)
}
