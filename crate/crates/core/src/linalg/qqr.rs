//! Thin quaternion QR by Householder reflections.
//!
//! For a column `x` with leading entry `x₁ = |x₁|·s`, the reflector
//! `H = I − 2vvᴴ/(vᴴv)` with `v = x + s‖x‖e₁` maps `x` to `−s‖x‖e₁`.
//! `vᴴx` is real, so `H` acts exactly as in the real case. The unit phase
//! `−s` of every pivot is pushed into the matching column of `Q`, which leaves
//! `R` with a real nonnegative diagonal.

use crate::matrix::QuaternionMatrix;
use crate::quaternion::Quaternion;

/// `A = q·r` with `q` (`M×k`) having orthonormal columns and `r` (`k×N`)
/// upper triangular, `k = min(M, N)`.
#[derive(Clone, Debug)]
pub struct QqrResult {
    pub q: QuaternionMatrix,
    pub r: QuaternionMatrix,
}

/// A unit Householder vector acting on rows `start..`.
struct Reflector {
    start: usize,
    v: Vec<Quaternion>,
}

impl Reflector {
    /// `y ← (I − 2vvᴴ) y` on `y[start..]`.
    fn apply(&self, y: &mut [Quaternion]) {
        let tail = &mut y[self.start..];
        let mut dot = Quaternion::ZERO;
        for (vi, yi) in self.v.iter().zip(tail.iter()) {
            dot += vi.conj() * *yi;
        }
        if dot.is_zero() {
            return;
        }
        let dot2 = dot * 2.0;
        for (vi, yi) in self.v.iter().zip(tail.iter_mut()) {
            *yi -= *vi * dot2;
        }
    }
}

fn column_norm(x: &[Quaternion]) -> f64 {
    // scaled accumulation keeps tiny and huge columns finite
    let scale = x.iter().map(|q| q.modulus()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let s: f64 = x.iter().map(|q| (*q / scale).norm_sqr()).sum();
    scale * s.sqrt()
}

/// Builds the reflector zeroing `x[1..]`, or `None` when `x` is already
/// zero below its first entry.
fn make_reflector(start: usize, x: &[Quaternion]) -> Option<Reflector> {
    let norm = column_norm(x);
    if norm == 0.0 {
        return None;
    }
    if x[1..].iter().all(|q| q.is_zero()) {
        return None;
    }
    let phase = x[0].unit().unwrap_or(Quaternion::ONE);
    let mut v = x.to_vec();
    v[0] += phase * norm;
    let vn = column_norm(&v);
    for q in &mut v {
        *q = *q / vn;
    }
    Some(Reflector { start, v })
}

/// Thin Householder QR of `a`.
///
/// Rank-deficient inputs produce zero diagonal entries in `r`; no pivoting is
/// applied.
pub fn qqr(a: &QuaternionMatrix) -> QqrResult {
    let (m, n) = a.shape();
    let k = m.min(n);
    let mut work = a.to_col_major();
    let mut reflectors: Vec<Option<Reflector>> = Vec::with_capacity(k);

    for j in 0..k {
        let col = &work[j * m..(j + 1) * m];
        let refl = make_reflector(j, &col[j..]);
        if let Some(h) = &refl {
            for c in j..n {
                h.apply(&mut work[c * m..(c + 1) * m]);
            }
            // entries below the pivot are zero by construction
            for q in &mut work[j * m + j + 1..(j + 1) * m] {
                *q = Quaternion::ZERO;
            }
        }
        reflectors.push(refl);
    }

    // Q = H₀H₁…H_{k−1} applied to the first k columns of the identity.
    let mut qwork = vec![Quaternion::ZERO; m * k];
    for c in 0..k {
        qwork[c * m + c] = Quaternion::ONE;
    }
    for refl in reflectors.iter().rev().flatten() {
        for c in 0..k {
            refl.apply(&mut qwork[c * m..(c + 1) * m]);
        }
    }

    let mut r = vec![Quaternion::ZERO; k * n];
    for c in 0..n {
        for row in 0..k.min(c + 1) {
            r[c * k + row] = work[c * m + row];
        }
    }

    // Absorb the unit phase of each pivot: row j of R is left-multiplied by
    // conj(d), column j of Q right-multiplied by d.
    for j in 0..k {
        let pivot = r[j * k + j];
        let Some(d) = pivot.unit() else { continue };
        let dc = d.conj();
        for c in j..n {
            r[c * k + j] = dc * r[c * k + j];
        }
        r[j * k + j] = Quaternion::real(pivot.modulus());
        for q in &mut qwork[j * m..(j + 1) * m] {
            *q = *q * d;
        }
    }

    QqrResult {
        q: QuaternionMatrix::from_col_major(m, k, &qwork),
        r: QuaternionMatrix::from_col_major(k, n, &r),
    }
}
