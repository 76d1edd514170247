//! Equivalent complex matrices.
//!
//! Writing `Q = Q_a + Q_b j` with `Q_a = Q₀ + Q₁i` and `Q_b = Q₂ + Q₃i`, the
//! map
//!
//! ```text
//! χ(Q) = [  Q_a    Q_b  ]
//!        [ -Q_b*   Q_a* ]
//! ```
//!
//! is an injective real-algebra homomorphism `H^{M×N} → C^{2M×2N}`:
//! `χ(AB) = χ(A)χ(B)` and `χ(Qᴴ) = χ(Q)ᴴ`.

use ndarray::{s, Array2, Zip};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::QuaternionMatrix;

/// Relative tolerance on the block symmetry accepted by [`from_equivalent_complex`].
pub const BLOCK_SYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    entries: Array2<Complex64>,
}

impl ComplexMatrix {
    pub fn new(entries: Array2<Complex64>) -> Self {
        ComplexMatrix { entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            entries: Array2::zeros((rows, cols)),
        }
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.entries
    }

    pub fn into_entries(self) -> Array2<Complex64> {
        self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(ComplexMatrix {
            entries: self.entries.dot(&rhs.entries),
        })
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            entries: &self.entries - &rhs.entries,
        }
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows(), self.cols(), |r, c| self.entries[[r, c]])
    }
}

fn complex_plane(re: &Array2<f64>, im: &Array2<f64>) -> Array2<Complex64> {
    let mut out = Array2::zeros(re.dim());
    Zip::from(&mut out)
        .and(re)
        .and(im)
        .for_each(|o, &a, &b| *o = Complex64::new(a, b));
    out
}

/// The Cayley–Dickson parts `(Q_a, Q_b)` of `Q = Q_a + Q_b j`.
pub fn cayley_dickson_split(q: &QuaternionMatrix) -> (Array2<Complex64>, Array2<Complex64>) {
    let p = q.planes();
    (complex_plane(&p[0], &p[1]), complex_plane(&p[2], &p[3]))
}

/// Inverse of [`cayley_dickson_split`].
pub fn cayley_dickson_join(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Result<QuaternionMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::dims("Cayley-Dickson parts differ in shape"));
    }
    QuaternionMatrix::from_planes([a.mapv(|z| z.re), a.mapv(|z| z.im), b.mapv(|z| z.re), b.mapv(|z| z.im)])
}

/// `χ(Q)`, the `2M×2N` equivalent complex matrix.
pub fn to_equivalent_complex(q: &QuaternionMatrix) -> ComplexMatrix {
    let (m, n) = q.shape();
    let (a, b) = cayley_dickson_split(q);
    let mut out = Array2::zeros((2 * m, 2 * n));
    out.slice_mut(s![..m, ..n]).assign(&a);
    out.slice_mut(s![..m, n..]).assign(&b);
    out.slice_mut(s![m.., ..n]).assign(&b.mapv(|z| -z.conj()));
    out.slice_mut(s![m.., n..]).assign(&a.mapv(|z| z.conj()));
    ComplexMatrix { entries: out }
}

/// Recovers `Q` from `χ(Q)`, rejecting matrices that violate the block symmetry
/// `[[A, B], [−B*, A*]]` by more than [`BLOCK_SYMMETRY_TOL`] relative to the
/// Frobenius norm.
pub fn from_equivalent_complex(c: &ComplexMatrix) -> Result<QuaternionMatrix> {
    let (rows, cols) = (c.rows(), c.cols());
    if rows % 2 != 0 || cols % 2 != 0 {
        return Err(Error::NotEquivalentComplex(format!(
            "odd dimensions {rows}x{cols}"
        )));
    }
    let (m, n) = (rows / 2, cols / 2);
    let e = &c.entries;
    let a = e.slice(s![..m, ..n]);
    let b = e.slice(s![..m, n..]);
    let mut defect = 0.0;
    Zip::from(&b)
        .and(e.slice(s![m.., ..n]))
        .for_each(|&bv, &lower| defect += (lower + bv.conj()).norm_sqr());
    Zip::from(&a)
        .and(e.slice(s![m.., n..]))
        .for_each(|&av, &lower| defect += (lower - av.conj()).norm_sqr());
    let scale = c.frobenius_norm();
    if defect.sqrt() > BLOCK_SYMMETRY_TOL * scale.max(f64::MIN_POSITIVE) && defect > 0.0 {
        return Err(Error::NotEquivalentComplex(format!(
            "block symmetry defect {:.3e} exceeds tolerance",
            defect.sqrt() / scale.max(f64::MIN_POSITIVE)
        )));
    }
    cayley_dickson_join(&a.to_owned(), &b.to_owned())
}
