//! Dense quaternion matrices stored as four real planes `Q₀ + Q₁i + Q₂j + Q₃k`.
//!
//! Every plane is a row-major `M×N` [`Array2<f64>`]. Products are evaluated as
//! sixteen real GEMMs arranged by the Hamilton table, so a quaternion matmul
//! costs the same as four complex ones.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use ndarray::linalg::general_mat_mul;
use ndarray::{s, Array2, ArrayView2, Zip};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// (lhs plane, rhs plane, sign) contributions to each output plane.
const HAMILTON: [[(usize, usize, f64); 4]; 4] = [
    [(0, 0, 1.0), (1, 1, -1.0), (2, 2, -1.0), (3, 3, -1.0)],
    [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, -1.0)],
    [(0, 2, 1.0), (1, 3, -1.0), (2, 0, 1.0), (3, 1, 1.0)],
    [(0, 3, 1.0), (1, 2, 1.0), (2, 1, -1.0), (3, 0, 1.0)],
];

/// Below this many multiply-adds per plane the four output planes are
/// computed on the calling thread.
const PARALLEL_WORK: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionMatrix {
    planes: [Array2<f64>; 4],
}

impl QuaternionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let z = Array2::zeros((rows, cols));
        QuaternionMatrix {
            planes: [z.clone(), z.clone(), z.clone(), z],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::eye(n, n)
    }

    /// `M×N` matrix with ones on the main diagonal (MATLAB `eye(M, N)`).
    pub fn eye(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for d in 0..rows.min(cols) {
            m.planes[0][[d, d]] = 1.0;
        }
        m
    }

    pub fn from_planes(planes: [Array2<f64>; 4]) -> Result<Self> {
        let shape = planes[0].dim();
        if planes.iter().any(|p| p.dim() != shape) {
            return Err(Error::dims("quaternion planes must share one shape"));
        }
        let planes = planes.map(|p| p.as_standard_layout().into_owned());
        Ok(QuaternionMatrix { planes })
    }

    pub fn from_real(real: Array2<f64>) -> Self {
        let (r, c) = real.dim();
        let z = Array2::zeros((r, c));
        QuaternionMatrix {
            planes: [real.as_standard_layout().into_owned(), z.clone(), z.clone(), z],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, entries: &[Quaternion]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self::from_fn(rows, cols, |r, c| entries[r * cols + c]))
    }

    /// Builds from column-major entries.
    pub(crate) fn from_col_major(rows: usize, cols: usize, entries: &[Quaternion]) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |r, c| entries[c * rows + r])
    }

    pub(crate) fn to_col_major(&self) -> Vec<Quaternion> {
        let (rows, cols) = self.shape();
        let mut out = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                out.push(self.get(r, c));
            }
        }
        out
    }

    /// Row-major entries.
    pub fn to_vec(&self) -> Vec<Quaternion> {
        let (rows, cols) = self.shape();
        let mut out = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                out.push(self.get(r, c));
            }
        }
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.planes[0].nrows()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.planes[0].ncols()
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        self.planes[0].dim()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        Quaternion::new(
            self.planes[0][[r, c]],
            self.planes[1][[r, c]],
            self.planes[2][[r, c]],
            self.planes[3][[r, c]],
        )
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        self.planes[0][[r, c]] = q.w;
        self.planes[1][[r, c]] = q.x;
        self.planes[2][[r, c]] = q.y;
        self.planes[3][[r, c]] = q.z;
    }

    /// Plane `k` (0 = real part, 1..=3 = i, j, k parts).
    pub fn plane(&self, k: usize) -> ArrayView2<'_, f64> {
        self.planes[k].view()
    }

    pub fn planes(&self) -> &[Array2<f64>; 4] {
        &self.planes
    }

    pub fn planes_mut(&mut self) -> &mut [Array2<f64>; 4] {
        &mut self.planes
    }

    pub fn into_planes(self) -> [Array2<f64>; 4] {
        self.planes
    }

    /// True when the real plane is identically zero.
    pub fn is_pure(&self) -> bool {
        self.planes[0].iter().all(|&v| v == 0.0)
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.planes.iter().flat_map(|p| p.iter()).map(|v| v * v).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sqr().sqrt()
    }

    /// Modulus of every entry, as a real matrix.
    pub fn moduli(&self) -> Array2<f64> {
        let mut out = Array2::zeros(self.shape());
        Zip::from(&mut out)
            .and(&self.planes[0])
            .and(&self.planes[1])
            .and(&self.planes[2])
            .and(&self.planes[3])
            .for_each(|o, &a, &b, &c, &d| *o = (a * a + b * b + c * c + d * d).sqrt());
        out
    }

    /// `Σ |q_mn|`.
    pub fn l1_norm(&self) -> f64 {
        self.moduli().sum()
    }

    /// Euclidean norm of every column, `sqrt(Σ_m |q_mn|²)`.
    pub fn column_norms(&self) -> Vec<f64> {
        let (rows, cols) = self.shape();
        let mut acc = vec![0.0; cols];
        for p in &self.planes {
            for r in 0..rows {
                for (c, a) in acc.iter_mut().enumerate() {
                    let v = p[[r, c]];
                    *a += v * v;
                }
            }
        }
        acc.into_iter().map(f64::sqrt).collect()
    }

    /// Quaternion L2,1-norm: the sum of the column norms.
    pub fn l21_norm(&self) -> f64 {
        self.column_norms().into_iter().sum()
    }

    pub fn conj_transpose(&self) -> Self {
        let planes = std::array::from_fn(|k| {
            let t = self.planes[k].t();
            if k == 0 {
                t.as_standard_layout().into_owned()
            } else {
                t.mapv(|v| -v)
            }
        });
        QuaternionMatrix { planes }
    }

    /// Entrywise conjugate without transposing.
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for p in &mut out.planes[1..] {
            p.mapv_inplace(|v| -v);
        }
        out
    }

    /// `self · rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        product(self, false, rhs, false)
    }

    /// `selfᴴ · rhs` without materializing the adjoint.
    pub fn adjoint_matmul(&self, rhs: &Self) -> Result<Self> {
        product(self, true, rhs, false)
    }

    /// `self · rhsᴴ` without materializing the adjoint.
    pub fn matmul_adjoint(&self, rhs: &Self) -> Result<Self> {
        product(self, false, rhs, true)
    }

    /// Multiplies every entry by the real scalar `s`.
    pub fn scale(&self, s: f64) -> Self {
        QuaternionMatrix {
            planes: self.planes.clone().map(|p| p * s),
        }
    }

    /// Left-multiplies every entry by the quaternion `q` (`q·X` entrywise).
    pub fn left_scalar_mul(&self, q: Quaternion) -> Self {
        let [a, b, c, d] = &self.planes;
        let combine = |cw: f64, cx: f64, cy: f64, cz: f64| -> Array2<f64> {
            let mut out = Array2::zeros(a.dim());
            Zip::from(&mut out)
                .and(a)
                .and(b)
                .and(c)
                .and(d)
                .for_each(|o, &p0, &p1, &p2, &p3| *o = cw * p0 + cx * p1 + cy * p2 + cz * p3);
            out
        };
        // rows of the left-multiplication matrix of q
        let planes = [
            combine(q.w, -q.x, -q.y, -q.z),
            combine(q.x, q.w, -q.z, q.y),
            combine(q.y, q.z, q.w, -q.x),
            combine(q.z, -q.y, q.x, q.w),
        ];
        QuaternionMatrix { planes }
    }

    /// Scales column `c` by the real factor `factors[c]`.
    pub fn scale_columns(&self, factors: &[f64]) -> Result<Self> {
        if factors.len() != self.cols() {
            return Err(Error::dims(format!(
                "{} column factors for {} columns",
                factors.len(),
                self.cols()
            )));
        }
        let mut out = self.clone();
        for p in &mut out.planes {
            for mut row in p.rows_mut() {
                for (v, f) in row.iter_mut().zip(factors) {
                    *v *= f;
                }
            }
        }
        Ok(out)
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> Self {
        QuaternionMatrix {
            planes: std::array::from_fn(|k| self.planes[k].slice(s![.., start..end]).to_owned()),
        }
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        QuaternionMatrix {
            planes: std::array::from_fn(|k| self.planes[k].slice(s![start..end, ..]).to_owned()),
        }
    }

    pub fn column(&self, c: usize) -> Vec<Quaternion> {
        (0..self.rows()).map(|r| self.get(r, c)).collect()
    }

    /// Diagonal entries `q_ss` for `s < min(M, N)`.
    pub fn diagonal(&self) -> Vec<Quaternion> {
        (0..self.rows().min(self.cols())).map(|d| self.get(d, d)).collect()
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        (self - other).moduli().iter().fold(0.0, |m, &v| m.max(v))
    }

    pub fn map(&self, mut f: impl FnMut(Quaternion) -> Quaternion) -> Self {
        let (rows, cols) = self.shape();
        Self::from_fn(rows, cols, |r, c| f(self.get(r, c)))
    }

    pub fn is_finite(&self) -> bool {
        self.planes.iter().all(|p| p.iter().all(|v| v.is_finite()))
    }
}

/// Plane `k` of `m` or of `mᴴ`, with the sign conjugation puts on it.
fn op_plane(m: &QuaternionMatrix, adj: bool, k: usize) -> (ArrayView2<'_, f64>, f64) {
    if adj {
        (m.planes[k].t(), if k == 0 { 1.0 } else { -1.0 })
    } else {
        (m.planes[k].view(), 1.0)
    }
}

/// `op(a) · op(b)` where `op` is either identity or the conjugate transpose.
fn product(a: &QuaternionMatrix, a_adj: bool, b: &QuaternionMatrix, b_adj: bool) -> Result<QuaternionMatrix> {
    let (ar, ak) = if a_adj { (a.cols(), a.rows()) } else { a.shape() };
    let (bk, bc) = if b_adj { (b.cols(), b.rows()) } else { b.shape() };
    if ak != bk {
        return Err(Error::dims(format!("cannot multiply {ar}x{ak} by {bk}x{bc}")));
    }

    let plane = |o: usize| -> Array2<f64> {
        let mut c = Array2::zeros((ar, bc));
        for &(ia, ib, sign) in &HAMILTON[o] {
            let (va, sa) = op_plane(a, a_adj, ia);
            let (vb, sb) = op_plane(b, b_adj, ib);
            general_mat_mul(sign * sa * sb, &va, &vb, 1.0, &mut c);
        }
        c
    };

    let planes: Vec<Array2<f64>> = if ar * ak * bc >= PARALLEL_WORK && rayon::current_num_threads() > 1 {
        (0..4).into_par_iter().map(plane).collect()
    } else {
        (0..4).map(plane).collect()
    };
    let planes: [Array2<f64>; 4] = planes.try_into().expect("four planes");
    Ok(QuaternionMatrix { planes })
}

impl Add for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn add(self, rhs: &QuaternionMatrix) -> QuaternionMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        QuaternionMatrix {
            planes: std::array::from_fn(|k| &self.planes[k] + &rhs.planes[k]),
        }
    }
}

impl Sub for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn sub(self, rhs: &QuaternionMatrix) -> QuaternionMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        QuaternionMatrix {
            planes: std::array::from_fn(|k| &self.planes[k] - &rhs.planes[k]),
        }
    }
}

impl AddAssign<&QuaternionMatrix> for QuaternionMatrix {
    fn add_assign(&mut self, rhs: &QuaternionMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        for (p, q) in self.planes.iter_mut().zip(&rhs.planes) {
            *p += q;
        }
    }
}

impl SubAssign<&QuaternionMatrix> for QuaternionMatrix {
    fn sub_assign(&mut self, rhs: &QuaternionMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        for (p, q) in self.planes.iter_mut().zip(&rhs.planes) {
            *p -= q;
        }
    }
}

impl Neg for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn neg(self) -> QuaternionMatrix {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn mul(self, s: f64) -> QuaternionMatrix {
        self.scale(s)
    }
}

impl Mul for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    /// Panics on incompatible shapes; use [`QuaternionMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &QuaternionMatrix) -> QuaternionMatrix {
        self.matmul(rhs).expect("incompatible shapes in matrix product")
    }
}
