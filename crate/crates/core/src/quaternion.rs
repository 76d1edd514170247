//! Real quaternions `w + x i + y j + z k` with the Hamilton product.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn pure(x: f64, y: f64, z: f64) -> Self {
        Quaternion::new(0.0, x, y, z)
    }

    /// The unit pure quaternion `(i + j + k)/√3`, the gray axis of RGB space.
    pub fn gray_axis() -> Self {
        let s = 1.0 / 3f64.sqrt();
        Quaternion::pure(s, s, s)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// `|q| = sqrt(w² + x² + y² + z²)`.
    #[inline]
    pub fn modulus(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Multiplicative inverse `conj(q)/|q|²`. Returns `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            None
        } else {
            Some(self.conj() * (1.0 / n))
        }
    }

    /// `q/|q|`, or `None` when `q = 0`.
    pub fn unit(self) -> Option<Self> {
        let m = self.modulus();
        if m == 0.0 {
            None
        } else {
            Some(self * (1.0 / m))
        }
    }

    #[inline]
    pub fn is_pure(self) -> bool {
        self.w == 0.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    /// Entries within `tol` of each other componentwise.
    pub fn abs_diff_eq(self, other: Self, tol: f64) -> bool {
        (self - other).to_array().iter().all(|d| d.abs() <= tol)
    }
}

/// Hamilton product.
#[inline]
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, rhs: Quaternion) {
        *self = qmul(*self, rhs);
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Quaternion) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    #[test]
    fn hamilton_table() {
        assert_eq!(I * I, -ONE);
        assert_eq!(J * J, -ONE);
        assert_eq!(K * K, -ONE);
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(J * I, -K);
        assert_eq!(K * J, -I);
        assert_eq!(I * K, -J);
        assert_eq!(I * J * K, -ONE);
    }

    #[test]
    fn product_against_expansion() {
        // 16-term expansion over the basis, written out independently of qmul
        fn expand(a: Quaternion, b: Quaternion) -> Quaternion {
            // table[p][q] = e_p e_q as (sign, index)
            let table: [[(f64, usize); 4]; 4] = [
                [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
                [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
                [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
                [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
            ];
            let (ca, cb) = (a.to_array(), b.to_array());
            let mut out = [0.0; 4];
            for p in 0..4 {
                for q in 0..4 {
                    let (s, idx) = table[p][q];
                    out[idx] += s * ca[p] * cb[q];
                }
            }
            Quaternion::from_array(out)
        }
        let a = ONE + I;
        let b = ONE + J;
        assert_eq!(a * b, Quaternion::new(1.0, 1.0, 1.0, 1.0));
        assert_eq!(expand(a, b), a * b);

        let p = Quaternion::new(0.3, -1.2, 2.5, 0.7);
        let q = Quaternion::new(-0.4, 0.9, 0.1, -3.0);
        assert!((p * q).abs_diff_eq(expand(p, q), 1e-15));
        assert!((q * p).abs_diff_eq(expand(q, p), 1e-15));
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).modulus(), 2.0);
        assert_eq!(Quaternion::ZERO.modulus(), 0.0);
        assert_eq!(Quaternion::new(3.0, 4.0, 0.0, 0.0).modulus(), 5.0);
    }

    #[test]
    fn identity_and_conjugate() {
        let q = Quaternion::new(0.5, -2.0, 1.5, 3.25);
        assert_eq!(q * ONE, q);
        assert_eq!(ONE * q, q);
        assert_eq!(q.conj().conj(), q);
        assert_eq!(q.conj().modulus(), q.modulus());
        let n = q * q.conj();
        assert!(n.abs_diff_eq(Quaternion::real(q.norm_sqr()), 1e-12));
        let n = q.conj() * q;
        assert!(n.abs_diff_eq(Quaternion::real(q.norm_sqr()), 1e-12));
    }

    #[test]
    fn inverse_and_unit() {
        assert!(Quaternion::ZERO.inverse().is_none());
        let q = Quaternion::new(1.0, 2.0, -1.0, 0.5);
        let inv = q.inverse().unwrap();
        assert!((q * inv).abs_diff_eq(ONE, 1e-15));
        assert!((q.unit().unwrap().modulus() - 1.0).abs() < 1e-15);
        let g = Quaternion::gray_axis();
        assert!((g * g).abs_diff_eq(-ONE, 1e-15));
    }
}
