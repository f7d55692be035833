//! Real quaternions and their 2x2 complex (Pauli-type) representation.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `w e + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const E: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Basis element `e_r` for `r` in `0..4` (e, i, j, k).
    pub fn basis(r: usize) -> Self {
        match r {
            0 => Self::E,
            1 => Self::I,
            2 => Self::J,
            3 => Self::K,
            _ => panic!("quaternion basis index {r} out of range"),
        }
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Vector (imaginary) part as a 3-vector.
    #[inline]
    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse; `None` for the zero quaternion.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sq();
        (n > 0.0).then(|| self.conj().scale(1.0 / n))
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    /// Image in m(C^2): `[[w+iz, x+iy], [-(x-iy), w-iz]]`.
    pub fn to_m2c(self) -> M2C {
        M2C {
            r11: Complex64::new(self.w, self.z),
            r12: Complex64::new(self.x, self.y),
            r21: -Complex64::new(self.x, -self.y),
            r22: Complex64::new(self.w, -self.z),
        }
    }

    /// Inverse of [`Quaternion::to_m2c`]. Fails unless `r22 = conj(r11)` and
    /// `r21 = -conj(r12)` within `tol`.
    pub fn from_m2c(m: &M2C, tol: f64) -> Result<Self> {
        let residual = m.structure_residual();
        if residual > tol {
            return Err(Error::MalformedM2C(residual));
        }
        Ok(Self::from_m2c_projected(m))
    }

    /// Nearest quaternion to an arbitrary 2x2 complex matrix (orthogonal
    /// projection onto the quaternionic subspace).
    pub fn from_m2c_projected(m: &M2C) -> Self {
        let a = (m.r11 + m.r22.conj()) * 0.5;
        let b = (m.r12 - m.r21.conj()) * 0.5;
        Self::new(a.re, b.re, b.im, a.im)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product; `ij = k, jk = i, ki = j`.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

/// A 2x2 complex matrix, intended to hold the m(C^2) image of a quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M2C {
    pub r11: Complex64,
    pub r12: Complex64,
    pub r21: Complex64,
    pub r22: Complex64,
}

impl M2C {
    pub fn new(r11: Complex64, r12: Complex64, r21: Complex64, r22: Complex64) -> Self {
        Self { r11, r12, r21, r22 }
    }

    pub fn identity() -> Self {
        Quaternion::E.to_m2c()
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.r11, self.r12, self.r21, self.r22]
    }

    pub fn det(&self) -> Complex64 {
        self.r11 * self.r22 - self.r12 * self.r21
    }

    pub fn matmul(&self, o: &Self) -> Self {
        Self {
            r11: self.r11 * o.r11 + self.r12 * o.r21,
            r12: self.r11 * o.r12 + self.r12 * o.r22,
            r21: self.r21 * o.r11 + self.r22 * o.r21,
            r22: self.r21 * o.r12 + self.r22 * o.r22,
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj_entries(&self) -> Self {
        Self::new(self.r11.conj(), self.r12.conj(), self.r21.conj(), self.r22.conj())
    }

    /// Deviation from `r22 = conj(r11)`, `r21 = -conj(r12)`.
    pub fn structure_residual(&self) -> f64 {
        (self.r22 - self.r11.conj())
            .norm()
            .max((self.r21 + self.r12.conj()).norm())
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.entries()
            .iter()
            .zip(o.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The almost-complex structure `j = [[0, 1], [-1, 0]]`.
pub fn j_matrix() -> M2C {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    M2C::new(zero, one, -one, zero)
}

/// `j' m j`. On an m(C^2) image this is entrywise complex conjugation.
pub fn j_conjugate(m: &M2C) -> M2C {
    let j = j_matrix();
    let jt = M2C::new(j.r11, j.r21, j.r12, j.r22);
    jt.matmul(m).matmul(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_q(rng: &mut impl Rng) -> Quaternion {
        Quaternion::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )
    }

    /// Scalar/vector assembly `(v0 w0 - v.w) + (v0 w + w0 v + v x w)`,
    /// written independently of the Hamilton product table.
    fn sv_product(v: Quaternion, w: Quaternion) -> Quaternion {
        let (a, b) = (v.vector(), w.vector());
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        Quaternion::new(
            v.w * w.w - dot,
            v.w * b[0] + w.w * a[0] + cross[0],
            v.w * b[1] + w.w * a[1] + cross[1],
            v.w * b[2] + w.w * a[2] + cross[2],
        )
    }

    #[test]
    fn basis_products() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::J * Q::I, -Q::K);
        for b in [Q::I, Q::J, Q::K] {
            assert_eq!(b * b, -Q::E);
        }
    }

    #[test]
    fn one_plus_i_times_one_plus_j() {
        let a = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        let b = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        let oracle = sv_product(a, b);
        assert_eq!(oracle, Quaternion::new(1.0, 1.0, 1.0, 1.0));
        assert_eq!(a * b, oracle);
    }

    #[test]
    fn identity_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let q = rand_q(&mut rng);
            assert_eq!(Quaternion::E * q, q);
            assert_eq!(q * Quaternion::E, q);
        }
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(Quaternion::E.conj(), Quaternion::E);
        assert_eq!(
            Quaternion::new(1.0, 2.0, 3.0, 4.0).conj(),
            Quaternion::new(1.0, -2.0, -3.0, -4.0)
        );
        // conj(ij) = conj(j) conj(i) = (-j)(-i) = ji = -k
        let lhs = (Quaternion::I * Quaternion::J).conj();
        let rhs = Quaternion::J.conj() * Quaternion::I.conj();
        assert_eq!(lhs, -Quaternion::K);
        assert_eq!(rhs, -Quaternion::K);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(Quaternion::ZERO.norm_sq(), 0.0);
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).norm_sq(), 4.0);
    }

    #[test]
    fn norm_is_determinant_of_image() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let q = rand_q(&mut rng);
            let d = q.to_m2c().det();
            assert!((d.re - q.norm_sq()).abs() < 1e-12);
            assert!(d.im.abs() < 1e-12);
        }
    }

    #[test]
    fn m2c_images() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(Quaternion::I.to_m2c(), M2C::new(zero, one, -one, zero));
        assert_eq!(Quaternion::E.to_m2c(), M2C::new(one, zero, zero, one));
    }

    #[test]
    fn m2c_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let (a, b) = (rand_q(&mut rng), rand_q(&mut rng));
            let lhs = (a * b).to_m2c();
            let rhs = a.to_m2c().matmul(&b.to_m2c());
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn malformed_m2c_rejected() {
        let mut m = Quaternion::new(1.0, 2.0, 3.0, 4.0).to_m2c();
        m.r22 += Complex64::new(0.1, 0.0);
        assert!(matches!(Quaternion::from_m2c(&m, 1e-12), Err(Error::MalformedM2C(_))));
    }

    #[test]
    fn j_conjugate_is_entrywise_conjugation() {
        assert_eq!(j_conjugate(&M2C::identity()), M2C::identity());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let q = rand_q(&mut rng);
            let m = q.to_m2c();
            let jc = j_conjugate(&m);
            assert!(jc.max_abs_diff(&m.conj_entries()) < 1e-15);
            // (z1, z2) -> (conj z1, conj z2) is the quaternion (w, x, -y, -z)
            let expect = Quaternion::new(q.w, q.x, -q.y, -q.z).to_m2c();
            assert!(jc.max_abs_diff(&expect) < 1e-15);
            assert!(j_conjugate(&jc).max_abs_diff(&m) < 1e-15);
        }
    }

    fn q_strategy() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from_array)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in q_strategy(), b in q_strategy()) {
            let lhs = (a * b).norm_sq();
            let rhs = a.norm_sq() * b.norm_sq();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn conj_is_anti_homomorphism(a in q_strategy(), b in q_strategy()) {
            let lhs = (a * b).conj();
            let rhs = b.conj() * a.conj();
            prop_assert!(lhs.max_abs_diff(rhs) < 1e-13);
        }

        #[test]
        fn conj_times_self_is_norm(q in q_strategy()) {
            let n = q.norm_sq();
            prop_assert!((q * q.conj()).max_abs_diff(Quaternion::real(n)) < 1e-12 * n.max(1.0));
            prop_assert!((q.conj() * q).max_abs_diff(Quaternion::real(n)) < 1e-12 * n.max(1.0));
            prop_assert_eq!(q.conj().conj(), q);
        }

        #[test]
        fn m2c_round_trip_exact(q in q_strategy()) {
            prop_assert_eq!(Quaternion::from_m2c(&q.to_m2c(), 0.0).unwrap(), q);
        }

        #[test]
        fn product_matches_scalar_vector_form(a in q_strategy(), b in q_strategy()) {
            prop_assert!((a * b).max_abs_diff(sv_product(a, b)) < 1e-12);
        }
    }
}
