//! Seeded random draws used by the verification suites.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::quaternion::Quaternion;
use crate::quatmat::{GroupElement, QuatMatrix};

/// Quaternion with independent N(0, scale^2) components.
pub fn quaternion<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Quaternion {
    Quaternion::new(
        scale * rng.sample::<f64, _>(StandardNormal),
        scale * rng.sample::<f64, _>(StandardNormal),
        scale * rng.sample::<f64, _>(StandardNormal),
        scale * rng.sample::<f64, _>(StandardNormal),
    )
}

/// Uniform draw from the unit sphere S^3.
pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = quaternion(rng, 1.0);
        let n = q.norm();
        if n > 1e-12 {
            return q.scale(1.0 / n);
        }
    }
}

/// Purely imaginary quaternion with Gaussian components.
pub fn imaginary<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Quaternion {
    let q = quaternion(rng, scale);
    Quaternion::new(0.0, q.x, q.y, q.z)
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, scale: f64) -> QuatMatrix {
    QuatMatrix::from_fn(rows, cols, |_, _| quaternion(rng, scale))
}

/// Skew-adjoint `n x n` matrix: imaginary diagonal, `m_ji = -conj(m_ij)`.
pub fn skew<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> QuatMatrix {
    let mut m = QuatMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = imaginary(rng, scale);
        for j in i + 1..n {
            let q = quaternion(rng, scale);
            m[(i, j)] = q;
            m[(j, i)] = -q.conj();
        }
    }
    m
}

/// `exp` of a random skew-adjoint generator.
pub fn group_element<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> GroupElement {
    let g = skew(rng, n, scale).exp().expect("square generator");
    GroupElement::new(g, 1e-8).expect("exp of skew-adjoint is in Sp(n)")
}
