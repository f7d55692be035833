//! Coset parameterization of Sp(j+k)/Sp(j) x Sp(k) and the linear
//! fractional action of Sp(j+k) on the Grassmannian coordinates `X`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::quatmat::{GroupElement, QuatMatrix, ScalarFn};
use crate::sample;

/// Step of the central difference used to push tangent vectors forward.
pub const PUSHFORWARD_STEP: f64 = 1e-6;

/// `xi` together with the blocks of `exp([[0, xi], [-xi*, 0]])`.
#[derive(Debug, Clone)]
pub struct CosetParam {
    pub xi: QuatMatrix,
    /// `sin(sqrt(xi xi*)) (xi xi*)^(-1/2) xi`
    pub z: QuatMatrix,
    /// `cos(sqrt(xi xi*))`
    pub cos_left: QuatMatrix,
    /// `cos(sqrt(xi* xi))`
    pub cos_right: QuatMatrix,
}

impl CosetParam {
    pub fn new(xi: QuatMatrix, tol: &Tolerances) -> Result<Self> {
        let left = &xi * &xi.adjoint();
        let right = &xi.adjoint() * &xi;
        let z = &left.func_hermitian(ScalarFn::SinSqrtOverSqrt, tol)? * &xi;
        let cos_left = left.func_hermitian(ScalarFn::CosSqrt, tol)?;
        let cos_right = right.func_hermitian(ScalarFn::CosSqrt, tol)?;
        Ok(Self {
            xi,
            z,
            cos_left,
            cos_right,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.xi.shape()
    }

    /// The group element `[[cos_left, Z], [-Z*, cos_right]]`.
    pub fn element(&self) -> Result<GroupElement> {
        let g = QuatMatrix::from_blocks(&self.cos_left, &self.z, &-&self.z.adjoint(), &self.cos_right)?;
        GroupElement::new(g, 1e-9)
    }

    /// `X = Z (1 - Z* Z)^(-1/2)`. Fails where `Z* Z` has eigenvalue 1.
    /// Agrees with `B D^(-1)` of [`CosetParam::element`] while every
    /// singular value of `xi` is below pi/2.
    pub fn grassmann_point(&self, tol: &Tolerances) -> Result<GrassmannPoint> {
        let (_, k) = self.dims();
        let one_minus = &QuatMatrix::identity(k) - &(&self.z.adjoint() * &self.z);
        let x = &self.z * &one_minus.func_hermitian(ScalarFn::InvSqrt, tol)?;
        Ok(GrassmannPoint::new(x))
    }

    /// `(1 - Z Z*)^(-1/2) Z`, the left-handed form of the same point.
    pub fn grassmann_point_left(&self, tol: &Tolerances) -> Result<GrassmannPoint> {
        let (j, _) = self.dims();
        let one_minus = &QuatMatrix::identity(j) - &(&self.z * &self.z.adjoint());
        let x = &one_minus.func_hermitian(ScalarFn::InvSqrt, tol)? * &self.z;
        Ok(GrassmannPoint::new(x))
    }
}

/// `exp` of the skew block matrix built from a `j x k` matrix `xi`.
pub fn coset_element(xi: &QuatMatrix, tol: &Tolerances) -> Result<GroupElement> {
    CosetParam::new(xi.clone(), tol)?.element()
}

/// `[[0, xi], [-xi*, 0]]`.
pub fn skew_embedding(xi: &QuatMatrix) -> QuatMatrix {
    let (j, k) = xi.shape();
    QuatMatrix::from_blocks(&QuatMatrix::zeros(j, j), xi, &-&xi.adjoint(), &QuatMatrix::zeros(k, k))
        .expect("blocks conform by construction")
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannPoint {
    pub x: QuatMatrix,
}

impl GrassmannPoint {
    pub fn new(x: QuatMatrix) -> Self {
        Self { x }
    }

    pub fn origin(j: usize, k: usize) -> Self {
        Self::new(QuatMatrix::zeros(j, k))
    }

    pub fn dims(&self) -> (usize, usize) {
        self.x.shape()
    }
}

type Blocks = (QuatMatrix, QuatMatrix, QuatMatrix, QuatMatrix);

fn blocks_for(g: &GroupElement, x: &QuatMatrix) -> Result<Blocks> {
    let (j, k) = x.shape();
    if g.n() != j + k {
        return Err(Error::PartitionMismatch(format!(
            "Sp({}) acting on a {j}x{k} point",
            g.n()
        )));
    }
    g.blocks(j)
}

/// `Y = (A X + B)(C X + D)^(-1)`.
pub fn lft_apply(g: &GroupElement, x: &GrassmannPoint, tol: &Tolerances) -> Result<GrassmannPoint> {
    let (a, b, c, d) = blocks_for(g, &x.x)?;
    let num = &(&a * &x.x) + &b;
    let den = &(&c * &x.x) + &d;
    Ok(GrassmannPoint::new(&num * &den.inverse(tol)?))
}

/// `Y = (-X B* + A*)^(-1) (X D* - C*)`.
pub fn lft_apply_left(g: &GroupElement, x: &GrassmannPoint, tol: &Tolerances) -> Result<GrassmannPoint> {
    let (a, b, c, d) = blocks_for(g, &x.x)?;
    let den = &a.adjoint() - &(&x.x * &b.adjoint());
    let num = &(&x.x * &d.adjoint()) - &c.adjoint();
    Ok(GrassmannPoint::new(&den.inverse(tol)? * &num))
}

/// Residuals of the four transport identities relating `Y_a`, `Y_b` to
/// `X_a`, `X_b`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TransportResiduals {
    /// `1 + Ya Yb*`
    pub one_plus_ya_yb_adj: f64,
    /// `1 + Ya* Yb`
    pub one_plus_ya_adj_yb: f64,
    /// `Ya - Yb`, factored with `Xa` on the left
    pub difference_left: f64,
    /// `Ya - Yb`, factored with `Xb` on the left
    pub difference_right: f64,
}

impl TransportResiduals {
    pub fn max(&self) -> f64 {
        self.one_plus_ya_yb_adj
            .max(self.one_plus_ya_adj_yb)
            .max(self.difference_left)
            .max(self.difference_right)
    }
}

pub fn transport_identities(
    g: &GroupElement,
    xa: &GrassmannPoint,
    xb: &GrassmannPoint,
    tol: &Tolerances,
) -> Result<TransportResiduals> {
    if xa.dims() != xb.dims() {
        return Err(Error::ShapeMismatch {
            expected: xa.dims(),
            got: xb.dims(),
        });
    }
    let (j, k) = xa.dims();
    let (a, b, c, d) = blocks_for(g, &xa.x)?;
    let ya = lft_apply(g, xa, tol)?.x;
    let yb = lft_apply(g, xb, tol)?.x;
    let (xa, xb) = (&xa.x, &xb.x);

    // (-X B* + A*)^(-1) and (C X + D)^(-1) for each point
    let left_inv = |x: &QuatMatrix| (&a.adjoint() - &(x * &b.adjoint())).inverse(tol);
    let right_inv = |x: &QuatMatrix| (&(&c * x) + &d).inverse(tol);
    let la = left_inv(xa)?;
    let lb = left_inv(xb)?;
    let ra = right_inv(xa)?;
    let rb = right_inv(xb)?;

    let id_j = QuatMatrix::identity(j);
    let id_k = QuatMatrix::identity(k);

    let lhs1 = &id_j + &(&ya * &yb.adjoint());
    let mid1 = &id_j + &(xa * &xb.adjoint());
    let tail1 = (&a - &(&b * &xb.adjoint())).inverse(tol)?;
    let rhs1 = &(&la * &mid1) * &tail1;

    let lhs2 = &id_k + &(&ya.adjoint() * &yb);
    let head2 = (&(&xa.adjoint() * &c.adjoint()) + &d.adjoint()).inverse(tol)?;
    let mid2 = &id_k + &(&xa.adjoint() * xb);
    let rhs2 = &(&head2 * &mid2) * &rb;

    let diff_y = &ya - &yb;
    let diff_x = xa - xb;
    let rhs3 = &(&la * &diff_x) * &rb;
    let rhs4 = &(&lb * &diff_x) * &ra;

    Ok(TransportResiduals {
        one_plus_ya_yb_adj: lhs1.max_abs_diff(&rhs1),
        one_plus_ya_adj_yb: lhs2.max_abs_diff(&rhs2),
        difference_left: diff_y.max_abs_diff(&rhs3),
        difference_right: diff_y.max_abs_diff(&rhs4),
    })
}

/// Scalar part of `tr[(Ya - Yb)(Yc - Yb)^(-1)(Yc - Yd)(Ya - Yd)^(-1)]`.
/// The differences must be square, so the points must have `j = k`.
pub fn cross_ratio(
    ya: &GrassmannPoint,
    yb: &GrassmannPoint,
    yc: &GrassmannPoint,
    yd: &GrassmannPoint,
    tol: &Tolerances,
) -> Result<f64> {
    let dims = ya.dims();
    for p in [yb, yc, yd] {
        if p.dims() != dims {
            return Err(Error::ShapeMismatch {
                expected: dims,
                got: p.dims(),
            });
        }
    }
    if dims.0 != dims.1 {
        return Err(Error::NonSquare {
            rows: dims.0,
            cols: dims.1,
        });
    }
    let inv = |m: QuatMatrix| m.inverse(tol).map_err(|_| Error::DegenerateQuadruple);
    let cb = inv(&yc.x - &yb.x)?;
    let ad = inv(&ya.x - &yd.x)?;
    let prod = &(&(&(&ya.x - &yb.x) * &cb) * &(&yc.x - &yd.x)) * &ad;
    Ok(prod.scalar_trace())
}

/// Quaternion trace of `(1 + X X*)^(-1) dX (1 + X* X)^(-1) dX*`.
pub fn metric_trace(x: &GrassmannPoint, dx: &QuatMatrix, tol: &Tolerances) -> Result<Quaternion> {
    if dx.shape() != x.dims() {
        return Err(Error::ShapeMismatch {
            expected: x.dims(),
            got: dx.shape(),
        });
    }
    let (j, k) = x.dims();
    let x = &x.x;
    let p = (&QuatMatrix::identity(j) + &(x * &x.adjoint())).inverse(tol)?;
    let q = (&QuatMatrix::identity(k) + &(&x.adjoint() * x)).inverse(tol)?;
    Ok((&(&(&p * dx) * &q) * &dx.adjoint()).trace())
}

/// Complex trace of the embedded metric operator. Its imaginary part is
/// zero by construction; the quaternion trace, which is not cyclic, keeps a
/// nonzero vector part in general.
pub fn metric_trace_embedded(x: &GrassmannPoint, dx: &QuatMatrix, tol: &Tolerances) -> Result<Complex64> {
    if dx.shape() != x.dims() {
        return Err(Error::ShapeMismatch {
            expected: x.dims(),
            got: dx.shape(),
        });
    }
    let (j, k) = x.dims();
    let x = &x.x;
    let p = (&QuatMatrix::identity(j) + &(x * &x.adjoint())).inverse(tol)?;
    let q = (&QuatMatrix::identity(k) + &(&x.adjoint() * x)).inverse(tol)?;
    Ok((&(&(&p * dx) * &q) * &dx.adjoint()).embed().trace())
}

/// `ds^2 = Re tr[(1 + X X*)^(-1) dX (1 + X* X)^(-1) dX*]`, normalized so
/// that `ds^2 = |dX|^2` at the origin.
pub fn metric_form(x: &GrassmannPoint, dx: &QuatMatrix, tol: &Tolerances) -> Result<f64> {
    let t = metric_trace_embedded(x, dx, tol)?;
    debug_assert!(t.im.abs() <= 1e-12 * t.re.abs().max(1.0));
    Ok(0.5 * t.re)
}

/// The same line element expanded with `(1 + X* X)^(-1) = 1 - X* (1 + X X*)^(-1) X`.
pub fn metric_form_expanded(x: &GrassmannPoint, dx: &QuatMatrix, tol: &Tolerances) -> Result<f64> {
    if dx.shape() != x.dims() {
        return Err(Error::ShapeMismatch {
            expected: x.dims(),
            got: dx.shape(),
        });
    }
    let (j, _) = x.dims();
    let x = &x.x;
    let p = (&QuatMatrix::identity(j) + &(x * &x.adjoint())).inverse(tol)?;
    let first = &(&p * dx) * &dx.adjoint();
    let second = &(&(&(&(&p * dx) * &x.adjoint()) * &p) * x) * &dx.adjoint();
    Ok((&first - &second).scalar_trace())
}

/// `d/dt lft(g, X + t dX)` at `t = 0` by central difference.
pub fn pushforward(g: &GroupElement, x: &GrassmannPoint, dx: &QuatMatrix, tol: &Tolerances) -> Result<QuatMatrix> {
    let h = PUSHFORWARD_STEP;
    let plus = lft_apply(g, &GrassmannPoint::new(&x.x + &dx.scale(h)), tol)?;
    let minus = lft_apply(g, &GrassmannPoint::new(&x.x - &dx.scale(h)), tol)?;
    Ok((&plus.x - &minus.x).scale(0.5 / h))
}

/// `|ds^2(Y, dY) - ds^2(X, dX)|` with `(Y, dY)` the image of `(X, dX)`.
pub fn metric_invariance_check(g: &GroupElement, x: &GrassmannPoint, dx: &QuatMatrix, tol: &Tolerances) -> Result<f64> {
    let before = metric_form(x, dx, tol)?;
    let y = lft_apply(g, x, tol)?;
    let dy = pushforward(g, x, dx, tol)?;
    let after = metric_form(&y, &dy, tol)?;
    Ok((after - before).abs())
}

/// `[[0, 1], [1, 0]]` in Sp(2); acts on 1x1 points as `X -> X^(-1)`.
pub fn inversion_element() -> GroupElement {
    let g = QuatMatrix::from_rows(&[
        vec![Quaternion::ZERO, Quaternion::E],
        vec![Quaternion::E, Quaternion::ZERO],
    ])
    .expect("2x2");
    GroupElement::new(g, 0.0).expect("permutation matrix is unitary")
}

fn check_q_shape(q: &QuatMatrix, n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::PartitionMismatch(format!("need 0 < k < n, got k={k}, n={n}")));
    }
    if q.shape() != (k, n) {
        return Err(Error::ShapeMismatch {
            expected: (k, n),
            got: q.shape(),
        });
    }
    Ok(())
}

/// Both sides of `tr[(1 + Q* Q)^(-1)] = 2(n - k) + tr[(1 + Q Q*)^(-1)]`,
/// traces taken in the complex embedding. `Q` is `k x n`.
pub fn curvature_trace(q: &QuatMatrix, n: usize, k: usize, tol: &Tolerances) -> Result<(f64, f64)> {
    check_q_shape(q, n, k)?;
    let embed_trace = |m: &QuatMatrix| 2.0 * m.scalar_trace();
    let big = (&QuatMatrix::identity(n) + &(&q.adjoint() * q)).inverse(tol)?;
    let small = (&QuatMatrix::identity(k) + &(q * &q.adjoint())).inverse(tol)?;
    let lhs = embed_trace(&big);
    let rhs = 2.0 * (n - k) as f64 + embed_trace(&small);
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvatureDet {
    /// `det(1 + Q Q*)^(-(k + n))`
    pub value: f64,
    /// `det(1 + Q Q*)` from the deduplicated spectrum.
    pub det_from_eigenvalues: f64,
    /// `sqrt |det embed(1 + Q Q*)|`
    pub det_from_embedding: f64,
}

pub fn curvature_det(q: &QuatMatrix, n: usize, k: usize, tol: &Tolerances) -> Result<CurvatureDet> {
    check_q_shape(q, n, k)?;
    let qq = q * &q.adjoint();
    let det_eig: f64 = qq.eigvals_hyperhermitian(tol)?.iter().map(|v| 1.0 + v).product();
    let det_emb = (&QuatMatrix::identity(k) + &qq).embed().determinant().norm().sqrt();
    let rel = (det_eig - det_emb).abs() / det_emb.abs().max(1.0);
    if rel > tol.pairing {
        return Err(Error::PairingFailure(rel));
    }
    Ok(CurvatureDet {
        value: det_eig.powf(-((k + n) as f64)),
        det_from_eigenvalues: det_eig,
        det_from_embedding: det_emb,
    })
}

/// Representation of the diagonal subgroup Sp(1)^n on H^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiberAction {
    Trivial,
    /// `(sigma(eta) v)_i = eta_i v_i`
    Fundamental,
}

impl FiberAction {
    pub fn apply(self, eta: &[Quaternion], v: &[Quaternion]) -> Vec<Quaternion> {
        match self {
            Self::Trivial => v.to_vec(),
            Self::Fundamental => eta.iter().zip(v).map(|(e, x)| *e * *x).collect(),
        }
    }
}

/// Monte-Carlo mean with per-component standard error, components laid
/// out as `[w, x, y, z]` per quaternion.
#[derive(Debug, Clone, Serialize)]
pub struct HaarEstimate {
    pub mean: Vec<Quaternion>,
    pub std_err: Vec<[f64; 4]>,
    pub samples: usize,
}

fn diagonal(eta: &[Quaternion]) -> GroupElement {
    let n = eta.len();
    let mut m = QuatMatrix::zeros(n, n);
    for (i, e) in eta.iter().enumerate() {
        m[(i, i)] = *e;
    }
    GroupElement::new(m, 1e-12).expect("unit diagonal")
}

fn draw_fiber(rng: &mut ChaCha8Rng, n: usize) -> Vec<Quaternion> {
    (0..n).map(|_| sample::unit_quaternion(rng)).collect()
}

/// Accumulates a running mean and variance per real component.
struct Moments {
    sum: Vec<[f64; 4]>,
    sum_sq: Vec<[f64; 4]>,
    count: usize,
}

impl Moments {
    fn new(len: usize) -> Self {
        Self {
            sum: vec![[0.0; 4]; len],
            sum_sq: vec![[0.0; 4]; len],
            count: 0,
        }
    }

    fn push(&mut self, v: &[Quaternion]) {
        for (i, q) in v.iter().enumerate() {
            for (c, x) in q.to_array().into_iter().enumerate() {
                self.sum[i][c] += x;
                self.sum_sq[i][c] += x * x;
            }
        }
        self.count += 1;
    }

    fn finish(self) -> HaarEstimate {
        let n = self.count as f64;
        let mean = self
            .sum
            .iter()
            .map(|s| Quaternion::from_array(s.map(|x| x / n)))
            .collect();
        let std_err = self
            .sum
            .iter()
            .zip(&self.sum_sq)
            .map(|(s, ss)| {
                let mut e = [0.0; 4];
                for c in 0..4 {
                    let m = s[c] / n;
                    let var = (ss[c] / n - m * m).max(0.0) * n / (n - 1.0).max(1.0);
                    e[c] = (var / n).sqrt();
                }
                e
            })
            .collect();
        HaarEstimate {
            mean,
            std_err,
            samples: self.count,
        }
    }
}

/// `f(x) = E_eta[sigma(eta) alpha(x eta)]` over `eta` uniform on (S^3)^n,
/// embedded diagonally in Sp(n). `alpha` returns `n` quaternions.
pub fn haar_average<F>(
    alpha: F,
    sigma: FiberAction,
    x: &GroupElement,
    samples: usize,
    seed: u64,
) -> Result<HaarEstimate>
where
    F: Fn(&GroupElement) -> Vec<Quaternion>,
{
    if samples == 0 {
        return Err(Error::Parse("haar_average needs at least one sample".into()));
    }
    let n = x.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Moments::new(n);
    for _ in 0..samples {
        let eta = draw_fiber(&mut rng, n);
        let xe = x.compose(&diagonal(&eta))?;
        let v = alpha(&xe);
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "alpha returned {} entries for Sp({n})",
                v.len()
            )));
        }
        acc.push(&sigma.apply(&eta, &v));
    }
    Ok(acc.finish())
}

/// Estimate of `f(x xi) - sigma(xi^(-1)) f(x)` using the same fiber draws
/// on both sides.
pub fn haar_equivariance<F>(
    alpha: F,
    sigma: FiberAction,
    x: &GroupElement,
    xi: &[Quaternion],
    samples: usize,
    seed: u64,
) -> Result<HaarEstimate>
where
    F: Fn(&GroupElement) -> Vec<Quaternion>,
{
    let n = x.n();
    if xi.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} fiber entries for Sp({n})",
            xi.len()
        )));
    }
    for q in xi {
        if (q.norm_sq() - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnitQuaternion(q.norm_sq()));
        }
    }
    if samples == 0 {
        return Err(Error::Parse("haar_equivariance needs at least one sample".into()));
    }
    let xxi = x.compose(&diagonal(xi))?;
    let xi_inv: Vec<Quaternion> = xi.iter().map(|q| q.conj()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Moments::new(n);
    for _ in 0..samples {
        let eta = draw_fiber(&mut rng, n);
        let d = diagonal(&eta);
        let lhs = sigma.apply(&eta, &alpha(&xxi.compose(&d)?));
        let rhs = sigma.apply(&xi_inv, &sigma.apply(&eta, &alpha(&x.compose(&d)?)));
        let diff: Vec<Quaternion> = lhs.iter().zip(&rhs).map(|(a, b)| *a - *b).collect();
        acc.push(&diff);
    }
    Ok(acc.finish())
}

impl HaarEstimate {
    /// Largest `|mean| / std_err` over components; components with zero
    /// standard error count only if their mean is not negligible.
    pub fn max_z_score(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (m, e) in self.mean.iter().zip(&self.std_err) {
            for (x, s) in m.to_array().into_iter().zip(e) {
                let z = if *s > 0.0 {
                    x.abs() / s
                } else if x.abs() < 1e-12 {
                    0.0
                } else {
                    f64::INFINITY
                };
                worst = worst.max(z);
            }
        }
        worst
    }

    pub fn norm_sq(&self) -> f64 {
        self.mean.iter().map(|q| q.norm_sq()).sum()
    }
}
