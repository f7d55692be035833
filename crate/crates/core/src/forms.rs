//! Quaternion-matrix valued one- and two-forms over real base differentials
//! `dx_0 .. dx_{m-1}`, evaluated pointwise rather than kept symbolic.

use serde::Serialize;

use crate::config::Tolerances;
use crate::coset::GrassmannPoint;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::quatmat::{GroupElement, QuatMatrix, ScalarFn};

/// Step for first derivatives of group paths.
pub const CONNECTION_STEP: f64 = 1e-6;
/// Step for the two-parameter stencil in the Maurer-Cartan check.
pub const MAURER_CARTAN_STEP: f64 = 1e-4;

/// `sum_r coeffs[r] dx_r`, all coefficients of one shape.
#[derive(Debug, Clone, PartialEq)]
pub struct QOneForm {
    coeffs: Vec<QuatMatrix>,
}

impl QOneForm {
    pub fn new(coeffs: Vec<QuatMatrix>) -> Result<Self> {
        if let Some(first) = coeffs.first() {
            if let Some(bad) = coeffs.iter().find(|c| c.shape() != first.shape()) {
                return Err(Error::ShapeMismatch {
                    expected: first.shape(),
                    got: bad.shape(),
                });
            }
        }
        Ok(Self { coeffs })
    }

    /// Quaternion-valued form from scalar coefficients.
    pub fn scalar(coeffs: &[Quaternion]) -> Self {
        Self {
            coeffs: coeffs.iter().map(|q| QuatMatrix::scalar(1, *q)).collect(),
        }
    }

    /// `q dx_r` in a space of `dim` differentials.
    pub fn basis(dim: usize, r: usize, q: Quaternion) -> Self {
        let mut c = vec![Quaternion::ZERO; dim];
        c[r] = q;
        Self::scalar(&c)
    }

    /// `dy_0 e + dy_1 i + dy_2 j + dy_3 k`.
    pub fn quaternion_coordinate() -> Self {
        Self::scalar(&[Quaternion::E, Quaternion::I, Quaternion::J, Quaternion::K])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, r: usize) -> &QuatMatrix {
        &self.coeffs[r]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(QuatMatrix::adjoint).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} base differentials",
                self.dim(),
                other.dim()
            )));
        }
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.try_add(b))
                .collect::<Result<_>>()?,
        )
    }

    /// Contract with a tangent vector.
    pub fn eval(&self, v: &[f64]) -> Result<QuatMatrix> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "tangent of length {} for {} differentials",
                v.len(),
                self.dim()
            )));
        }
        let mut out = QuatMatrix::zeros(self.coeffs[0].rows(), self.coeffs[0].cols());
        for (c, &x) in self.coeffs.iter().zip(v) {
            if x != 0.0 {
                out = &out + &c.scale(x);
            }
        }
        Ok(out)
    }
}

/// `sum_{r<s} coeffs[(r,s)] dx_r ^ dx_s`; only `r < s` is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct QTwoForm {
    dim: usize,
    /// Row-major over pairs `(r, s)` with `r < s`.
    coeffs: Vec<QuatMatrix>,
}

fn pair_index(dim: usize, r: usize, s: usize) -> usize {
    debug_assert!(r < s && s < dim);
    // pairs before row r, then offset within the row
    r * (2 * dim - r - 1) / 2 + (s - r - 1)
}

impl QTwoForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `dx_r ^ dx_s`, with the sign flipped for `r > s`.
    pub fn coeff(&self, r: usize, s: usize) -> QuatMatrix {
        use std::cmp::Ordering::*;
        let shape = self.coeffs[0].shape();
        match r.cmp(&s) {
            Equal => QuatMatrix::zeros(shape.0, shape.1),
            Less => self.coeffs[pair_index(self.dim, r, s)].clone(),
            Greater => -&self.coeffs[pair_index(self.dim, s, r)],
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim).flat_map(move |r| (r + 1..self.dim).map(move |s| (r, s)))
    }

    /// Evaluate on `(u, v)`: `sum_{r<s} c_rs (u_r v_s - u_s v_r)`.
    pub fn eval(&self, u: &[f64], v: &[f64]) -> Result<QuatMatrix> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::DimensionMismatch("tangent length".into()));
        }
        let shape = self.coeffs[0].shape();
        let mut out = QuatMatrix::zeros(shape.0, shape.1);
        for ((r, s), c) in self.pairs().zip(&self.coeffs) {
            let w = u[r] * v[s] - u[s] * v[r];
            if w != 0.0 {
                out = &out + &c.scale(w);
            }
        }
        Ok(out)
    }

    /// Real two-form given by one quaternion component (0 = e, 1 = i, ...)
    /// of a 1x1-valued form, in pair order.
    pub fn component(&self, c: usize) -> Vec<f64> {
        self.coeffs.iter().map(|m| m[(0, 0)].to_array()[c]).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// `(a ^ b)_{rs} = a_r b_s - a_s b_r`, products in quaternion order.
pub fn wedge(a: &QOneForm, b: &QOneForm) -> Result<QTwoForm> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} base differentials",
            a.dim(),
            b.dim()
        )));
    }
    let dim = a.dim();
    let mut coeffs = Vec::with_capacity(dim * dim.saturating_sub(1) / 2);
    for r in 0..dim {
        for s in r + 1..dim {
            let ab = a.coeff(r).matmul(b.coeff(s))?;
            let ba = a.coeff(s).matmul(b.coeff(r))?;
            coeffs.push(&ab - &ba);
        }
    }
    Ok(QTwoForm { dim, coeffs })
}

/// Hodge star on real two-forms in four dimensions, Euclidean metric,
/// orientation `dx_0 ^ dx_1 ^ dx_2 ^ dx_3`. Input and output in pair order
/// `01, 02, 03, 12, 13, 23`.
pub fn hodge_star4(w: &[f64; 6]) -> [f64; 6] {
    let [w01, w02, w03, w12, w13, w23] = *w;
    // *(01) = 23, *(02) = -13 = 31, *(03) = 12 and the inverse map
    [w23, -w13, w12, w03, -w02, w01]
}

/// `dY ^ dY*` and `dY* ^ dY` for the quaternion coordinate differential.
#[derive(Debug, Clone)]
pub struct DyWedge {
    pub self_dual: QTwoForm,
    pub anti_self_dual: QTwoForm,
}

pub fn dy_wedge() -> DyWedge {
    let dy = QOneForm::quaternion_coordinate();
    let dys = dy.adjoint();
    DyWedge {
        self_dual: wedge(&dy, &dys).expect("same dimension"),
        anti_self_dual: wedge(&dys, &dy).expect("same dimension"),
    }
}

impl DyWedge {
    /// Real two-form carried by quaternion component `c` of each product.
    pub fn components(&self, c: usize) -> ([f64; 6], [f64; 6]) {
        let to6 = |v: Vec<f64>| -> [f64; 6] { v.try_into().expect("six pairs in four dimensions") };
        (to6(self.self_dual.component(c)), to6(self.anti_self_dual.component(c)))
    }
}

/// `omega = g* dg/dt` split into blocks for the partition `j + (n - j)`.
#[derive(Debug, Clone)]
pub struct ConnectionBlocks {
    pub omega: QuatMatrix,
    pub w11: QuatMatrix,
    pub w12: QuatMatrix,
    pub w21: QuatMatrix,
    pub w22: QuatMatrix,
}

impl ConnectionBlocks {
    fn split(omega: QuatMatrix, j: usize) -> Result<Self> {
        let n = omega.rows();
        if j == 0 || j >= n {
            return Err(Error::PartitionMismatch(format!("cannot split {n} at {j}")));
        }
        let k = n - j;
        Ok(Self {
            w11: omega.block(0, 0, j, j),
            w12: omega.block(0, j, j, k),
            w21: omega.block(j, 0, k, j),
            w22: omega.block(j, j, k, k),
            omega,
        })
    }

    /// `max |omega* + omega|`.
    pub fn skew_residual(&self) -> f64 {
        self.omega.skew_residual()
    }
}

/// Central-difference derivative of a matrix path.
fn path_derivative<F>(path: &F, t: f64, h: f64) -> Result<QuatMatrix>
where
    F: Fn(f64) -> Result<GroupElement>,
{
    let plus = path(t + h)?;
    let minus = path(t - h)?;
    Ok((plus.matrix() - minus.matrix()).scale(0.5 / h))
}

pub fn connection_blocks<F>(path: F, t: f64, j: usize) -> Result<ConnectionBlocks>
where
    F: Fn(f64) -> Result<GroupElement>,
{
    let g = path(t)?;
    let dg = path_derivative(&path, t, CONNECTION_STEP)?;
    ConnectionBlocks::split(&g.matrix().adjoint() * &dg, j)
}

/// `omega_s` and `omega_t` of a two-parameter family at `(s, t)`.
fn mc_forms<F>(family: &F, s: f64, t: f64, h: f64) -> Result<(QuatMatrix, QuatMatrix)>
where
    F: Fn(f64, f64) -> Result<GroupElement>,
{
    let g = family(s, t)?;
    let gs = path_derivative(&|x| family(x, t), s, h)?;
    let gt = path_derivative(&|x| family(s, x), t, h)?;
    let ga = g.matrix().adjoint();
    Ok((&ga * &gs, &ga * &gt))
}

/// Block-wise residuals of `d omega + omega ^ omega` on `(d/ds, d/dt)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MaurerCartanResidual {
    pub block11: f64,
    pub block12: f64,
    pub block21: f64,
    pub block22: f64,
}

impl MaurerCartanResidual {
    pub fn max(&self) -> f64 {
        self.block11.max(self.block12).max(self.block21).max(self.block22)
    }
}

/// Evaluate `d/ds omega_t - d/dt omega_s + [omega_s, omega_t]` by a
/// two-parameter central stencil with step [`MAURER_CARTAN_STEP`].
pub fn maurer_cartan_residual<F>(family: F, s: f64, t: f64, j: usize) -> Result<MaurerCartanResidual>
where
    F: Fn(f64, f64) -> Result<GroupElement>,
{
    let h = MAURER_CARTAN_STEP;
    let (ws, wt) = mc_forms(&family, s, t, h)?;
    let (_, wt_plus) = mc_forms(&family, s + h, t, h)?;
    let (_, wt_minus) = mc_forms(&family, s - h, t, h)?;
    let (ws_plus, _) = mc_forms(&family, s, t + h, h)?;
    let (ws_minus, _) = mc_forms(&family, s, t - h, h)?;
    let d_wt = (&wt_plus - &wt_minus).scale(0.5 / h);
    let d_ws = (&ws_plus - &ws_minus).scale(0.5 / h);
    let bracket = &(&ws * &wt) - &(&wt * &ws);
    let total = &(&d_wt - &d_ws) + &bracket;
    let b = ConnectionBlocks::split(total, j)?;
    Ok(MaurerCartanResidual {
        block11: b.w11.max_abs(),
        block12: b.w12.max_abs(),
        block21: b.w21.max_abs(),
        block22: b.w22.max_abs(),
    })
}

/// `Omega_11 = -omega_12 ^ omega_21` and `Omega_22 = -omega_21 ^ omega_12`
/// of a two-parameter family, evaluated on `(d/ds, d/dt)`.
pub fn family_curvature<F>(family: F, s: f64, t: f64, j: usize) -> Result<(QuatMatrix, QuatMatrix)>
where
    F: Fn(f64, f64) -> Result<GroupElement>,
{
    let (ws, wt) = mc_forms(&family, s, t, CONNECTION_STEP)?;
    let bs = ConnectionBlocks::split(ws, j)?;
    let bt = ConnectionBlocks::split(wt, j)?;
    let o11 = -&(&(&bs.w12 * &bt.w21) - &(&bt.w12 * &bs.w21));
    let o22 = -&(&(&bs.w21 * &bt.w12) - &(&bt.w21 * &bs.w12));
    Ok((o11, o22))
}

/// Curvature pieces at a Grassmannian point, evaluated on two tangents.
#[derive(Debug, Clone)]
pub struct CurvatureEval {
    /// `omega_12 ^ omega_12*`
    pub omega11: QuatMatrix,
    /// `omega_12* ^ omega_12`
    pub omega22: QuatMatrix,
    /// `tr[dY (1 + Y* Y)^(-1) ^ dY* (1 + Y Y*)^(-1)]`
    pub r11: Quaternion,
    /// `tr[dY* (1 + Y Y*)^(-1) ^ dY (1 + Y* Y)^(-1)]`
    pub r22: Quaternion,
}

fn flat(m: &QuatMatrix) -> Vec<f64> {
    m.entries().iter().flat_map(|q| q.to_array()).collect()
}

/// Curvature blocks with `omega_12 = A* dY D`, `A = (1 + Y Y*)^(-1/2)`,
/// `D = (1 + Y* Y)^(-1/2)`.
pub fn curvature_blocks(
    y: &GrassmannPoint,
    dy1: &QuatMatrix,
    dy2: &QuatMatrix,
    tol: &Tolerances,
) -> Result<CurvatureEval> {
    for d in [dy1, dy2] {
        if d.shape() != y.dims() {
            return Err(Error::ShapeMismatch {
                expected: y.dims(),
                got: d.shape(),
            });
        }
    }
    // Gram determinant of the two real tangent vectors
    let (u, v) = (flat(dy1), flat(dy2));
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let (uu, vv, uv) = (dot(&u, &u), dot(&v, &v), dot(&u, &v));
    if uu * vv - uv * uv <= tol.identity * uu * vv || uu == 0.0 || vv == 0.0 {
        return Err(Error::DependentDirections);
    }

    let (j, k) = y.dims();
    let yy = &y.x;
    let left = &QuatMatrix::identity(j) + &(yy * &yy.adjoint());
    let right = &QuatMatrix::identity(k) + &(&yy.adjoint() * yy);
    let a = left.func_hermitian(ScalarFn::InvSqrt, tol)?;
    let d = right.func_hermitian(ScalarFn::InvSqrt, tol)?;
    let w = |dy: &QuatMatrix| &(&a.adjoint() * dy) * &d;
    let (w1, w2) = (w(dy1), w(dy2));
    let omega11 = &(&w1 * &w2.adjoint()) - &(&w2 * &w1.adjoint());
    let omega22 = &(&w1.adjoint() * &w2) - &(&w2.adjoint() * &w1);

    let left_inv = left.inverse(tol)?;
    let right_inv = right.inverse(tol)?;
    let r11_term = |p: &QuatMatrix, q: &QuatMatrix| (&(&(p * &right_inv) * &q.adjoint()) * &left_inv).trace();
    let r22_term = |p: &QuatMatrix, q: &QuatMatrix| (&(&(&p.adjoint() * &left_inv) * q) * &right_inv).trace();
    Ok(CurvatureEval {
        omega11,
        omega22,
        r11: r11_term(dy1, dy2) - r11_term(dy2, dy1),
        r22: r22_term(dy1, dy2) - r22_term(dy2, dy1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::{coset_element, GrassmannPoint};
    use crate::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn random_form(r: &mut ChaCha8Rng, dim: usize) -> QOneForm {
        QOneForm::new((0..dim).map(|_| sample::matrix(r, 2, 2, 1.0)).collect()).unwrap()
    }

    #[test]
    fn wedge_basis_rules() {
        let a = QOneForm::basis(4, 0, Quaternion::E);
        assert!(
            wedge(&a, &a)
                .unwrap()
                .eval(&[1.0, 2.0, 3.0, 4.0], &[0.5, -1.0, 2.0, 1.0])
                .unwrap()
                .max_abs()
                == 0.0
        );
        let b = QOneForm::basis(4, 1, Quaternion::I);
        let w = wedge(&a, &b).unwrap();
        assert_eq!(w.coeff(0, 1), QuatMatrix::scalar(1, Quaternion::I));
        assert_eq!(w.coeff(1, 0), QuatMatrix::scalar(1, -Quaternion::I));
        for (r, s) in w.pairs() {
            if (r, s) != (0, 1) {
                assert_eq!(w.coeff(r, s).max_abs(), 0.0);
            }
        }
        // dx e_r ^ dy e_s = (dy ^ dx) e_s e_r
        let p = QOneForm::basis(4, 2, Quaternion::J);
        let q = QOneForm::basis(4, 3, Quaternion::K);
        assert_eq!(wedge(&p, &q).unwrap().coeff(2, 3), QuatMatrix::scalar(1, Quaternion::I));
        assert_eq!(wedge(&q, &p).unwrap().coeff(2, 3), QuatMatrix::scalar(1, Quaternion::I));
    }

    #[test]
    fn wedge_is_bilinear() {
        let mut r = rng(40);
        for _ in 0..100 {
            let a = random_form(&mut r, 5);
            let b = random_form(&mut r, 5);
            let c = random_form(&mut r, 5);
            let s: f64 = r.random_range(-2.0..2.0);
            let lhs = wedge(&a.scale(s).try_add(&b).unwrap(), &c).unwrap();
            let ac = wedge(&a, &c).unwrap();
            let bc = wedge(&b, &c).unwrap();
            for (x, y) in [(0usize, 1usize), (1, 4), (2, 3)] {
                let expect = &ac.coeff(x, y).scale(s) + &bc.coeff(x, y);
                assert!(lhs.coeff(x, y).max_abs_diff(&expect) < 1e-12);
            }
            // evaluation oracle: (a^b)(u,v) = a(u)b(v) - a(v)b(u)
            let u: Vec<f64> = (0..5).map(|_| r.random_range(-1.0..1.0)).collect();
            let v: Vec<f64> = (0..5).map(|_| r.random_range(-1.0..1.0)).collect();
            let ab = wedge(&a, &c).unwrap().eval(&u, &v).unwrap();
            let direct =
                &(&a.eval(&u).unwrap() * &c.eval(&v).unwrap()) - &(&a.eval(&v).unwrap() * &c.eval(&u).unwrap());
            assert!(ab.max_abs_diff(&direct) < 1e-12);
        }
    }

    #[test]
    fn dy_wedge_component_pattern() {
        let w = dy_wedge();
        // pair order 01, 02, 03, 12, 13, 23
        let (sd1, asd1) = w.components(1);
        assert_eq!(sd1, [-2.0, 0.0, 0.0, 0.0, 0.0, -2.0]);
        assert_eq!(asd1, [2.0, 0.0, 0.0, 0.0, 0.0, -2.0]);
        let (sd2, asd2) = w.components(2);
        // dx0^dx2 + dx3^dx1 = dx02 - dx13
        assert_eq!(sd2, [0.0, -2.0, 0.0, 0.0, 2.0, 0.0]);
        assert_eq!(asd2, [0.0, 2.0, 0.0, 0.0, 2.0, 0.0]);
        let (sd3, asd3) = w.components(3);
        assert_eq!(sd3, [0.0, 0.0, -2.0, -2.0, 0.0, 0.0]);
        assert_eq!(asd3, [0.0, 0.0, 2.0, -2.0, 0.0, 0.0]);
        let (sd0, asd0) = w.components(0);
        assert_eq!(sd0, [0.0; 6]);
        assert_eq!(asd0, [0.0; 6]);
    }

    #[test]
    fn dy_wedge_duality() {
        let w = dy_wedge();
        for c in 1..4 {
            let (sd, asd) = w.components(c);
            assert_eq!(hodge_star4(&sd), sd);
            assert_eq!(hodge_star4(&asd), asd.map(|x| -x));
        }
    }

    #[test]
    fn hodge_star_oracle() {
        // (*w)_{kl} = 1/2 eps_{ijkl} w_{ij}
        fn eps(p: [usize; 4]) -> f64 {
            let mut sign = 1.0;
            let mut p = p;
            for i in 0..4 {
                for j in 0..3 - i {
                    if p[j] == p[j + 1] {
                        return 0.0;
                    }
                    if p[j] > p[j + 1] {
                        p.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            sign
        }
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut r = rng(41);
        let w: [f64; 6] = std::array::from_fn(|_| r.random_range(-1.0..1.0));
        let mut full = [[0.0; 4]; 4];
        for (idx, &(a, b)) in pairs.iter().enumerate() {
            full[a][b] = w[idx];
            full[b][a] = -w[idx];
        }
        let star = hodge_star4(&w);
        for (idx, &(k, l)) in pairs.iter().enumerate() {
            let mut s = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    s += 0.5 * eps([i, j, k, l]) * full[i][j];
                }
            }
            assert!((s - star[idx]).abs() < 1e-15);
        }
        assert_eq!(hodge_star4(&hodge_star4(&w)), w);
    }

    fn block_diag_path(r: &mut ChaCha8Rng) -> impl Fn(f64) -> Result<GroupElement> {
        let s1 = sample::skew(r, 2, 1.0);
        let s2 = sample::skew(r, 1, 1.0);
        move |t| {
            let a = s1.scale(t).exp()?;
            let d = s2.scale(t).exp()?;
            let g = QuatMatrix::from_blocks(&a, &QuatMatrix::zeros(2, 1), &QuatMatrix::zeros(1, 2), &d)?;
            GroupElement::new(g, 1e-9)
        }
    }

    #[test]
    fn connection_of_constant_path() {
        let mut r = rng(42);
        let g = sample::group_element(&mut r, 3, 1.0);
        let b = connection_blocks(|_| Ok(g.clone()), 0.3, 1).unwrap();
        assert_eq!(b.omega.max_abs(), 0.0);
    }

    #[test]
    fn connection_of_isotropy_path() {
        let mut r = rng(43);
        let path = block_diag_path(&mut r);
        let b = connection_blocks(&path, 0.7, 2).unwrap();
        assert!(b.w12.max_abs() < 1e-7 && b.w21.max_abs() < 1e-7);
        assert!(b.w11.max_abs() > 0.1);
    }

    #[test]
    fn connection_is_skew() {
        let mut r = rng(44);
        for _ in 0..50 {
            let g0 = sample::group_element(&mut r, 3, 1.0);
            let gen = sample::skew(&mut r, 3, 1.0);
            let path = |t: f64| GroupElement::new(g0.matrix() * &gen.scale(t).exp()?, 1e-9);
            let b = connection_blocks(path, 0.4, 1).unwrap();
            assert!(b.skew_residual() < 1e-7);
            assert!(b.w21.max_abs_diff(&-&b.w12.adjoint()) < 1e-7);
        }
    }

    #[test]
    fn maurer_cartan_vanishes() {
        let mut r = rng(45);
        for _ in 0..10 {
            let xi1 = sample::matrix(&mut r, 1, 2, 0.5);
            let xi2 = sample::matrix(&mut r, 1, 2, 0.5);
            let g0 = sample::group_element(&mut r, 3, 1.0);
            let t = tol();
            let family = |s: f64, u: f64| {
                let c = coset_element(&(&xi1.scale(s) + &xi2.scale(u)), &t)?;
                g0.compose(&c)
            };
            let res = maurer_cartan_residual(family, 0.3, -0.2, 1).unwrap();
            assert!(res.max() < 1e-4, "{res:?}");
        }
    }

    #[test]
    fn curvature_vanishes_on_isotropy_family() {
        let mut r = rng(46);
        let a = sample::skew(&mut r, 2, 1.0);
        let d = sample::skew(&mut r, 2, 1.0);
        let family = |s: f64, t: f64| {
            let ga = (&a.scale(s) + &a.scale(0.3 * t)).exp()?;
            let gd = d.scale(t).exp()?;
            let g = QuatMatrix::from_blocks(&ga, &QuatMatrix::zeros(2, 2), &QuatMatrix::zeros(2, 2), &gd)?;
            GroupElement::new(g, 1e-9)
        };
        let (o11, o22) = family_curvature(family, 0.2, 0.5, 2).unwrap();
        assert!(o11.max_abs() < 1e-12 && o22.max_abs() < 1e-12);
    }

    #[test]
    fn curvature_blocks_basic() {
        let mut r = rng(47);
        let y = GrassmannPoint::new(sample::matrix(&mut r, 2, 2, 0.5));
        let d = sample::matrix(&mut r, 2, 2, 1.0);
        assert_eq!(
            curvature_blocks(&y, &d, &d, &tol()).unwrap_err(),
            Error::DependentDirections
        );
        assert_eq!(
            curvature_blocks(&y, &d, &d.scale(-3.0), &tol()).unwrap_err(),
            Error::DependentDirections
        );

        // flat origin: R11 = tr[dY ^ dY*] on the pair
        let d2 = sample::matrix(&mut r, 2, 2, 1.0);
        let c = curvature_blocks(&GrassmannPoint::origin(2, 2), &d, &d2, &tol()).unwrap();
        let flat = (&(&d * &d2.adjoint()) - &(&d2 * &d.adjoint())).trace();
        assert!(c.r11.max_abs_diff(flat) < 1e-14);
    }

    #[test]
    fn curvature_blocks_structure() {
        let mut r = rng(48);
        let t = tol();
        for _ in 0..200 {
            let y = GrassmannPoint::new(sample::matrix(&mut r, 2, 3, 0.6));
            let d1 = sample::matrix(&mut r, 2, 3, 1.0);
            let d2 = sample::matrix(&mut r, 2, 3, 1.0);
            let c = curvature_blocks(&y, &d1, &d2, &t).unwrap();
            let swapped = curvature_blocks(&y, &d2, &d1, &t).unwrap();
            assert!(c.omega11.max_abs_diff(&-&swapped.omega11) < 1e-12);
            assert!(c.omega22.max_abs_diff(&-&swapped.omega22) < 1e-12);
            assert!((c.r11.w + swapped.r11.w).abs() < 1e-12);
            // both pieces are skew-adjoint
            assert!(c.omega11.skew_residual() < 1e-12);
            assert!(c.omega22.skew_residual() < 1e-12);
            // Omega_11 = A* dY (1 + Y* Y)^-1 ^ dY* A
            let a = (&QuatMatrix::identity(2) + &(&y.x * &y.x.adjoint()))
                .func_hermitian(ScalarFn::InvSqrt, &t)
                .unwrap();
            let rinv = (&QuatMatrix::identity(3) + &(&y.x.adjoint() * &y.x))
                .inverse(&t)
                .unwrap();
            let term = |p: &QuatMatrix, q: &QuatMatrix| &(&(&(&a * p) * &rinv) * &q.adjoint()) * &a;
            let alt = &term(&d1, &d2) - &term(&d2, &d1);
            assert!(c.omega11.max_abs_diff(&alt) < 1e-12);
        }
    }

    #[test]
    fn curvature_pieces_same_magnitude_scalar_case() {
        let mut r = rng(49);
        for _ in 0..200 {
            let y = GrassmannPoint::new(sample::matrix(&mut r, 1, 1, 1.0));
            let d1 = sample::matrix(&mut r, 1, 1, 1.0);
            let d2 = sample::matrix(&mut r, 1, 1, 1.0);
            let c = curvature_blocks(&y, &d1, &d2, &tol()).unwrap();
            let norm = |q: Quaternion| q.vector().iter().map(|x| x * x).sum::<f64>().sqrt();
            let (a, b) = (norm(c.r11), norm(c.r22));
            assert!((a - b).abs() <= 1e-8 * a.max(b));
            assert!(c.r11.w.abs() < 1e-14 && c.r22.w.abs() < 1e-14);
            assert!(c.omega11[(0, 0)].max_abs_diff(c.r11) < 1e-12);
        }
    }
}
