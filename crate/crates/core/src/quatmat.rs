//! Dense quaternion matrices.
//!
//! Spectral work and inversion go through the complex embedding, which
//! replaces each entry by its 2x2 m(C^2) block. The embedding is a faithful
//! `*`-homomorphism, so eigenvalues of a hyper-Hermitian matrix appear there
//! twice and inverses map back to quaternion form exactly (up to rounding).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, M2C};

pub type CMatrix = DMatrix<Complex64>;

/// Series order used inside `exp` after scaling.
const EXP_ORDER: usize = 18;
/// `exp` scales its argument until the 1-norm drops below this bound.
const EXP_SCALE_BOUND: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct QuatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QuatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Quaternion::E)
    }

    /// `q` on the diagonal.
    pub fn scalar(n: usize, q: Quaternion) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = q;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Row-major construction.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.concat())
    }

    /// Column vector.
    pub fn column(entries: &[Quaternion]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().copied().map(f).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q.scale(s))
    }

    /// Left multiplication of every entry by `q`.
    pub fn left_scale(&self, q: Quaternion) -> Self {
        self.map(|e| q * e)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                got: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    /// Sub-block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)])
    }

    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("blocks do not conform".into()));
        }
        let (r1, c1) = a.shape();
        Ok(Self::from_fn(a.rows + c.rows, a.cols + b.cols, |r, c_| {
            match (r < r1, c_ < c1) {
                (true, true) => a[(r, c_)],
                (true, false) => b[(r, c_ - c1)],
                (false, true) => c[(r - r1, c_)],
                (false, false) => d[(r - r1, c_ - c1)],
            }
        }))
    }

    /// Largest absolute component difference; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|q| q.max_abs_diff(Quaternion::ZERO))
            .fold(0.0, f64::max)
    }

    /// Maximum column sum of entry norms.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sq()).sum()
    }

    /// Quaternion-valued trace.
    pub fn trace(&self) -> Quaternion {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .fold(Quaternion::ZERO, |a, b| a + b)
    }

    /// Scalar part of the quaternion trace.
    pub fn scalar_trace(&self) -> f64 {
        self.trace().w
    }

    /// `max |M* + M|`.
    pub fn skew_residual(&self) -> f64 {
        self.adjoint().try_add(self).map_or(f64::INFINITY, |m| m.max_abs())
    }

    /// `max |M* - M|`.
    pub fn hermitian_residual(&self) -> f64 {
        self.adjoint().try_sub(self).map_or(f64::INFINITY, |m| m.max_abs())
    }

    /// `max |M* M - 1|` for square `M`.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.rows))
    }

    /// Complex embedding: each entry becomes its 2x2 m(C^2) block.
    pub fn embed(&self) -> CMatrix {
        let mut e = CMatrix::zeros(2 * self.rows, 2 * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let m = self[(r, c)].to_m2c();
                e[(2 * r, 2 * c)] = m.r11;
                e[(2 * r, 2 * c + 1)] = m.r12;
                e[(2 * r + 1, 2 * c)] = m.r21;
                e[(2 * r + 1, 2 * c + 1)] = m.r22;
            }
        }
        e
    }

    /// Inverse of [`QuatMatrix::embed`]; fails if any 2x2 block deviates
    /// from quaternionic structure by more than `tol`.
    pub fn from_embedding(e: &CMatrix, tol: f64) -> Result<Self> {
        let (m, residual) = Self::from_embedding_projected(e)?;
        if residual > tol {
            return Err(Error::MalformedM2C(residual));
        }
        Ok(m)
    }

    /// Project each 2x2 block onto quaternion form, returning the largest
    /// structure residual seen.
    pub fn from_embedding_projected(e: &CMatrix) -> Result<(Self, f64)> {
        if !e.nrows().is_multiple_of(2) || !e.ncols().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "embedding of odd size {}x{}",
                e.nrows(),
                e.ncols()
            )));
        }
        let (rows, cols) = (e.nrows() / 2, e.ncols() / 2);
        let mut residual: f64 = 0.0;
        let m = Self::from_fn(rows, cols, |r, c| {
            let b = M2C::new(
                e[(2 * r, 2 * c)],
                e[(2 * r, 2 * c + 1)],
                e[(2 * r + 1, 2 * c)],
                e[(2 * r + 1, 2 * c + 1)],
            );
            residual = residual.max(b.structure_residual());
            Quaternion::from_m2c_projected(&b)
        });
        Ok((m, residual))
    }

    /// Inverse through the complex embedding. Singular or badly conditioned
    /// matrices (condition number above `tol.max_condition`) are rejected.
    pub fn inverse(&self, tol: &Tolerances) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let e = self.embed();
        let cond = condition_number(&e);
        // written negated so a NaN condition number also fails
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(cond < tol.max_condition) {
            return Err(Error::SingularDenominator(cond));
        }
        let inv = e.try_inverse().ok_or(Error::SingularDenominator(f64::INFINITY))?;
        Self::from_embedding(&inv, tol.structure)
    }

    /// Matrix exponential by scaling and squaring with a degree-18 Taylor
    /// polynomial.
    pub fn exp(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let norm = self.norm_one();
        let mut squarings = 0u32;
        while norm / 2f64.powi(squarings as i32) >= EXP_SCALE_BOUND {
            squarings += 1;
        }
        let a = self.scale(1.0 / 2f64.powi(squarings as i32));
        // Horner: I + A/1 (I + A/2 (I + ... (I + A/18)))
        let id = Self::identity(n);
        let mut acc = id.clone();
        for k in (1..=EXP_ORDER).rev() {
            acc = &id + &(&a * &acc).scale(1.0 / k as f64);
        }
        for _ in 0..squarings {
            acc = &acc * &acc;
        }
        Ok(acc)
    }

    /// Real eigenvalues of a hyper-Hermitian matrix, ascending. Each appears
    /// twice in the complex embedding; pairs are collapsed to one value.
    pub fn eigvals_hyperhermitian(&self, tol: &Tolerances) -> Result<Vec<f64>> {
        let (vals, _) = self.hermitian_eigen(tol)?;
        pair_eigenvalues(&vals, tol.pairing)
    }

    /// Apply a scalar function to a hyper-Hermitian matrix through its
    /// spectral decomposition.
    pub fn func_hermitian(&self, f: ScalarFn, tol: &Tolerances) -> Result<Self> {
        let (vals, vecs) = self.hermitian_eigen(tol)?;
        if f == ScalarFn::InvSqrt {
            if let Some(&bad) = vals.iter().find(|&&v| v <= tol.identity) {
                return Err(Error::SingularInvSqrt(bad));
            }
        }
        let fv: Vec<Complex64> = vals.iter().map(|&v| Complex64::new(f.apply(v), 0.0)).collect();
        let mut scaled = vecs.clone();
        for (c, fc) in fv.iter().enumerate() {
            for r in 0..scaled.nrows() {
                scaled[(r, c)] *= fc;
            }
        }
        let out = &scaled * vecs.adjoint();
        // Rounding in the eigenvectors is amplified by the largest |f|.
        let gain = fv.iter().map(|z| z.re.abs()).fold(1.0, f64::max);
        Self::from_embedding(&out, tol.structure * gain)
    }

    fn hermitian_eigen(&self, tol: &Tolerances) -> Result<(Vec<f64>, CMatrix)> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let scale = self.max_abs().max(1.0);
        let res = self.hermitian_residual();
        if res > tol.identity * scale {
            return Err(Error::NotHyperHermitian(res));
        }
        // Symmetrize away rounding before the solver sees it.
        let sym = (&self.adjoint() + self).scale(0.5).embed();
        let eig = SymmetricEigen::new(sym);
        let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vecs = CMatrix::from_fn(eig.eigenvectors.nrows(), idx.len(), |r, c| {
            eig.eigenvectors[(r, idx[c])]
        });
        Ok((vals, vecs))
    }
}

/// Collapse a sorted doubled spectrum into one value per pair.
fn pair_eigenvalues(vals: &[f64], rel_tol: f64) -> Result<Vec<f64>> {
    if !vals.len().is_multiple_of(2) {
        return Err(Error::PairingFailure(f64::INFINITY));
    }
    vals.chunks(2)
        .map(|p| {
            let gap = (p[0] - p[1]).abs();
            if gap > rel_tol * p[0].abs().max(p[1].abs()).max(1.0) {
                Err(Error::PairingFailure(gap))
            } else {
                Ok(0.5 * (p[0] + p[1]))
            }
        })
        .collect()
}

/// 2-norm condition number from singular values.
pub(crate) fn condition_number(e: &CMatrix) -> f64 {
    let sv = e.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Scalar functions applied through [`QuatMatrix::func_hermitian`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarFn {
    /// `sin(sqrt(x))`
    SinSqrt,
    /// `sin(sqrt(x)) / sqrt(x)`, equal to 1 at 0. Used for `Z` in the coset
    /// parameterization.
    SinSqrtOverSqrt,
    /// `cos(sqrt(x))`
    CosSqrt,
    /// `x^(-1/2)`
    InvSqrt,
    /// `x^(1/2)`
    Sqrt,
}

impl ScalarFn {
    /// Eigenvalues slightly below zero from rounding are clamped for the
    /// square-root based functions.
    pub fn apply(self, x: f64) -> f64 {
        let x = x.max(0.0);
        match self {
            Self::SinSqrt => x.sqrt().sin(),
            Self::SinSqrtOverSqrt => {
                if x < 1e-8 {
                    // series: 1 - x/6 + x^2/120
                    1.0 - x / 6.0 + x * x / 120.0
                } else {
                    x.sqrt().sin() / x.sqrt()
                }
            }
            Self::CosSqrt => x.sqrt().cos(),
            Self::InvSqrt => 1.0 / x.sqrt(),
            Self::Sqrt => x.sqrt(),
        }
    }
}

impl Index<(usize, usize)> for QuatMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QuatMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Panics on nonconforming shapes; use [`QuatMatrix::matmul`] for a
/// checked product.
impl Mul for &QuatMatrix {
    type Output = QuatMatrix;
    fn mul(self, rhs: &QuatMatrix) -> QuatMatrix {
        self.matmul(rhs).expect("nonconforming quaternion matrix product")
    }
}

impl Add for &QuatMatrix {
    type Output = QuatMatrix;
    fn add(self, rhs: &QuatMatrix) -> QuatMatrix {
        self.try_add(rhs).expect("nonconforming quaternion matrix sum")
    }
}

impl Sub for &QuatMatrix {
    type Output = QuatMatrix;
    fn sub(self, rhs: &QuatMatrix) -> QuatMatrix {
        self.try_sub(rhs).expect("nonconforming quaternion matrix difference")
    }
}

impl Neg for &QuatMatrix {
    type Output = QuatMatrix;
    fn neg(self) -> QuatMatrix {
        self.map(|q| -q)
    }
}

impl fmt::Display for QuatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// An element of Sp(n) = U(n, H): a square quaternion matrix with `g* g = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement(QuatMatrix);

impl GroupElement {
    /// Validate `g* g = 1` within `tol`.
    pub fn new(g: QuatMatrix, tol: f64) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::NonSquare {
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        let res = g.unitarity_residual();
        if res > tol {
            return Err(Error::NotGroupElement(res));
        }
        Ok(Self(g))
    }

    pub fn identity(n: usize) -> Self {
        Self(QuatMatrix::identity(n))
    }

    /// `exp(generator)` for a skew-adjoint generator.
    pub fn exp_of(generator: &QuatMatrix, tol: &Tolerances) -> Result<Self> {
        let res = generator.skew_residual();
        if res > tol.identity * generator.max_abs().max(1.0) {
            return Err(Error::NotSkewAdjoint(res));
        }
        Self::new(generator.exp()?, tol.identity.max(1e-10) * 100.0)
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &QuatMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> QuatMatrix {
        self.0
    }

    /// Inverse, which is the adjoint.
    pub fn inverse(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.matmul(&other.0)?))
    }

    /// `(A, B, C, D)` for the partition `j + (n - j)`.
    pub fn blocks(&self, j: usize) -> Result<(QuatMatrix, QuatMatrix, QuatMatrix, QuatMatrix)> {
        let n = self.n();
        if j == 0 || j >= n {
            return Err(Error::PartitionMismatch(format!("cannot split {n} at {j}")));
        }
        let k = n - j;
        Ok((
            self.0.block(0, 0, j, j),
            self.0.block(0, j, j, k),
            self.0.block(j, 0, k, j),
            self.0.block(j, j, k, k),
        ))
    }
}

/// Permutation taking the interleaved embedding order (quaternion index
/// `i`, spinor slot `s`) at position `2i + s` to block order `s n + i`.
/// Under it `1_n (x) j` becomes `j (x) 1_n`.
fn interleave_to_block(n: usize) -> Vec<usize> {
    (0..2 * n).map(|p| (p % 2) * n + p / 2).collect()
}

/// `P M P'` for the interleave-to-block permutation.
pub fn permute_to_block(m: &CMatrix) -> CMatrix {
    assert_eq!(m.nrows(), m.ncols(), "square matrix expected");
    let perm = interleave_to_block(m.nrows() / 2);
    let mut out = CMatrix::zeros(m.nrows(), m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out[(perm[r], perm[c])] = m[(r, c)];
        }
    }
    out
}

/// `j (x) 1_n`, the standard complex symplectic form.
pub fn standard_symplectic_form(n: usize) -> CMatrix {
    let mut j = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = Complex64::new(1.0, 0.0);
        j[(n + i, i)] = Complex64::new(-1.0, 0.0);
    }
    j
}

/// `1_n (x) j`, the block almost-complex structure on the embedding.
pub fn block_almost_complex(n: usize) -> CMatrix {
    let mut j = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(2 * i, 2 * i + 1)] = Complex64::new(1.0, 0.0);
        j[(2 * i + 1, 2 * i)] = Complex64::new(-1.0, 0.0);
    }
    j
}

/// The Sp(2n, C) form of a group element.
#[derive(Debug, Clone)]
pub struct Sp2nC {
    pub matrix: CMatrix,
    /// `max |G' J G - J|`
    pub symplectic_residual: f64,
    /// `max |G* G - 1|`
    pub unitary_residual: f64,
}

pub fn to_sp2nc(g: &GroupElement, tol: &Tolerances) -> Result<Sp2nC> {
    let res = g.matrix().unitarity_residual();
    if res > tol.identity {
        return Err(Error::NotGroupElement(res));
    }
    let n = g.n();
    let m = permute_to_block(&g.matrix().embed());
    let j = standard_symplectic_form(n);
    let sym = &m.transpose() * &j * &m - &j;
    let uni = &m.adjoint() * &m - CMatrix::identity(2 * n, 2 * n);
    Ok(Sp2nC {
        symplectic_residual: max_abs_c(&sym),
        unitary_residual: max_abs_c(&uni),
        matrix: m,
    })
}

/// Block form `[[a, b], [-b*, -a']]` of a permuted skew-adjoint generator.
#[derive(Debug, Clone)]
pub struct Sp2nCAlgebra {
    pub a: CMatrix,
    pub b: CMatrix,
    /// Largest deviation among: lower-left vs `-b*`, lower-right vs `-a'`,
    /// `a* + a`, `b' - b`.
    pub residual: f64,
}

pub fn sp2nc_algebra_blocks(generator: &QuatMatrix) -> Result<Sp2nCAlgebra> {
    if !generator.is_square() {
        return Err(Error::NonSquare {
            rows: generator.rows(),
            cols: generator.cols(),
        });
    }
    let n = generator.rows();
    let m = permute_to_block(&generator.embed());
    let a = m.view((0, 0), (n, n)).into_owned();
    let b = m.view((0, n), (n, n)).into_owned();
    let c = m.view((n, 0), (n, n)).into_owned();
    let d = m.view((n, n), (n, n)).into_owned();
    let residual = [
        max_abs_c(&(&c + b.adjoint())),
        max_abs_c(&(&d + a.transpose())),
        max_abs_c(&(a.adjoint() + &a)),
        max_abs_c(&(b.transpose() - &b)),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(Sp2nCAlgebra { a, b, residual })
}

pub(crate) fn max_abs_c(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
