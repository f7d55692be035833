//! Geometry of S^4 and the radial Laplace-Beltrami equation.
//!
//! The inhomogeneous chart is the real projective one, `y = x / x_0` for a
//! point `x` of the unit sphere in R^5, with metric
//! `(1 + y y')^-1 dy (1 + y' y)^-1 dy'`. Its Ricci tensor is `3 g`.
//! The angular chart `4 dw^2 + sin^2 w [da^2 + db^2 + dc^2 + 2 cos a db dc]`
//! is the round sphere of radius 2, Ricci `3/4 g`.

use std::f64::consts::PI;

use nalgebra::{Matrix4, Vector4};
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Central difference step for Christoffel symbols and their derivatives.
pub const EINSTEIN_STEP: f64 = 1e-4;

/// Radial residual checks exclude `w` within this distance of a pole.
pub const POLE_EXCLUSION: f64 = 0.05;

pub type Point4 = [f64; 4];

/// Metric of the inhomogeneous chart.
pub fn fs_metric(y: &Point4) -> Matrix4<f64> {
    let v = Vector4::from_column_slice(y);
    let r = 1.0 + v.norm_squared();
    (Matrix4::identity() - v * v.transpose() / r) / r
}

/// `x -> y = x_{1..4} / x_0` for a point of the unit sphere with `x_0 != 0`,
/// returning `y` and `1 / x_0^2`.
pub fn inhomogeneous(x: &[f64; 5]) -> Result<(Point4, f64)> {
    if x[0].abs() < 1e-12 {
        return Err(Error::ChartBoundary(format!(
            "x0 = {} on the hyperplane at infinity",
            x[0]
        )));
    }
    Ok((
        [x[1] / x[0], x[2] / x[0], x[3] / x[0], x[4] / x[0]],
        1.0 / (x[0] * x[0]),
    ))
}

fn check_angular(w: f64, a: f64) -> Result<()> {
    if !(w > 0.0 && w < PI && a > 0.0 && a < PI) {
        return Err(Error::ChartBoundary(format!("w = {w}, a = {a} outside (0, pi)")));
    }
    Ok(())
}

/// Metric in `(w, a, b, c)`; depends only on `w` and `a`.
pub fn angular_metric(w: f64, a: f64) -> Result<Matrix4<f64>> {
    check_angular(w, a)?;
    let s2 = w.sin().powi(2);
    let mut g = Matrix4::zeros();
    g[(0, 0)] = 4.0;
    g[(1, 1)] = s2;
    g[(2, 2)] = s2;
    g[(3, 3)] = s2;
    g[(2, 3)] = s2 * a.cos();
    g[(3, 2)] = s2 * a.cos();
    Ok(g)
}

fn shifted(x: &Point4, i: usize, h: f64) -> Point4 {
    let mut y = *x;
    y[i] += h;
    y
}

/// `Gamma^k_{ij}` indexed `[k][i][j]`, from central differences of `g`.
pub fn christoffel<F>(metric: &F, x: &Point4, h: f64) -> Result<[[[f64; 4]; 4]; 4]>
where
    F: Fn(&Point4) -> Result<Matrix4<f64>>,
{
    let g = metric(x)?;
    let ginv = g
        .try_inverse()
        .ok_or_else(|| Error::ChartBoundary("degenerate metric".into()))?;
    let mut dg = [Matrix4::zeros(); 4];
    for (l, d) in dg.iter_mut().enumerate() {
        *d = (metric(&shifted(x, l, h))? - metric(&shifted(x, l, -h))?) / (2.0 * h);
    }
    let mut gam = [[[0.0; 4]; 4]; 4];
    for (k, gk) in gam.iter_mut().enumerate() {
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for l in 0..4 {
                    s += ginv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                gk[i][j] = 0.5 * s;
            }
        }
    }
    Ok(gam)
}

/// `R_ij = d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik`.
pub fn ricci<F>(metric: &F, x: &Point4, h: f64) -> Result<Matrix4<f64>>
where
    F: Fn(&Point4) -> Result<Matrix4<f64>>,
{
    let gam = christoffel(metric, x, h)?;
    let mut dgam = [[[[0.0; 4]; 4]; 4]; 4]; // [m][k][i][j] = d_m G^k_ij
    for (m, dm) in dgam.iter_mut().enumerate() {
        let p = christoffel(metric, &shifted(x, m, h), h)?;
        let q = christoffel(metric, &shifted(x, m, -h), h)?;
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    dm[k][i][j] = (p[k][i][j] - q[k][i][j]) / (2.0 * h);
                }
            }
        }
    }
    let mut r = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let mut s = 0.0;
            for k in 0..4 {
                s += dgam[k][k][i][j] - dgam[j][k][i][k];
                for l in 0..4 {
                    s += gam[k][k][l] * gam[l][i][j] - gam[k][j][l] * gam[l][i][k];
                }
            }
            r[(i, j)] = s;
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, Serialize)]
pub struct PointRatios {
    pub point: Point4,
    /// `Ricci_ij / g_ij` over components where `g` is not negligible.
    pub ratios: Vec<f64>,
    /// Largest `|Ricci_ij|` where `g_ij` is negligible.
    pub off_pattern: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EinsteinReport {
    pub lambda: f64,
    /// `(max - min) / |mean|` over every ratio at every point.
    pub relative_spread: f64,
    pub max_off_pattern: f64,
    pub points: Vec<PointRatios>,
}

fn einstein_with<F>(metric: F, points: &[Point4]) -> Result<EinsteinReport>
where
    F: Fn(&Point4) -> Result<Matrix4<f64>>,
{
    let mut out = Vec::with_capacity(points.len());
    let mut all = Vec::new();
    for x in points {
        let g = metric(x)?;
        let r = ricci(&metric, x, EINSTEIN_STEP)?;
        let gmax = g.amax();
        let mut ratios = Vec::new();
        let mut off = 0.0f64;
        for i in 0..4 {
            for j in i..4 {
                if g[(i, j)].abs() > 1e-3 * gmax {
                    ratios.push(r[(i, j)] / g[(i, j)]);
                } else {
                    off = off.max(r[(i, j)].abs());
                }
            }
        }
        all.extend_from_slice(&ratios);
        out.push(PointRatios {
            point: *x,
            ratios,
            off_pattern: off,
        });
    }
    if all.is_empty() {
        return Err(Error::DimensionMismatch("no sample points".into()));
    }
    let mean = all.iter().sum::<f64>() / all.len() as f64;
    let max = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = all.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(EinsteinReport {
        lambda: mean,
        relative_spread: (max - min) / mean.abs(),
        max_off_pattern: out.iter().map(|p| p.off_pattern).fold(0.0, f64::max),
        points: out,
    })
}

/// Ricci/metric ratios for the inhomogeneous chart.
pub fn einstein_check(points: &[Point4]) -> Result<EinsteinReport> {
    if points.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::ChartBoundary("non-finite coordinate".into()));
    }
    einstein_with(|y| Ok(fs_metric(y)), points)
}

/// Same check in the angular chart, points `(w, a, b, c)`.
pub fn einstein_check_angular(points: &[Point4]) -> Result<EinsteinReport> {
    for p in points {
        check_angular(p[0] - 2.0 * EINSTEIN_STEP, p[1] - 2.0 * EINSTEIN_STEP)?;
        check_angular(p[0] + 2.0 * EINSTEIN_STEP, p[1] + 2.0 * EINSTEIN_STEP)?;
    }
    einstein_with(|x| angular_metric(x[0], x[1]), points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RadialKind {
    /// `-cot w / sin w + ln tan(w/2)`, the static source at the pole.
    F0,
    /// `sin^-(2l+2) w * sum_n a_n sin^2n w`.
    GEll,
}

#[derive(Debug, Clone, Serialize)]
pub struct RadialSolution {
    pub kind: RadialKind,
    /// `2 l`, so half-integers stay exact.
    pub two_ell: u32,
    pub n: u32,
    pub coeffs: Vec<f64>,
    /// `(l + 1 - N)(l - 1/2 - N)`.
    pub theta_sq: f64,
}

/// How the time dependence enters the radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThetaCoupling {
    /// `+ 4 theta^2 f`: the wave operator built from the metric `4 dw^2 + ...`.
    Metric,
    /// `+ theta^2 f` as written alongside the scaled operator.
    Literal,
}

fn termination_ok(two_ell: u32, n: u32) -> bool {
    if two_ell.is_multiple_of(2) {
        // N < l + 1
        2 * n < two_ell + 2
    } else {
        // N < l - 1/2
        2 * n + 1 < two_ell
    }
}

/// `1 / Gamma(x)`, zero at the poles.
fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x.fract() == 0.0 {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

fn factorial(n: u32) -> f64 {
    gamma(n as f64 + 1.0)
}

/// `a_n = (2l - n)! (N - 2l - 3/2 + n)! / (n! (N - n)!)` for `n = 0..=N`,
/// non-integer factorials read as `Gamma(x + 1)`.
pub fn gl_coefficients(two_ell: u32, n: u32) -> Result<Vec<f64>> {
    if !termination_ok(two_ell, n) {
        return Err(Error::TerminationViolated {
            ell: two_ell as f64 / 2.0,
            n,
        });
    }
    let ell2 = two_ell as f64;
    Ok((0..=n)
        .map(|m| {
            let a = ell2 - m as f64 + 1.0;
            let b = n as f64 - ell2 - 0.5 + m as f64;
            let num = recip_gamma(a) * recip_gamma(b);
            if num == 0.0 {
                0.0
            } else {
                1.0 / (num * factorial(m) * factorial(n - m))
            }
        })
        .collect())
}

impl RadialSolution {
    pub fn f0() -> Self {
        Self {
            kind: RadialKind::F0,
            two_ell: 0,
            n: 0,
            coeffs: Vec::new(),
            theta_sq: 0.0,
        }
    }

    pub fn g_ell(two_ell: u32, n: u32) -> Result<Self> {
        let coeffs = gl_coefficients(two_ell, n)?;
        let l = two_ell as f64 / 2.0;
        let nf = n as f64;
        Ok(Self {
            kind: RadialKind::GEll,
            two_ell,
            n,
            coeffs,
            theta_sq: (l + 1.0 - nf) * (l - 0.5 - nf),
        })
    }

    pub fn ell(&self) -> f64 {
        self.two_ell as f64 / 2.0
    }

    /// `None` when `theta^2 < 0`.
    pub fn theta(&self) -> Option<f64> {
        (self.theta_sq >= 0.0).then(|| self.theta_sq.sqrt())
    }

    /// `(f, f', f'')` from the closed form.
    pub fn eval(&self, w: f64) -> (f64, f64, f64) {
        let (s, c) = w.sin_cos();
        match self.kind {
            RadialKind::F0 => {
                let f = -c / (s * s) + (w / 2.0).tan().ln();
                let f1 = 2.0 / s + 2.0 * c * c / s.powi(3);
                let f2 = -6.0 * c / (s * s) - 6.0 * c.powi(3) / s.powi(4);
                (f, f1, f2)
            }
            RadialKind::GEll => {
                let mut out = (0.0, 0.0, 0.0);
                for (k, a) in self.coeffs.iter().enumerate() {
                    let m = 2.0 * k as f64 - self.two_ell as f64 - 2.0;
                    let sm = s.powf(m);
                    out.0 += a * sm;
                    out.1 += a * m * sm / s * c;
                    out.2 += a * (m * (m - 1.0) * sm / (s * s) * c * c - m * sm);
                }
                out
            }
        }
    }

    pub fn value(&self, w: f64) -> f64 {
        self.eval(w).0
    }
}

/// `f'' + 3 cot w f' - [2l(2l+2) / sin^2 w] f + k theta^2 f`, divided by the
/// largest term magnitude when that exceeds 1.
pub fn lb_radial_residual_with(f: &RadialSolution, w: f64, coupling: ThetaCoupling) -> Result<f64> {
    if !(w > POLE_EXCLUSION && w < PI - POLE_EXCLUSION) {
        return Err(Error::TooCloseToPole(w));
    }
    let (v, d1, d2) = f.eval(w);
    let (s, c) = w.sin_cos();
    let l2 = f.two_ell as f64;
    let k = match coupling {
        ThetaCoupling::Metric => 4.0,
        ThetaCoupling::Literal => 1.0,
    };
    let terms = [d2, 3.0 * c / s * d1, -l2 * (l2 + 2.0) / (s * s) * v, k * f.theta_sq * v];
    let scale = terms.iter().fold(1.0f64, |m, t| m.max(t.abs()));
    Ok(terms.iter().sum::<f64>() / scale)
}

pub fn lb_radial_residual(f: &RadialSolution, w: f64) -> Result<f64> {
    lb_radial_residual_with(f, w, ThetaCoupling::Metric)
}

#[derive(Debug, Clone, Serialize)]
pub struct Integrability {
    pub epsilons: Vec<f64>,
    /// `int |f| sin^3 w dw` over `(eps, pi - eps)`.
    pub integrals: Vec<f64>,
    pub integrable: bool,
}

/// Composite Simpson in `u = ln(distance to the pole)` on both ends.
fn weighted_integral(f: &RadialSolution, eps: f64) -> f64 {
    let weight = |w: f64| f.value(w).abs() * w.sin().powi(3);
    let simpson = |g: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize| {
        let h = (b - a) / n as f64;
        let mut s = g(a) + g(b);
        for i in 1..n {
            s += g(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    };
    let mid = PI / 4.0;
    let n = 400 * ((mid / eps).log10().ceil() as usize).max(1);
    let left = simpson(&|u: f64| weight(u.exp()) * u.exp(), eps.ln(), mid.ln(), n);
    let right = simpson(&|u: f64| weight(PI - u.exp()) * u.exp(), eps.ln(), mid.ln(), n);
    let centre = simpson(&weight, mid, PI - mid, 2000);
    left + centre + right
}

/// Convergence of the volume-weighted integral of `|f|` as the cut-off
/// around the poles shrinks through `1e-1 .. 1e-8`.
pub fn integrability(f: &RadialSolution) -> Integrability {
    let epsilons: Vec<f64> = (1..=8).map(|k| 10f64.powi(-k)).collect();
    let integrals: Vec<f64> = epsilons.iter().map(|&e| weighted_integral(f, e)).collect();
    let n = integrals.len();
    // a convergent tail is negligible by the last decade; a divergent one
    // adds at least a log-sized amount per decade
    let last = integrals[n - 1] - integrals[n - 2];
    let integrable = last.abs() <= 1e-6 * (1.0 + integrals[n - 1].abs());
    Integrability {
        epsilons,
        integrals,
        integrable,
    }
}
