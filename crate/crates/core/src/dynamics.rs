//! Evolution along one-parameter subgroups, `Psi(t) = exp(t g) Psi(0)`.

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::quatmat::{GroupElement, QuatMatrix};

/// A quaternion column split as `(system | surroundings)` after the first
/// `split` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    components: Vec<Quaternion>,
    split: usize,
}

impl StateVector {
    pub fn new(components: Vec<Quaternion>, split: usize) -> Result<Self> {
        if split > components.len() {
            return Err(Error::PartitionMismatch(format!(
                "split {split} beyond {} components",
                components.len()
            )));
        }
        Ok(Self { components, split })
    }

    pub fn components(&self) -> &[Quaternion] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn system(&self) -> &[Quaternion] {
        &self.components[..self.split]
    }

    pub fn surroundings(&self) -> &[Quaternion] {
        &self.components[self.split..]
    }

    pub fn norm_sq(&self) -> f64 {
        self.components.iter().map(|q| q.norm_sq()).sum()
    }

    pub fn system_norm_sq(&self) -> f64 {
        self.system().iter().map(|q| q.norm_sq()).sum()
    }

    pub fn surroundings_norm_sq(&self) -> f64 {
        self.surroundings().iter().map(|q| q.norm_sq()).sum()
    }

    pub fn as_column(&self) -> QuatMatrix {
        QuatMatrix::column(&self.components)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }
}

fn check_skew(generator: &QuatMatrix, tol: &Tolerances) -> Result<()> {
    if !generator.is_square() {
        return Err(Error::NonSquare {
            rows: generator.rows(),
            cols: generator.cols(),
        });
    }
    let res = generator.skew_residual();
    if res > tol.identity * generator.max_abs().max(1.0) {
        return Err(Error::NotSkewAdjoint(res));
    }
    Ok(())
}

fn check_len(generator: &QuatMatrix, psi: &StateVector) -> Result<()> {
    if generator.cols() != psi.len() {
        return Err(Error::DimensionMismatch(format!(
            "generator is {}x{}, state has {} components",
            generator.rows(),
            generator.cols(),
            psi.len()
        )));
    }
    Ok(())
}

/// `exp(t g) Psi(0)`.
pub fn evolve(generator: &QuatMatrix, psi0: &StateVector, t: f64, tol: &Tolerances) -> Result<StateVector> {
    check_skew(generator, tol)?;
    check_len(generator, psi0)?;
    let g = generator.scale(t).exp()?;
    let col = g.matmul(&psi0.as_column())?;
    StateVector::new(col.entries().to_vec(), psi0.split)
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub norm_sq: f64,
    pub system_norm_sq: f64,
    pub surroundings_norm_sq: f64,
    /// `|p V|` and `|p* v|` at this instant.
    pub exchange_in: f64,
    pub exchange_out: f64,
}

/// Samples at `t_k = k t_end / steps`, `k = 0..=steps`.
pub fn trajectory(
    generator: &QuatMatrix,
    psi0: &StateVector,
    t_end: f64,
    steps: usize,
    tol: &Tolerances,
) -> Result<Vec<TrajectoryPoint>> {
    let steps = steps.max(1);
    (0..=steps)
        .map(|k| {
            let t = t_end * k as f64 / steps as f64;
            let psi = evolve(generator, psi0, t, tol)?;
            let split = transition_split(generator, &psi)?;
            let mag = |v: &[Quaternion]| v.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt();
            Ok(TrajectoryPoint {
                t,
                norm_sq: psi.norm_sq(),
                system_norm_sq: psi.system_norm_sq(),
                surroundings_norm_sq: psi.surroundings_norm_sq(),
                exchange_in: mag(&split.exchange_in),
                exchange_out: mag(&split.exchange_out),
            })
        })
        .collect()
}

/// Largest `|norm_sq(t) - norm_sq(0)|` along a trajectory.
pub fn norm_drift(points: &[TrajectoryPoint]) -> f64 {
    let n0 = points.first().map_or(0.0, |p| p.norm_sq);
    points.iter().map(|p| (p.norm_sq - n0).abs()).fold(0.0, f64::max)
}

/// `max |exp(t g) - exp((t - t0) g) exp(t0 g)|`.
pub fn cocycle_check(generator: &QuatMatrix, t: f64, t0: f64, tol: &Tolerances) -> Result<f64> {
    check_skew(generator, tol)?;
    let full = generator.scale(t).exp()?;
    let split = generator.scale(t - t0).exp()?.matmul(&generator.scale(t0).exp()?)?;
    Ok(full.max_abs_diff(&split))
}

/// `max |exp(t g) - exp(-t g*)|`.
pub fn time_reversal_check(generator: &QuatMatrix, t: f64, tol: &Tolerances) -> Result<f64> {
    check_skew(generator, tol)?;
    let a = generator.scale(t).exp()?;
    let b = generator.adjoint().scale(-t).exp()?;
    Ok(a.max_abs_diff(&b))
}

/// `[[0, u], [-u*, 0]]`.
pub fn geodesic_generator(u: Quaternion) -> QuatMatrix {
    QuatMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 1) => u,
        (1, 0) => -u.conj(),
        _ => Quaternion::ZERO,
    })
}

/// `[[cos wt, sin wt u], [-sin wt u*, cos wt]]` for unit `u`.
pub fn geodesic_block(u: Quaternion, omega: f64, t: f64) -> Result<GroupElement> {
    let n2 = u.norm_sq();
    if (n2 - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnitQuaternion(n2));
    }
    let (s, c) = (omega * t).sin_cos();
    let m = QuatMatrix::from_fn(2, 2, |r, col| match (r, col) {
        (0, 1) => u.scale(s),
        (1, 0) => -u.conj().scale(s),
        _ => Quaternion::real(c),
    });
    GroupElement::new(m, 1e-12)
}

/// `max |geodesic_block - exp(wt [[0, u], [-u*, 0]])|`.
pub fn geodesic_exp_residual(u: Quaternion, omega: f64, t: f64) -> Result<f64> {
    let block = geodesic_block(u, omega, t)?;
    let e = geodesic_generator(u).scale(omega * t).exp()?;
    Ok(block.matrix().max_abs_diff(&e))
}

/// `g Psi` split by the partition `g = [[h_v, -p], [p*, h_V]]`, each piece
/// padded to full length.
#[derive(Debug, Clone, Serialize)]
pub struct TransitionSplit {
    /// `h_v v`
    pub system_rotation: Vec<Quaternion>,
    /// `h_V V`
    pub surroundings_rotation: Vec<Quaternion>,
    /// `-p V`, landing in the system block.
    pub exchange_in: Vec<Quaternion>,
    /// `p* v`, landing in the surroundings block.
    pub exchange_out: Vec<Quaternion>,
}

impl TransitionSplit {
    pub fn sum(&self) -> Vec<Quaternion> {
        (0..self.system_rotation.len())
            .map(|i| {
                self.system_rotation[i] + self.surroundings_rotation[i] + self.exchange_in[i] + self.exchange_out[i]
            })
            .collect()
    }
}

pub fn transition_split(generator: &QuatMatrix, psi: &StateVector) -> Result<TransitionSplit> {
    let n = psi.len();
    let k = psi.split;
    if generator.shape() != (n, n) || k == 0 || k == n {
        return Err(Error::PartitionMismatch(format!(
            "generator {}x{} against state {n} split at {k}",
            generator.rows(),
            generator.cols()
        )));
    }
    let v = QuatMatrix::column(psi.system());
    let big_v = QuatMatrix::column(psi.surroundings());
    let hv = generator.block(0, 0, k, k);
    let b = generator.block(0, k, k, n - k);
    let c = generator.block(k, 0, n - k, k);
    let hbig = generator.block(k, k, n - k, n - k);
    let zeros = |m: usize| vec![Quaternion::ZERO; m];
    let top = |m: QuatMatrix| [m.entries().to_vec(), zeros(n - k)].concat();
    let bottom = |m: QuatMatrix| [zeros(k), m.entries().to_vec()].concat();
    Ok(TransitionSplit {
        system_rotation: top(hv.matmul(&v)?),
        surroundings_rotation: bottom(hbig.matmul(&big_v)?),
        exchange_in: top(b.matmul(&big_v)?),
        exchange_out: bottom(c.matmul(&v)?),
    })
}
