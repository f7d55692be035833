//! Invariant suites, one per module, with structured reports.
//!
//! Each suite draws from its own ChaCha stream derived from the run seed,
//! so suites are reproducible individually and in `all`. Reports contain no
//! timing data and serialize with a fixed key order.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Tolerances;
use crate::coset::{
    cross_ratio, curvature_trace, haar_equivariance, inversion_element, lft_apply, lft_apply_left, metric_form,
    metric_form_expanded, metric_invariance_check, transport_identities, FiberAction, GrassmannPoint,
};
use crate::dynamics::{
    cocycle_check, geodesic_exp_residual, norm_drift, time_reversal_check, trajectory, transition_split, StateVector,
};
use crate::emfield::{apply_pstar, decompose, parse_field, quaternion_product_identity, random_field};
use crate::error::{Error, Result};
use crate::forms::{dy_wedge, hodge_star4, maurer_cartan_residual};
use crate::liealg::{ladder_check, monomial, verify_commutation_table, DiffOperator, LieAlgebra};
use crate::poly::Exponents;
use crate::quaternion::Quaternion;
use crate::quatmat::{GroupElement, QuatMatrix};
use crate::roots::{embed_check, euler_characteristic, parse_label, particle_label, Color, RootSystem, Weight};
use crate::s4lb::{einstein_check, integrability, lb_radial_residual, RadialSolution, POLE_EXCLUSION};
use crate::{coset, sample};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Coset,
    Forms,
    Liealg,
    S4,
    Em,
    Dynamics,
    Roots,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Coset,
        Suite::Forms,
        Suite::Liealg,
        Suite::S4,
        Suite::Em,
        Suite::Dynamics,
        Suite::Roots,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coset => "coset",
            Suite::Forms => "forms",
            Suite::Liealg => "liealg",
            Suite::S4 => "s4",
            Suite::Em => "em",
            Suite::Dynamics => "dynamics",
            Suite::Roots => "roots",
        }
    }

    /// `"all"` expands to every suite.
    pub fn parse(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Self::ALL.to_vec());
        }
        Self::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|s| vec![*s])
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))
    }

    fn stream(self) -> u64 {
        Self::ALL.iter().position(|s| *s == self).expect("listed") as u64 + 1
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub seed: u64,
    /// Random draws per sampled check; a few checks use a fixed multiple.
    pub trials: usize,
    pub tol: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 500,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst observed value of the checked quantity, when numeric.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub stream: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub seed: u64,
    pub trials: usize,
    pub tolerances: Tolerances,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    /// Worst value over samples must stay below `threshold`; an error in any
    /// sample fails the check.
    fn max_below(&mut self, name: &str, threshold: f64, samples: usize, mut f: impl FnMut(usize) -> Result<f64>) {
        let mut worst = 0.0f64;
        let mut detail = None;
        for i in 0..samples {
            match f(i) {
                Ok(v) if v.is_nan() => {
                    worst = f64::NAN;
                    break;
                }
                Ok(v) => worst = worst.max(v),
                Err(e) => {
                    detail = Some(format!("sample {i}: {e}"));
                    break;
                }
            }
        }
        self.checks.push(Check {
            name: name.into(),
            passed: detail.is_none() && worst < threshold,
            residual: Some(worst),
            threshold: Some(threshold),
            samples: Some(samples),
            detail,
        });
    }

    fn flag(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            residual: None,
            threshold: None,
            samples: None,
            detail,
        });
    }

    fn flag_result(&mut self, name: &str, r: Result<(bool, Option<String>)>) {
        match r {
            Ok((ok, d)) => self.flag(name, ok, d),
            Err(e) => self.flag(name, false, Some(e.to_string())),
        }
    }

    fn finish(self, suite: Suite, seed: u64) -> SuiteReport {
        SuiteReport {
            suite,
            seed,
            stream: suite.stream(),
            passed: self.checks.iter().all(|c| c.passed),
            checks: self.checks,
        }
    }
}

fn suite_rng(seed: u64, suite: Suite) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(suite.stream());
    r
}

pub fn run(suites: &[Suite], cfg: &RunConfig) -> Report {
    let reports: Vec<SuiteReport> = suites.iter().map(|s| run_suite(*s, cfg)).collect();
    Report {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        trials: cfg.trials,
        tolerances: cfg.tol,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed, suite);
    let mut b = Builder::new();
    match suite {
        Suite::Coset => coset_suite(&mut b, &mut rng, cfg),
        Suite::Forms => forms_suite(&mut b, &mut rng, cfg),
        Suite::Liealg => liealg_suite(&mut b, &mut rng, cfg),
        Suite::S4 => s4_suite(&mut b, &mut rng, cfg),
        Suite::Em => em_suite(&mut b, &mut rng, cfg),
        Suite::Dynamics => dynamics_suite(&mut b, &mut rng, cfg),
        Suite::Roots => roots_suite(&mut b),
    }
    b.finish(suite, cfg.seed)
}

fn point(rng: &mut ChaCha8Rng, j: usize, k: usize, scale: f64) -> GrassmannPoint {
    GrassmannPoint::new(sample::matrix(rng, j, k, scale))
}

fn coset_suite(b: &mut Builder, rng: &mut ChaCha8Rng, cfg: &RunConfig) {
    let tol = &cfg.tol;
    let n = cfg.trials;

    b.max_below("quaternion.m2c_homomorphism", 1e-12, 20 * n, |_| {
        let p = sample::quaternion(rng, 1.0);
        let q = sample::quaternion(rng, 1.0);
        Ok((p * q).to_m2c().max_abs_diff(&p.to_m2c().matmul(&q.to_m2c())))
    });
    b.max_below("quatmat.exp_of_skew_is_unitary", 1e-10, n, |_| {
        let g = sample::skew(rng, 3, 1.0).exp()?;
        Ok(g.unitarity_residual())
    });

    let mut group_law = Vec::with_capacity(n);
    b.max_below("coset.lft_forms_agree", 1e-9, n, |_| {
        let g1 = sample::group_element(rng, 4, 0.5);
        let g2 = sample::group_element(rng, 4, 0.5);
        let x = point(rng, 2, 2, 0.5);
        let y = lft_apply(&g1, &x, tol)?;
        let yl = lft_apply_left(&g1, &x, tol)?;
        let yy = lft_apply(&g2, &y, tol)?;
        let direct = lft_apply(&g2.compose(&g1)?, &x, tol)?;
        group_law.push(yy.x.max_abs_diff(&direct.x));
        Ok(y.x.max_abs_diff(&yl.x))
    });
    b.max_below("coset.lft_group_law", 1e-8, group_law.len(), |i| Ok(group_law[i]));

    b.max_below("coset.transport_identities", 1e-9, n, |_| {
        let g = sample::group_element(rng, 4, 0.6);
        let xa = point(rng, 2, 2, 0.5);
        let xb = point(rng, 2, 2, 0.5);
        Ok(transport_identities(&g, &xa, &xb, tol)?.max())
    });

    b.max_below("coset.cross_ratio_invariance", 1e-8, n, |_| {
        let g = sample::group_element(rng, 4, 0.5);
        let p: Vec<GrassmannPoint> = (0..4).map(|_| point(rng, 2, 2, 0.5)).collect();
        let before = cross_ratio(&p[0], &p[1], &p[2], &p[3], tol)?;
        let q = p.iter().map(|x| lft_apply(&g, x, tol)).collect::<Result<Vec<_>>>()?;
        let after = cross_ratio(&q[0], &q[1], &q[2], &q[3], tol)?;
        Ok((after - before).abs() / before.abs().max(1.0))
    });

    b.max_below("coset.metric_forms_agree", 1e-10, n, |_| {
        let x = point(rng, 2, 3, 0.7);
        let dx = sample::matrix(rng, 2, 3, 1.0);
        Ok((metric_form(&x, &dx, tol)? - metric_form_expanded(&x, &dx, tol)?).abs())
    });
    b.max_below("coset.metric_pushforward_invariance", 1e-5, n, |_| {
        let g = sample::group_element(rng, 4, 0.5);
        let x = point(rng, 2, 2, 0.5);
        let dx = sample::matrix(rng, 2, 2, 1.0);
        metric_invariance_check(&g, &x, &dx, tol)
    });
    let inv = inversion_element();
    b.max_below("coset.metric_inversion_invariance", 1e-6, n, |_| {
        let x = GrassmannPoint::new(QuatMatrix::scalar(1, sample::quaternion(rng, 1.0)));
        let dx = sample::matrix(rng, 1, 1, 1.0);
        metric_invariance_check(&inv, &x, &dx, tol)
    });

    for (nn, k) in [(3, 1), (5, 2), (6, 3)] {
        b.max_below(
            &format!("coset.curvature_trace(n={nn},k={k})"),
            1e-9,
            (n / 5).max(1),
            |_| {
                let q = sample::matrix(rng, k, nn, 0.8);
                let (lhs, rhs) = curvature_trace(&q, nn, k, tol)?;
                Ok((lhs - rhs).abs())
            },
        );
    }

    let x = sample::group_element(rng, 2, 0.8);
    let xi = [sample::unit_quaternion(rng), sample::unit_quaternion(rng)];
    let haar_seed = rng.random();
    let alpha = |g: &GroupElement| {
        let m = g.matrix();
        let p = [
            Quaternion::new(0.5, 0.1, -0.3, 0.2),
            Quaternion::new(-0.2, 0.4, 0.1, 0.7),
        ];
        (0..m.rows())
            .map(|i| (0..m.cols()).fold(Quaternion::ZERO, |acc, c| acc + m[(i, c)] * p[c]))
            .collect()
    };
    b.max_below("coset.haar_equivariance_z", 5.0, 1, |_| {
        Ok(haar_equivariance(alpha, FiberAction::Fundamental, &x, &xi, 10 * n, haar_seed)?.max_z_score())
    });
    b.max_below("coset.element_matches_exp", 1e-9, n / 5, |_| {
        let xi = sample::matrix(rng, 2, 3, 0.6);
        let g = coset::coset_element(&xi, tol)?;
        Ok(g.matrix().max_abs_diff(&coset::skew_embedding(&xi).exp()?))
    });
}

fn forms_suite(b: &mut Builder, rng: &mut ChaCha8Rng, cfg: &RunConfig) {
    let w = dy_wedge();
    // pair order 01, 02, 03, 12, 13, 23
    let expected_sd = [
        [-2.0, 0.0, 0.0, 0.0, 0.0, -2.0],
        [0.0, -2.0, 0.0, 0.0, 2.0, 0.0],
        [0.0, 0.0, -2.0, -2.0, 0.0, 0.0],
    ];
    let expected_asd = [
        [2.0, 0.0, 0.0, 0.0, 0.0, -2.0],
        [0.0, 2.0, 0.0, 0.0, 2.0, 0.0],
        [0.0, 0.0, 2.0, -2.0, 0.0, 0.0],
    ];
    let mut pattern_ok = true;
    let mut hodge_ok = true;
    for c in 1..4 {
        let (sd, asd) = w.components(c);
        pattern_ok &= sd == expected_sd[c - 1] && asd == expected_asd[c - 1];
        hodge_ok &= hodge_star4(&sd) == sd && hodge_star4(&asd) == asd.map(|x| -x);
    }
    let (sd0, asd0) = w.components(0);
    pattern_ok &= sd0 == [0.0; 6] && asd0 == [0.0; 6];
    b.flag("forms.dy_wedge_pattern", pattern_ok, None);
    b.flag(
        "forms.hodge_eigenvalues",
        hodge_ok,
        Some("dY^dY* has +1, dY*^dY has -1".into()),
    );
    let star2: bool = (0..6).all(|i| {
        let mut e = [0.0; 6];
        e[i] = 1.0;
        hodge_star4(&hodge_star4(&e)) == e
    });
    b.flag("forms.hodge_involution", star2, None);

    let tol = cfg.tol;
    b.max_below("forms.maurer_cartan", 1e-4, (cfg.trials / 50).max(1), |_| {
        let xi1 = sample::matrix(rng, 1, 2, 0.5);
        let xi2 = sample::matrix(rng, 1, 2, 0.5);
        let g0 = sample::group_element(rng, 3, 1.0);
        let family = |s: f64, u: f64| {
            let c = coset::coset_element(&(&xi1.scale(s) + &xi2.scale(u)), &tol)?;
            g0.compose(&c)
        };
        Ok(maurer_cartan_residual(family, 0.3, -0.2, 1)?.max())
    });
    b.max_below("forms.connection_skew", 1e-6, (cfg.trials / 50).max(1), |_| {
        let gen = sample::skew(rng, 3, 1.0);
        let g0 = sample::group_element(rng, 3, 1.0);
        let path = |t: f64| g0.compose(&GroupElement::exp_of(&gen.scale(t), &tol)?);
        Ok(crate::forms::connection_blocks(path, 0.4, 1)?.skew_residual())
    });
}

fn liealg_suite(b: &mut Builder, rng: &mut ChaCha8Rng, _cfg: &RunConfig) {
    for (k, n) in [(1, 2), (1, 3)] {
        match verify_commutation_table(k, n, 3) {
            Ok(rep) => {
                for r in rep.relations {
                    let detail = format!(
                        "{} combinations, symbolic {}, monomial {}, engine {}",
                        r.combinations, r.symbolic_failures, r.monomial_failures, r.engine_disagreements
                    );
                    b.flag(&format!("liealg(k={k},n={n}) {}", r.relation), r.passed, Some(detail));
                }
            }
            Err(e) => b.flag(&format!("liealg(k={k},n={n}) table"), false, Some(e.to_string())),
        }
    }

    b.flag_result(
        "liealg.ladder_random_monomials",
        (|| {
            let alg = LieAlgebra::new(1, 3)?;
            let mut bad = 0;
            let mut steps = 0;
            for _ in 0..20 {
                let exps: Exponents = (0..alg.nvars()).map(|_| rng.random_range(0..2)).collect();
                let f = monomial(&alg, exps)?;
                let rep = ladder_check(&alg, &f, rng.random_range(0..alg.rows), rng.random_range(0..alg.cols))?;
                bad += rep.steps.iter().filter(|s| !s.holds).count();
                steps += rep.steps.len();
            }
            Ok((bad == 0, Some(format!("{steps} ladder steps, {bad} failures"))))
        })(),
    );

    b.flag_result(
        "liealg.laplace_beltrami",
        (|| {
            let alg = LieAlgebra::new(1, 2)?;
            let lap = alg.laplace_beltrami();
            let g = alg.generators();
            let kills_constants = lap.apply(&crate::liealg::PolyFunction::one(alg.nvars())).is_zero();
            let mut central = true;
            for row in g.h.iter().chain(&g.big_h).chain(&g.p).chain(&g.p_bar) {
                for op in row {
                    central &= DiffOperator::commutator(&lap, op)?.is_zero();
                }
            }
            let conj = alg.conjugate(&lap) == lap;
            Ok((
                kills_constants && central && conj,
                Some(format!(
                    "annihilates 1: {kills_constants}, central: {central}, conjugation invariant: {conj}"
                )),
            ))
        })(),
    );
}

fn s4_suite(b: &mut Builder, rng: &mut ChaCha8Rng, _cfg: &RunConfig) {
    let interior = |i: usize| POLE_EXCLUSION + 1e-3 + (PI - 2.0 * POLE_EXCLUSION - 2e-3) * i as f64 / 49.0;
    let f0 = RadialSolution::f0();
    b.max_below("s4.f0_residual", 1e-10, 50, |i| {
        Ok(lb_radial_residual(&f0, interior(i))?.abs())
    });
    b.max_below("s4.f0_equator", 1e-15, 1, |_| Ok(f0.value(PI / 2.0).abs()));
    for (l2, n) in [(2, 0), (3, 0), (4, 0), (4, 1)] {
        let name = format!("s4.g_ell_residual(l={},N={n})", l2 as f64 / 2.0);
        match RadialSolution::g_ell(l2, n) {
            Ok(g) => b.max_below(&name, 1e-8, 50, |i| Ok(lb_radial_residual(&g, interior(i))?.abs())),
            Err(e) => b.flag(&name, false, Some(e.to_string())),
        }
    }
    b.flag_result(
        "s4.theta_formula",
        (|| {
            let mut ok = true;
            for (l2, n) in [(2, 0), (3, 0), (4, 0), (4, 1), (6, 2)] {
                let g = RadialSolution::g_ell(l2, n)?;
                let l = l2 as f64 / 2.0;
                let t2 = (l + 1.0 - n as f64) * (l - 0.5 - n as f64);
                ok &= g.theta_sq == t2 && g.theta() == (t2 >= 0.0).then(|| t2.sqrt());
            }
            ok &= RadialSolution::g_ell(2, 0)?.theta() == Some(1.0);
            Ok((ok, None))
        })(),
    );
    b.flag_result(
        "s4.integrability_flags",
        (|| {
            let mut detail = Vec::new();
            let mut ok = integrability(&f0).integrable;
            detail.push(format!("f0: {}", integrability(&f0).integrable));
            for (l2, n) in [(0, 0), (2, 0), (3, 0), (4, 0), (4, 1)] {
                let flag = integrability(&RadialSolution::g_ell(l2, n)?).integrable;
                let expect = l2 <= 1;
                ok &= flag == expect;
                detail.push(format!("l={} N={n}: {flag}", l2 as f64 / 2.0));
            }
            Ok((ok, Some(detail.join(", "))))
        })(),
    );
    let pts: Vec<[f64; 4]> = (0..20)
        .map(|_| std::array::from_fn(|_| rng.random_range(-1.5..1.5)))
        .collect();
    match einstein_check(&pts) {
        Ok(rep) => {
            b.max_below("s4.einstein_ratio_spread", 1e-3, 1, |_| Ok(rep.relative_spread));
            b.max_below("s4.einstein_lambda_minus_3", 1e-3, 1, |_| Ok((rep.lambda - 3.0).abs()));
            b.max_below("s4.einstein_off_pattern", 1e-5, 1, |_| Ok(rep.max_off_pattern));
        }
        Err(e) => b.flag("s4.einstein", false, Some(e.to_string())),
    }
}

fn em_suite(b: &mut Builder, rng: &mut ChaCha8Rng, cfg: &RunConfig) {
    let samples = (cfg.trials / 5).max(1);
    let mut bad = 0;
    for _ in 0..samples {
        let f = random_field(rng, 3, 6);
        bad += (!decompose(&f).consistent) as usize;
    }
    b.flag(
        "em.decomposition_identity",
        bad == 0,
        Some(format!("{samples} random fields of degree <= 3, {bad} mismatches")),
    );
    b.flag_result(
        "em.examples",
        (|| {
            let x1 = apply_pstar(&parse_field(&["A1=x1"])?);
            let ok1 = x1 == parse_field(&["A0=-1"])?;
            let x3 = apply_pstar(&parse_field(&["A0=x3"])?);
            let ok2 = x3 == parse_field(&["A3=1"])?;
            let d = decompose(&parse_field(&["A1=-x2; A2=x1"])?);
            let ok3 = d.b[2] == crate::poly::Poly::constant(4, 2.into()) && d.e.iter().all(|p| p.is_zero());
            Ok((ok1 && ok2 && ok3, None))
        })(),
    );
    b.max_below("em.quaternion_product_identity", 1e-13, 20 * cfg.trials, |_| {
        Ok(quaternion_product_identity(
            sample::quaternion(rng, 1.0),
            sample::quaternion(rng, 1.0),
        ))
    });
}

fn dynamics_suite(b: &mut Builder, rng: &mut ChaCha8Rng, cfg: &RunConfig) {
    let tol = &cfg.tol;
    let m = (cfg.trials / 50).max(1);
    b.max_below("dynamics.norm_conservation", 1e-9, m, |_| {
        let g = sample::skew(rng, 3, 1.0);
        let psi = StateVector::new((0..3).map(|_| sample::quaternion(rng, 1.0)).collect(), 1)?;
        Ok(norm_drift(&trajectory(&g, &psi, 10.0, 100, tol)?))
    });
    b.max_below("dynamics.cocycle", 1e-9, m, |_| {
        let g = sample::skew(rng, 3, 1.0);
        cocycle_check(&g, 2.7, 1.3, tol)
    });
    b.max_below("dynamics.time_reversal", 1e-11, m, |i| {
        let g = sample::skew(rng, 3, 1.0);
        time_reversal_check(&g, [0.1, 1.0, 10.0][i % 3], tol)
    });
    b.max_below("dynamics.geodesic_block_exp", 1e-10, 100, |_| {
        let u = sample::unit_quaternion(rng);
        geodesic_exp_residual(u, 1.0, rng.random_range(-10.0..10.0))
    });
    b.max_below("dynamics.transition_split_sum", 1e-12, m, |_| {
        let g = sample::skew(rng, 4, 1.0);
        let psi = StateVector::new((0..4).map(|_| sample::quaternion(rng, 1.0)).collect(), 2)?;
        let s = transition_split(&g, &psi)?;
        let direct = g.matmul(&psi.as_column())?;
        Ok(s.sum()
            .iter()
            .zip(direct.entries())
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max))
    });
}

fn roots_suite(b: &mut Builder) {
    b.flag_result(
        "roots.counts",
        (|| {
            let mut ok = true;
            for n in 1..=6 {
                let r = RootSystem::generate(n)?;
                ok &= r.len() == 2 * n * n && r.closed_under_negation() && !r.has_duplicates();
            }
            Ok((ok, Some("2n^2 roots for n = 1..6".into())))
        })(),
    );
    b.flag_result(
        "roots.embeddings",
        (|| {
            let mut ok = true;
            for n in 2..=6 {
                for m in 1..n {
                    ok &= embed_check(m, n)?;
                }
            }
            ok &= !RootSystem::generate(3)?.contains(&[1, 1, 1]);
            Ok((ok, None))
        })(),
    );
    b.flag_result(
        "roots.labels",
        (|| {
            let ud = particle_label(&[Weight::new(vec![1, 1], None)])?;
            let ubar_d = particle_label(&[Weight::new(vec![-1, 1], None)])?;
            let lepton = particle_label(&[Weight::single(1, 2, None)])?;
            let anti_lepton = particle_label(&[Weight::single(2, -2, None)])?;
            let proton = particle_label(&[
                Weight::single(1, 1, Some(Color::I)),
                Weight::single(1, 1, Some(Color::J)),
                Weight::single(2, 1, Some(Color::K)),
            ])?;
            let classes = [&ud, &ubar_d, &lepton, &anti_lepton, &proton].map(|l| l.class.to_string());
            let ok = ud.letters == "ud"
                && ubar_d.letters == "ūd"
                && proton.letters == "uud"
                && classes == ["meson", "meson", "lepton", "lepton", "baryon"];
            let mut back = parse_label(&proton.text)?;
            let mut orig = proton.constituents.clone();
            back.sort();
            orig.sort();
            Ok((
                ok && back == orig,
                Some(format!(
                    "{} {} {} {} {}",
                    ud.letters, ubar_d.letters, lepton.text, anti_lepton.text, proton.text
                )),
            ))
        })(),
    );
    b.flag_result(
        "roots.euler_characteristic",
        (|| {
            let ok = [2, 4, 8, 12]
                .iter()
                .map(|d| euler_characteristic(*d))
                .collect::<Result<Vec<_>>>()?
                == [2, 2, 2, 2]
                && euler_characteristic(3).is_err();
            Ok((ok, None))
        })(),
    );
}
