//! Property tests for the structural invariants.

use proptest::prelude::*;
use quatflag::coset::{curvature_trace, lft_apply, GrassmannPoint};
use quatflag::dynamics::{evolve, transition_split, StateVector};
use quatflag::emfield::{apply_pstar, decompose, random_field};
use quatflag::liealg::{DiffOperator, GeneratorKind, LieAlgebra};
use quatflag::roots::{parse_label, particle_label, Color, RootSystem, Weight};
use quatflag::s4lb::{lb_radial_residual, RadialSolution};
use quatflag::{sample, QuatMatrix, Quaternion, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from_array)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative(p in quat(), q in quat()) {
        let lhs = (p * q).norm();
        prop_assert!((lhs - p.norm() * q.norm()).abs() <= 1e-12 * (1.0 + lhs));
    }

    #[test]
    fn conjugation_reverses_products(p in quat(), q in quat()) {
        let d = (p * q).conj().max_abs_diff(q.conj() * p.conj());
        prop_assert!(d <= 1e-12 * (1.0 + p.norm() * q.norm()));
    }

    #[test]
    fn m2c_is_a_homomorphism_with_norm_determinant(p in quat(), q in quat()) {
        let scale = 1.0 + p.norm() * q.norm();
        prop_assert!((p * q).to_m2c().max_abs_diff(&p.to_m2c().matmul(&q.to_m2c())) <= 1e-12 * scale);
        let det = p.to_m2c().det();
        prop_assert!((det.re - p.norm_sq()).abs() <= 1e-12 * (1.0 + p.norm_sq()));
        prop_assert!(det.im.abs() <= 1e-12 * (1.0 + p.norm_sq()));
    }

    #[test]
    fn adjoint_reverses_matrix_products(seed: u64, n in 1usize..4, m in 1usize..4) {
        let mut r = rng(seed);
        let a = sample::matrix(&mut r, n, m, 1.0);
        let b = sample::matrix(&mut r, m, n, 1.0);
        let lhs = a.matmul(&b).unwrap().adjoint();
        let rhs = b.adjoint().matmul(&a.adjoint()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn embedding_is_multiplicative(seed: u64, n in 1usize..4) {
        let mut r = rng(seed);
        let a = sample::matrix(&mut r, n, n, 1.0);
        let b = sample::matrix(&mut r, n, n, 1.0);
        let lhs = a.matmul(&b).unwrap().embed();
        let rhs = a.embed() * b.embed();
        prop_assert!((lhs - rhs).camax() < 1e-12);
    }

    #[test]
    fn exp_of_skew_is_unitary_with_inverse_exp(seed: u64, n in 1usize..5, scale in 0.1f64..3.0) {
        let x = sample::skew(&mut rng(seed), n, scale);
        let g = x.exp().unwrap();
        prop_assert!(g.unitarity_residual() < 1e-10);
        let back = g.matmul(&x.scale(-1.0).exp().unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&QuatMatrix::identity(n)) < 1e-10);
    }

    #[test]
    fn lft_respects_composition(seed: u64, j in 1usize..3, k in 1usize..3) {
        let tol = Tolerances::default();
        let mut r = rng(seed);
        let g1 = sample::group_element(&mut r, j + k, 0.5);
        let g2 = sample::group_element(&mut r, j + k, 0.5);
        let x = GrassmannPoint::new(sample::matrix(&mut r, j, k, 0.5));
        let two_step = lft_apply(&g2, &lft_apply(&g1, &x, &tol).unwrap(), &tol).unwrap();
        let direct = lft_apply(&g2.compose(&g1).unwrap(), &x, &tol).unwrap();
        prop_assert!(two_step.x.max_abs_diff(&direct.x) < 1e-8);
    }

    #[test]
    fn curvature_trace_holds(seed: u64, n in 2usize..6, kk in 1usize..5) {
        let k = 1 + kk % (n - 1);
        let q = sample::matrix(&mut rng(seed), k, n, 0.8);
        let (lhs, rhs) = curvature_trace(&q, n, k, &Tolerances::default()).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn evolution_preserves_norm_and_split_sums(seed: u64, n in 2usize..5, t in -10.0f64..10.0) {
        let tol = Tolerances::default();
        let mut r = rng(seed);
        let g = sample::skew(&mut r, n, 1.0);
        let split = r.random_range(1..n);
        let psi = StateVector::new((0..n).map(|_| sample::quaternion(&mut r, 1.0)).collect(), split).unwrap();
        let out = evolve(&g, &psi, t, &tol).unwrap();
        prop_assert!((out.norm_sq() - psi.norm_sq()).abs() < 1e-9 * (1.0 + psi.norm_sq()));
        let s = transition_split(&g, &psi).unwrap();
        let direct = g.matmul(&psi.as_column()).unwrap();
        for (a, b) in s.sum().iter().zip(direct.entries()) {
            prop_assert!(a.max_abs_diff(*b) < 1e-12);
        }
    }

    #[test]
    fn field_decomposition_is_exact_and_pstar_linear(seed: u64, degree in 0u32..4) {
        let mut r = rng(seed);
        let f = random_field(&mut r, degree, 5);
        let g = random_field(&mut r, degree, 5);
        prop_assert!(decompose(&f).consistent);
        prop_assert_eq!(apply_pstar(&f.add(&g)), apply_pstar(&f).add(&apply_pstar(&g)));
    }

    #[test]
    fn terminating_radial_solutions_solve_the_ode(two_ell in 0u32..9, n in 0u32..4, w in 0.06f64..3.08) {
        if let Ok(g) = RadialSolution::g_ell(two_ell, n) {
            let l = two_ell as f64 / 2.0;
            prop_assert_eq!(g.theta_sq, (l + 1.0 - n as f64) * (l - 0.5 - n as f64));
            prop_assert!(lb_radial_residual(&g, w).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn labels_round_trip(coeffs in prop::collection::vec(prop::sample::select(vec![-2i32, -1, 1, 2]), 1..4), colored: bool) {
        let colors = [Color::I, Color::J, Color::K];
        let weights: Vec<Weight> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Weight::single(i + 1, *c, colored.then_some(colors[i])))
            .collect();
        let label = particle_label(&weights).unwrap();
        let mut back = parse_label(&label.text).unwrap();
        let mut orig = label.constituents.clone();
        back.sort();
        orig.sort();
        prop_assert_eq!(back, orig);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generator_brackets_are_antisymmetric(
        ka in 0usize..4, kb in 0usize..4, i in 0usize..4, j in 0usize..4, m in 0usize..4, l in 0usize..4,
    ) {
        let alg = LieAlgebra::new(1, 2).unwrap();
        let kinds = [GeneratorKind::H1, GeneratorKind::H2, GeneratorKind::P, GeneratorKind::PBar];
        let pick = |kind: GeneratorKind, a: usize, b: usize| {
            let (ra, rb) = match kind {
                GeneratorKind::H1 => (alg.rows, alg.rows),
                GeneratorKind::H2 => (alg.cols, alg.cols),
                _ => (alg.rows, alg.cols),
            };
            alg.generator(kind, a % ra, b % rb).unwrap()
        };
        let a = pick(kinds[ka], i, j);
        let b = pick(kinds[kb], m, l);
        let ab = DiffOperator::commutator(&a, &b).unwrap();
        let ba = DiffOperator::commutator(&b, &a).unwrap();
        prop_assert!(ab.add(&ba).is_zero());
        prop_assert_eq!(alg.conjugate(&alg.conjugate(&a)), a);
    }
}

#[test]
fn root_systems_are_closed_and_sized() {
    for n in 1..=8 {
        let rs = RootSystem::generate(n).unwrap();
        assert_eq!(rs.len(), 2 * n * n);
        assert!(rs.closed_under_negation() && !rs.has_duplicates());
        for r in &rs.roots {
            let len_sq: i32 = r.iter().map(|c| c * c).sum();
            assert!(len_sq == 2 || len_sq == 4, "{r:?}");
        }
    }
}
