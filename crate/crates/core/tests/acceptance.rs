//! Acceptance criteria 1-15. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process fails if any does.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use quatflag::coset::{lft_apply, lft_apply_left, GrassmannPoint};
use quatflag::emfield::{apply_pstar, decompose, parse_field, random_field};
use quatflag::forms::{dy_wedge, hodge_star4};
use quatflag::liealg::{ladder_check, monomial, verify_commutation_table, LieAlgebra};
use quatflag::poly::monomials_up_to;
use quatflag::roots::{embed_check, particle_label, Color, RootSystem, Weight};
use quatflag::s4lb::{einstein_check, integrability, lb_radial_residual, RadialSolution, POLE_EXCLUSION};
use quatflag::verify::{self, Report, RunConfig, Suite};
use quatflag::{sample, Quaternion, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Line {
    passed: bool,
    detail: String,
}

fn line(passed: bool, detail: impl Into<String>) -> Line {
    Line {
        passed,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

/// A sampled check from the seed-42 report, held to a bound fixed here
/// rather than the one the library used.
fn sampled(report: &Report, suite: Suite, name: &str, bound: f64, min_samples: usize) -> (bool, String) {
    let Some(c) = report
        .suites
        .iter()
        .find(|s| s.suite == suite)
        .and_then(|s| s.check(name))
    else {
        return (false, format!("{name}: missing"));
    };
    let r = c.residual.unwrap_or(f64::NAN);
    let n = c.samples.unwrap_or(0);
    let ok = c.passed && r < bound && n >= min_samples;
    (ok, format!("{name} {r:.2e} < {bound:.0e} over {n}"))
}

fn all_sampled(report: &Report, suite: Suite, items: &[(&str, f64, usize)]) -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, bound, n) in items {
        let (p, d) = sampled(report, suite, name, *bound, *n);
        ok &= p;
        parts.push(d);
    }
    line(ok, parts.join("; "))
}

fn c1() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = sample::quaternion(&mut rng, 1.0);
        let q = sample::quaternion(&mut rng, 1.0);
        worst = worst.max((p * q).to_m2c().max_abs_diff(&p.to_m2c().matmul(&q.to_m2c())));
    }
    let t = start.elapsed();
    let (i, j, k) = (Quaternion::basis(1), Quaternion::basis(2), Quaternion::basis(3));
    let table = (i * j).max_abs_diff(k) == 0.0
        && (j * i).max_abs_diff(-k) == 0.0
        && (i * i).max_abs_diff(-Quaternion::basis(0)) == 0.0;
    line(
        worst < 1e-12 && table && t < Duration::from_secs(1),
        format!("max error {worst:.2e} over 10^4 pairs, ij=k table {table}, {}", secs(t)),
    )
}

fn c2() -> Line {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let (mut forms, mut law) = (0.0f64, 0.0f64);
    for _ in 0..500 {
        let g1 = sample::group_element(&mut rng, 4, 0.5);
        let g2 = sample::group_element(&mut rng, 4, 0.5);
        let x = GrassmannPoint::new(sample::matrix(&mut rng, 2, 2, 0.5));
        let r = (|| {
            let y = lft_apply(&g1, &x, &tol)?;
            let yl = lft_apply_left(&g1, &x, &tol)?;
            let yy = lft_apply(&g2, &y, &tol)?;
            let direct = lft_apply(&g2.compose(&g1)?, &x, &tol)?;
            quatflag::Result::Ok((y.x.max_abs_diff(&yl.x), yy.x.max_abs_diff(&direct.x)))
        })();
        match r {
            Ok((a, b)) => {
                forms = forms.max(a);
                law = law.max(b);
            }
            Err(e) => return line(false, format!("draw failed: {e}")),
        }
    }
    let t = start.elapsed();
    line(
        forms < 1e-9 && law < 1e-8 && t < Duration::from_secs(10),
        format!(
            "Sp(4) j=k=2, 500 draws: forms {forms:.2e}, group law {law:.2e}, {}",
            secs(t)
        ),
    )
}

fn c7() -> Line {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        match verify_commutation_table(1, n, 3) {
            Ok(rep) => {
                let brackets = rep.relations.iter().filter(|r| r.relation.starts_with('[')).count();
                ok &= rep.all_passed && brackets == 7;
                let combos: usize = rep.relations.iter().map(|r| r.combinations).sum();
                parts.push(format!(
                    "(k=1,n={n}) {brackets} brackets, {combos} index combinations, all exact {}",
                    rep.all_passed
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("(k=1,n={n}) error {e}"));
            }
        }
    }
    let t = start.elapsed();
    ok &= t < Duration::from_secs(60);
    line(ok, format!("{}; J = 1 (x) j; {}", parts.join("; "), secs(t)))
}

fn c8() -> Line {
    let mut ok = true;
    let mut steps = 0;
    let mut nontrivial = 0;
    for n in [2, 3] {
        let alg = match LieAlgebra::new(1, n) {
            Ok(a) => a,
            Err(e) => return line(false, e.to_string()),
        };
        let degree = if n == 2 { 3 } else { 2 };
        for exps in monomials_up_to(alg.nvars(), degree) {
            let f = monomial(&alg, exps).unwrap();
            for al in 0..alg.rows {
                for a in 0..alg.cols {
                    match ladder_check(&alg, &f, al, a) {
                        Ok(rep) => {
                            ok &= rep.all_hold;
                            steps += rep.steps.len();
                            nontrivial += rep.steps.iter().filter(|s| !s.image_zero).count();
                        }
                        Err(e) => return line(false, format!("ladder failed: {e}")),
                    }
                }
            }
        }
    }
    ok &= nontrivial > 0;
    line(
        ok,
        format!("{steps} ladder steps on monomial eigenvectors, {nontrivial} with nonzero image, all exact {ok}"),
    )
}

fn c9() -> Line {
    let interior = |i: usize| POLE_EXCLUSION + 1e-3 + (PI - 2.0 * POLE_EXCLUSION - 2e-3) * i as f64 / 49.0;
    let max_res = |f: &RadialSolution| -> f64 {
        (0..50)
            .map(|i| lb_radial_residual(f, interior(i)).map(f64::abs).unwrap_or(f64::NAN))
            .fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
    };
    let f0 = RadialSolution::f0();
    let r0 = max_res(&f0);
    let mut ok = r0 < 1e-10;
    let mut parts = vec![format!("f0 {r0:.1e}")];
    for (l2, n) in [(2u32, 0u32), (3, 0), (4, 0), (4, 1)] {
        let g = match RadialSolution::g_ell(l2, n) {
            Ok(g) => g,
            Err(e) => return line(false, e.to_string()),
        };
        let r = max_res(&g);
        let l = l2 as f64 / 2.0;
        let t2 = (l + 1.0 - n as f64) * (l - 0.5 - n as f64);
        let theta_ok = g.theta_sq == t2 && g.theta() == Some(t2.sqrt());
        let flag = integrability(&g).integrable;
        ok &= r < 1e-8 && theta_ok && !flag;
        parts.push(format!(
            "l={l} N={n}: {r:.1e}, theta {:?} ok {theta_ok}, integrable {flag}",
            g.theta()
        ));
    }
    // l = 1/2 admits no N (termination), so l = 0 and f0 cover the integrable side.
    let g0 = integrability(&RadialSolution::g_ell(0, 0).expect("l = 0 terminates")).integrable;
    let f0_flag = integrability(&f0).integrable;
    ok &= g0 && f0_flag;
    parts.push(format!("l=0 integrable {g0}, f0 integrable {f0_flag}"));
    line(ok, parts.join("; "))
}

fn c10() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pts: Vec<[f64; 4]> = (0..20)
        .map(|_| std::array::from_fn(|_| rng.random_range(-1.5..1.5)))
        .collect();
    let start = Instant::now();
    let rep = einstein_check(&pts);
    let t = start.elapsed();
    match rep {
        Ok(r) => line(
            r.relative_spread < 1e-3 && t < Duration::from_secs(30),
            format!(
                "20 points, Ric/g = {:.6}, spread {:.2e}, {}",
                r.lambda,
                r.relative_spread,
                secs(t)
            ),
        ),
        Err(e) => line(false, e.to_string()),
    }
}

fn c11() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut exact = 0;
    let mut fd_worst = 0.0f64;
    let h = 1e-4;
    for _ in 0..100 {
        let f = random_field(&mut rng, 3, 6);
        exact += decompose(&f).consistent as usize;
        // Finite-difference oracle for p* at a random point.
        let x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let mut fd = Quaternion::ZERO;
        for r in 0..4 {
            let (mut xp, mut xm) = (x, x);
            xp[r] += h;
            xm[r] -= h;
            let d = (f.eval(&xp) - f.eval(&xm)).scale(0.5 / h);
            fd += Quaternion::basis(r) * d;
        }
        let exact_val = apply_pstar(&f).eval(&x);
        fd_worst = fd_worst.max(fd.max_abs_diff(exact_val) / (1.0 + exact_val.norm()));
    }
    let example = parse_field(&["A1=-x2; A2=x1"]).map(|f| decompose(&f).render());
    let curl_ok = example
        .as_ref()
        .is_ok_and(|d| d.b[2] == "2" && d.scalar == "0" && d.consistent);
    line(
        exact == 100 && fd_worst < 1e-6 && curl_ok,
        format!(
            "{exact}/100 exact identities, finite-difference oracle {fd_worst:.1e}, rotation field B3 = 2 {curl_ok}"
        ),
    )
}

fn c12() -> Line {
    let w = dy_wedge();
    // pairs 01, 02, 03, 12, 13, 23
    let sd = [
        [-2.0, 0.0, 0.0, 0.0, 0.0, -2.0],
        [0.0, -2.0, 0.0, 0.0, 2.0, 0.0],
        [0.0, 0.0, -2.0, -2.0, 0.0, 0.0],
    ];
    let asd = [
        [2.0, 0.0, 0.0, 0.0, 0.0, -2.0],
        [0.0, 2.0, 0.0, 0.0, 2.0, 0.0],
        [0.0, 0.0, 2.0, -2.0, 0.0, 0.0],
    ];
    let mut pattern = w.components(0) == ([0.0; 6], [0.0; 6]);
    let mut hodge = true;
    for c in 1..4 {
        let (s, a) = w.components(c);
        pattern &= s == sd[c - 1] && a == asd[c - 1];
        hodge &= hodge_star4(&s) == s && hodge_star4(&a) == a.map(|x| -x);
    }
    let basis: [f64; 6] = [1.0, 0.0, 0.0, 0.0, 0.0, 1.0];
    hodge &= hodge_star4(&basis) == basis;
    line(
        pattern && hodge,
        format!("dY^dY* / dY*^dY coefficient patterns {pattern}, Hodge eigenvalues +1/-1 exact {hodge}"),
    )
}

fn c14() -> Line {
    let counts: Vec<usize> = (1..=6)
        .map(|n| RootSystem::generate(n).map(|r| r.len()).unwrap_or(0))
        .collect();
    let counts_ok = counts.iter().enumerate().all(|(i, c)| *c == 2 * (i + 1) * (i + 1));
    let embed_ok = (2..=6).all(|n| (1..n).all(|m| embed_check(m, n).unwrap_or(false)));
    let labels = (|| {
        Ok::<_, quatflag::Error>((
            particle_label(&[Weight::new(vec![1, 1], None)])?,
            particle_label(&[Weight::new(vec![-1, 1], None)])?,
            particle_label(&[Weight::single(1, 2, None)])?,
            particle_label(&[Weight::single(1, -2, None)])?,
            particle_label(&[
                Weight::single(1, 1, Some(Color::I)),
                Weight::single(1, 1, Some(Color::J)),
                Weight::single(2, 1, Some(Color::K)),
            ])?,
        ))
    })();
    let Ok((ud, ubd, lep, alep, uud)) = labels else {
        return line(false, "label construction failed");
    };
    let labels_ok = ud.letters == "ud"
        && ubd.letters == "ūd"
        && uud.letters == "uud"
        && lep.class.to_string() == "lepton"
        && alep.class.to_string() == "lepton"
        && ud.class.to_string() == "meson"
        && uud.class.to_string() == "baryon";
    line(
        counts_ok && embed_ok && labels_ok,
        format!(
            "counts {counts:?}, embeddings {embed_ok}, labels {} {} {} {} {}",
            ud.letters, ubd.letters, lep.text, alep.text, uud.text
        ),
    )
}

fn c15() -> Line {
    let bin = env!("CARGO_BIN_EXE_quatflag");
    let start = Instant::now();
    let a = Command::new(bin).args(["verify", "all", "--seed", "42"]).output();
    let t = start.elapsed();
    let b = Command::new(bin).args(["verify", "all", "--seed", "42"]).output();
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let same = a.stdout == b.stdout && !a.stdout.is_empty();
            let code = a.status.code();
            line(
                same && code == Some(0) && t < Duration::from_secs(300),
                format!(
                    "exit {code:?}, byte-identical rerun {same}, {} bytes, {}",
                    a.stdout.len(),
                    secs(t)
                ),
            )
        }
        (Err(e), _) | (_, Err(e)) => line(false, format!("cannot run binary: {e}")),
    }
}

fn main() {
    let report = verify::run(&Suite::ALL, &RunConfig::default());
    let criteria: Vec<(&str, Line)> = vec![
        ("quaternion / m(C^2) homomorphism", c1()),
        ("linear fractional action: both forms and group law", c2()),
        (
            "projective transport identities",
            all_sampled(&report, Suite::Coset, &[("coset.transport_identities", 1e-9, 500)]),
        ),
        (
            "cross-ratio invariance",
            all_sampled(&report, Suite::Coset, &[("coset.cross_ratio_invariance", 1e-8, 500)]),
        ),
        (
            "metric forms, pushforward and inversion invariance",
            all_sampled(
                &report,
                Suite::Coset,
                &[
                    ("coset.metric_forms_agree", 1e-10, 500),
                    ("coset.metric_pushforward_invariance", 1e-5, 500),
                    ("coset.metric_inversion_invariance", 1e-6, 500),
                ],
            ),
        ),
        (
            "curvature trace identity",
            all_sampled(
                &report,
                Suite::Coset,
                &[
                    ("coset.curvature_trace(n=3,k=1)", 1e-9, 100),
                    ("coset.curvature_trace(n=5,k=2)", 1e-9, 100),
                    ("coset.curvature_trace(n=6,k=3)", 1e-9, 100),
                ],
            ),
        ),
        ("seven commutation relations, exact to degree 3", c7()),
        ("ladder shifts", c8()),
        ("S^4 radial solutions", c9()),
        ("Einstein condition on S^4", c10()),
        ("Maxwell decomposition", c11()),
        ("self-dual / anti-self-dual wedge identities", c12()),
        (
            "dynamics",
            all_sampled(
                &report,
                Suite::Dynamics,
                &[
                    ("dynamics.norm_conservation", 1e-9, 1),
                    ("dynamics.cocycle", 1e-9, 1),
                    ("dynamics.time_reversal", 1e-11, 1),
                    ("dynamics.geodesic_block_exp", 1e-10, 100),
                ],
            ),
        ),
        ("C_n roots, embeddings and labels", c14()),
        ("CLI determinism and verify all", c15()),
    ];

    let mut failures = 0;
    for (i, (title, l)) in criteria.iter().enumerate() {
        let tag = if l.passed { "PASS" } else { "FAIL" };
        failures += (!l.passed) as usize;
        println!("criterion {:>2} {tag}: {title} | {}", i + 1, l.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
