//! Differential-operator realization of sp(n) on polynomials in the
//! Grassmannian coordinates of Sp(n)/Sp(k) x Sp(n-k).
//!
//! Coordinates are the `2k x 2(n-k)` complex entries `zeta_{alpha a}` of the
//! m(C^2) image of a `k x (n-k)` quaternion matrix. The conjugate matrix is
//! `zeta-bar = J' zeta J` with `J = 1 (x) j`, which is a signed permutation
//! of the same variables, so `zeta-bar` is a substitution and
//! `d-bar = J d J'` is a signed relabeling of the derivatives. Coefficients
//! are exact Gaussian rationals.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{gauss_to_string, monomials_up_to, Exponents, GaussRational, Poly};

pub type PolyFunction = Poly<GaussRational>;

fn gr(n: i64) -> GaussRational {
    GaussRational::new(Rational64::from_integer(n), Rational64::zero())
}

/// Entry of `1 (x) j` with `j = [[0, 1], [-1, 0]]`.
pub fn j_entry(r: usize, c: usize) -> i64 {
    if r / 2 != c / 2 {
        0
    } else if r.is_multiple_of(2) && c == r + 1 {
        1
    } else if r % 2 == 1 && c + 1 == r {
        -1
    } else {
        0
    }
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// Sorted derivative indices, with repetition; empty for the identity.
pub type DerivIndex = Vec<u16>;

/// `sum coeff(x) d^multi`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOperator {
    nvars: usize,
    terms: BTreeMap<DerivIndex, PolyFunction>,
}

impl DiffOperator {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(nvars: usize) -> Self {
        Self::multiplication(PolyFunction::one(nvars))
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: PolyFunction) -> Self {
        let mut op = Self::zero(f.nvars());
        op.add_term(Vec::new(), f);
        op
    }

    /// `d / d x_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut op = Self::zero(nvars);
        op.add_term(vec![i as u16], PolyFunction::one(nvars));
        op
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivIndex, &PolyFunction)> {
        self.terms.iter()
    }

    /// Highest derivative order present; 0 for the zero operator.
    pub fn order(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, idx: DerivIndex, f: PolyFunction) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(v) => {
                *v = v.add(&f);
                if v.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, f);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, f) in &other.terms {
            out.add_term(i.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, f) in &other.terms {
            out.add_term(i.clone(), f.neg());
        }
        out
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f.scale(c));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&gr(n))
    }

    /// `f . self`: multiply every coefficient by `f` on the left.
    pub fn left_mul(&self, f: &PolyFunction) -> Self {
        let mut out = Self::zero(self.nvars);
        for (i, g) in &self.terms {
            out.add_term(i.clone(), f.mul(g));
        }
        out
    }

    /// Exact application to a polynomial.
    pub fn apply(&self, f: &PolyFunction) -> PolyFunction {
        let mut out = PolyFunction::zero(self.nvars);
        for (idx, c) in &self.terms {
            let mut g = f.clone();
            for &i in idx {
                g = g.derivative(i as usize);
                if g.is_zero() {
                    break;
                }
            }
            if !g.is_zero() {
                out = out.add(&c.mul(&g));
            }
        }
        out
    }

    /// `d_i . self`, by the product rule.
    fn left_partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c.derivative(i));
            let mut idx2 = idx.clone();
            let pos = idx2.partition_point(|&x| x < i as u16);
            idx2.insert(pos, i as u16);
            out.add_term(idx2, c.clone());
        }
        out
    }

    /// Operator product `self . other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (idx, c) in &self.terms {
            let mut inner = other.clone();
            for &i in idx.iter().rev() {
                inner = inner.left_partial(i as usize);
            }
            out = out.add(&inner.left_mul(c));
        }
        out
    }

    /// `[a, b] = ab - ba` by full composition. The top-order parts must
    /// cancel; a leftover signals an engine error.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        let c = a.compose(b).sub(&b.compose(a));
        let bound = (a.order() + b.order()).saturating_sub(1);
        if c.order() > bound {
            return Err(Error::SecondOrderResidue);
        }
        Ok(c)
    }

    /// Bracket of first-order operators as vector fields:
    /// `[V, W] = sum_i (V w_i - W v_i) d_i + (V w_0 - W v_0)`.
    pub fn vector_field_bracket(a: &Self, b: &Self) -> Result<Self> {
        if a.order() > 1 || b.order() > 1 {
            return Err(Error::SecondOrderResidue);
        }
        let mut out = Self::zero(a.nvars);
        let keys: std::collections::BTreeSet<&DerivIndex> = a.terms.keys().chain(b.terms.keys()).collect();
        let zero = PolyFunction::zero(a.nvars);
        for k in keys {
            let wa = a.terms.get(k).unwrap_or(&zero);
            let wb = b.terms.get(k).unwrap_or(&zero);
            out.add_term(k.clone(), a.apply(wb).sub(&b.apply(wa)));
        }
        Ok(out)
    }

    /// Apply a signed variable permutation to coefficients and derivative
    /// indices, and conjugate the coefficients.
    fn signed_relabel(&self, perm: &[usize], neg: &[bool]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (idx, c) in &self.terms {
            let mut negative = false;
            let mut idx2: DerivIndex = idx
                .iter()
                .map(|&i| {
                    negative ^= neg[i as usize];
                    perm[i as usize] as u16
                })
                .collect();
            idx2.sort_unstable();
            let mut c2 = c.signed_permute(perm, neg).conj_coeffs();
            if negative {
                c2 = c2.neg();
            }
            out.add_term(idx2, c2);
        }
        out
    }

    /// Drop coefficient terms above total degree `max`.
    pub fn truncate_coefficients(&self, max: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c.truncate(max));
        }
        out
    }

    /// Compare as operators on every monomial up to `max_degree`.
    pub fn agrees_on_monomials(&self, other: &Self, max_degree: u32) -> bool {
        monomials_up_to(self.nvars, max_degree).into_iter().all(|e| {
            let m = PolyFunction::monomial(e, GaussRational::one());
            self.apply(&m) == other.apply(&m)
        })
    }

    pub fn render(&self, var: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(idx, c)| {
                let d: Vec<String> = idx.iter().map(|&i| format!("d[{}]", var(i as usize))).collect();
                let coeff = c.render(&var, gauss_to_string);
                if d.is_empty() {
                    format!("({coeff})")
                } else {
                    format!("({coeff}){}", d.join(""))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    /// `h_{alpha beta}`, acting on the `2k` side.
    H1,
    /// `H_{ab}`, acting on the `2(n-k)` side.
    H2,
    P,
    PBar,
}

/// Coordinates, conjugation and generators for a partition `(k, n)`.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub k: usize,
    pub n: usize,
    /// `2k`
    pub rows: usize,
    /// `2(n-k)`
    pub cols: usize,
    bar_perm: Vec<usize>,
    bar_neg: Vec<bool>,
}

impl LieAlgebra {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::PartitionMismatch(format!("need 1 <= k < n, got k={k}, n={n}")));
        }
        let rows = 2 * k;
        let cols = 2 * (n - k);
        let mut bar_perm = vec![0; rows * cols];
        let mut bar_neg = vec![false; rows * cols];
        for al in 0..rows {
            for a in 0..cols {
                // (J' zeta J)_{al a} = J_{g al} zeta_{g c} J_{c a}, one nonzero term
                let g = al ^ 1;
                let c = a ^ 1;
                let sign = j_entry(g, al) * j_entry(c, a);
                bar_perm[al * cols + a] = g * cols + c;
                bar_neg[al * cols + a] = sign < 0;
            }
        }
        Ok(Self {
            k,
            n,
            rows,
            cols,
            bar_perm,
            bar_neg,
        })
    }

    pub fn nvars(&self) -> usize {
        self.rows * self.cols
    }

    pub fn var_index(&self, al: usize, a: usize) -> usize {
        al * self.cols + a
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("z{}_{}", i / self.cols + 1, i % self.cols + 1)
    }

    fn check_row(&self, al: usize) -> Result<()> {
        if al >= self.rows {
            return Err(Error::IndexOutOfRange(format!("row {al} >= {}", self.rows)));
        }
        Ok(())
    }

    fn check_col(&self, a: usize) -> Result<()> {
        if a >= self.cols {
            return Err(Error::IndexOutOfRange(format!("column {a} >= {}", self.cols)));
        }
        Ok(())
    }

    pub fn zeta(&self, al: usize, a: usize) -> PolyFunction {
        PolyFunction::var(self.nvars(), self.var_index(al, a))
    }

    pub fn zeta_bar(&self, al: usize, a: usize) -> PolyFunction {
        let i = self.var_index(al, a);
        let v = PolyFunction::var(self.nvars(), self.bar_perm[i]);
        if self.bar_neg[i] {
            v.neg()
        } else {
            v
        }
    }

    pub fn d(&self, al: usize, a: usize) -> DiffOperator {
        DiffOperator::partial(self.nvars(), self.var_index(al, a))
    }

    /// `(J d J')_{al a}`.
    pub fn d_bar(&self, al: usize, a: usize) -> DiffOperator {
        let mut out = DiffOperator::zero(self.nvars());
        for g in 0..self.rows {
            for c in 0..self.cols {
                let s = j_entry(al, g) * j_entry(a, c);
                if s != 0 {
                    out = out.add(&self.d(g, c).scale_int(s));
                }
            }
        }
        out
    }

    /// Conjugation: `zeta -> zeta-bar`, `d -> d-bar`, coefficients conjugated.
    pub fn conjugate(&self, op: &DiffOperator) -> DiffOperator {
        op.signed_relabel(&self.bar_perm, &self.bar_neg)
    }

    /// Conjugation of a polynomial.
    pub fn conjugate_poly(&self, f: &PolyFunction) -> PolyFunction {
        f.signed_permute(&self.bar_perm, &self.bar_neg).conj_coeffs()
    }

    /// `h_{al be} = zeta_{al b} d_{be b} - zeta-bar_{be b} d-bar_{al b}`.
    pub fn h(&self, al: usize, be: usize) -> Result<DiffOperator> {
        self.check_row(al)?;
        self.check_row(be)?;
        let mut out = DiffOperator::zero(self.nvars());
        for b in 0..self.cols {
            out = out
                .add(&self.d(be, b).left_mul(&self.zeta(al, b)))
                .sub(&self.d_bar(al, b).left_mul(&self.zeta_bar(be, b)));
        }
        Ok(out)
    }

    /// `H_{ab} = zeta_{mu a} d_{mu b} - zeta-bar_{mu b} d-bar_{mu a}`.
    pub fn big_h(&self, a: usize, b: usize) -> Result<DiffOperator> {
        self.check_col(a)?;
        self.check_col(b)?;
        let mut out = DiffOperator::zero(self.nvars());
        for mu in 0..self.rows {
            out = out
                .add(&self.d(mu, b).left_mul(&self.zeta(mu, a)))
                .sub(&self.d_bar(mu, a).left_mul(&self.zeta_bar(mu, b)));
        }
        Ok(out)
    }

    /// `p_{al a} = d-bar_{al a} + zeta_{al b} zeta_{mu a} d_{mu b}`.
    pub fn p(&self, al: usize, a: usize) -> Result<DiffOperator> {
        self.check_row(al)?;
        self.check_col(a)?;
        let mut out = self.d_bar(al, a);
        for b in 0..self.cols {
            for mu in 0..self.rows {
                let c = self.zeta(al, b).mul(&self.zeta(mu, a));
                out = out.add(&self.d(mu, b).left_mul(&c));
            }
        }
        Ok(out)
    }

    /// `p-bar_{al a} = d_{al a} + zeta-bar_{al b} zeta-bar_{mu a} d-bar_{mu b}`.
    pub fn p_bar(&self, al: usize, a: usize) -> Result<DiffOperator> {
        self.check_row(al)?;
        self.check_col(a)?;
        let mut out = self.d(al, a);
        for b in 0..self.cols {
            for mu in 0..self.rows {
                let c = self.zeta_bar(al, b).mul(&self.zeta_bar(mu, a));
                out = out.add(&self.d_bar(mu, b).left_mul(&c));
            }
        }
        Ok(out)
    }

    /// `(delta_{al be} + zeta_{al b} zeta-bar_{be b}) d-bar_{be a} + zeta_{al b} H_{ab}`.
    pub fn p_via_big_h(&self, al: usize, a: usize) -> Result<DiffOperator> {
        self.check_row(al)?;
        self.check_col(a)?;
        let nv = self.nvars();
        let mut out = DiffOperator::zero(nv);
        for be in 0..self.rows {
            let mut c = PolyFunction::constant(nv, gr(delta(al, be)));
            for b in 0..self.cols {
                c = c.add(&self.zeta(al, b).mul(&self.zeta_bar(be, b)));
            }
            out = out.add(&self.d_bar(be, a).left_mul(&c));
        }
        for b in 0..self.cols {
            out = out.add(&self.big_h(a, b)?.left_mul(&self.zeta(al, b)));
        }
        Ok(out)
    }

    /// `(delta_{ab} + zeta_{mu a} zeta-bar_{mu b}) d-bar_{al b} + zeta_{mu a} h_{al mu}`.
    pub fn p_via_h(&self, al: usize, a: usize) -> Result<DiffOperator> {
        self.check_row(al)?;
        self.check_col(a)?;
        let nv = self.nvars();
        let mut out = DiffOperator::zero(nv);
        for b in 0..self.cols {
            let mut c = PolyFunction::constant(nv, gr(delta(a, b)));
            for mu in 0..self.rows {
                c = c.add(&self.zeta(mu, a).mul(&self.zeta_bar(mu, b)));
            }
            out = out.add(&self.d_bar(al, b).left_mul(&c));
        }
        for mu in 0..self.rows {
            out = out.add(&self.h(al, mu)?.left_mul(&self.zeta(mu, a)));
        }
        Ok(out)
    }

    pub fn generator(&self, kind: GeneratorKind, i: usize, j: usize) -> Result<DiffOperator> {
        match kind {
            GeneratorKind::H1 => self.h(i, j),
            GeneratorKind::H2 => self.big_h(i, j),
            GeneratorKind::P => self.p(i, j),
            GeneratorKind::PBar => self.p_bar(i, j),
        }
    }

    /// All generators, built once.
    pub fn generators(&self) -> Generators {
        let (r, c) = (self.rows, self.cols);
        let grid = |rows: usize, cols: usize, f: &dyn Fn(usize, usize) -> DiffOperator| {
            (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect()
        };
        Generators {
            h: grid(r, r, &|i, j| self.h(i, j).expect("in range")),
            big_h: grid(c, c, &|i, j| self.big_h(i, j).expect("in range")),
            p: grid(r, c, &|i, j| self.p(i, j).expect("in range")),
            p_bar: grid(r, c, &|i, j| self.p_bar(i, j).expect("in range")),
        }
    }

    /// `-sum h_{al be} h_{be al} - sum H_{ab} H_{ba} + sum (p p-bar + p-bar p)`,
    /// the trace of the squared generator matrix.
    pub fn laplace_beltrami(&self) -> DiffOperator {
        let g = self.generators();
        let mut out = DiffOperator::zero(self.nvars());
        for al in 0..self.rows {
            for be in 0..self.rows {
                out = out.sub(&g.h[al][be].compose(&g.h[be][al]));
            }
        }
        for a in 0..self.cols {
            for b in 0..self.cols {
                out = out.sub(&g.big_h[a][b].compose(&g.big_h[b][a]));
            }
        }
        for al in 0..self.rows {
            for a in 0..self.cols {
                out = out
                    .add(&g.p[al][a].compose(&g.p_bar[al][a]))
                    .add(&g.p_bar[al][a].compose(&g.p[al][a]));
            }
        }
        out
    }
}

/// Generator tables indexed `[i][j]`.
#[derive(Debug, Clone)]
pub struct Generators {
    pub h: Vec<Vec<DiffOperator>>,
    pub big_h: Vec<Vec<DiffOperator>>,
    pub p: Vec<Vec<DiffOperator>>,
    pub p_bar: Vec<Vec<DiffOperator>>,
}

/// `(M J)_{ij} = sum_g M_{ig} J_{gj}`.
fn right_j(m: &[Vec<DiffOperator>], i: usize, j: usize, nvars: usize) -> DiffOperator {
    let mut out = DiffOperator::zero(nvars);
    for (g, op) in m[i].iter().enumerate() {
        let s = j_entry(g, j);
        if s != 0 {
            out = out.add(&op.scale_int(s));
        }
    }
    out
}

/// `(J M)_{ij} = sum_g J_{ig} M_{gj}`.
fn left_j(m: &[Vec<DiffOperator>], i: usize, j: usize, nvars: usize) -> DiffOperator {
    let mut out = DiffOperator::zero(nvars);
    for (g, row) in m.iter().enumerate() {
        let s = j_entry(i, g);
        if s != 0 {
            out = out.add(&row[j].scale_int(s));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationResult {
    pub relation: String,
    pub combinations: usize,
    /// Symbolic mismatches between left and right sides.
    pub symbolic_failures: usize,
    /// Combinations where some monomial distinguishes the two sides.
    pub monomial_failures: usize,
    /// Combinations where the two commutator evaluations disagree.
    pub engine_disagreements: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutationReport {
    pub k: usize,
    pub n: usize,
    pub max_degree: u32,
    pub relations: Vec<RelationResult>,
    pub all_passed: bool,
}

struct RelationTally {
    name: String,
    combos: usize,
    symbolic: usize,
    monomial: usize,
    engines: usize,
}

impl RelationTally {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            combos: 0,
            symbolic: 0,
            monomial: 0,
            engines: 0,
        }
    }

    /// Record `[a, b] = rhs`.
    fn check(
        &mut self,
        a: &DiffOperator,
        b: &DiffOperator,
        rhs: &DiffOperator,
        monomials: &[PolyFunction],
    ) -> Result<()> {
        let lhs = DiffOperator::commutator(a, b)?;
        let alt = DiffOperator::vector_field_bracket(a, b)?;
        self.record(&lhs, Some(&alt), rhs, monomials);
        Ok(())
    }

    fn record(
        &mut self,
        lhs: &DiffOperator,
        alt: Option<&DiffOperator>,
        rhs: &DiffOperator,
        monomials: &[PolyFunction],
    ) {
        self.combos += 1;
        if alt.is_some_and(|alt| alt != lhs) {
            self.engines += 1;
        }
        if lhs != rhs {
            self.symbolic += 1;
        }
        if monomials.iter().any(|m| lhs.apply(m) != rhs.apply(m)) {
            self.monomial += 1;
        }
    }

    fn finish(self) -> RelationResult {
        RelationResult {
            passed: self.symbolic == 0 && self.monomial == 0 && self.engines == 0,
            relation: self.name,
            combinations: self.combos,
            symbolic_failures: self.symbolic,
            monomial_failures: self.monomial,
            engine_disagreements: self.engines,
        }
    }
}

/// Check the seven commutation relations for every index combination,
/// plus the skewness, `p`-form and `J`-symmetry identities.
pub fn verify_commutation_table(k: usize, n: usize, max_degree: u32) -> Result<CommutationReport> {
    let alg = LieAlgebra::new(k, n)?;
    let g = alg.generators();
    let nv = alg.nvars();
    let (r, c) = (alg.rows, alg.cols);
    let monomials: Vec<PolyFunction> = monomials_up_to(nv, max_degree)
        .into_iter()
        .map(|e| PolyFunction::monomial(e, GaussRational::one()))
        .collect();
    let zero = DiffOperator::zero(nv);
    let mut results = Vec::new();

    let mut t = RelationTally::new("[h_ab,h_mn] = d_bm h_an - d_an h_mb - J_bn (hJ)_am + J_ma (Jh)_bn");
    for al in 0..r {
        for be in 0..r {
            for mu in 0..r {
                for nu in 0..r {
                    let rhs = g.h[al][nu]
                        .scale_int(delta(be, mu))
                        .sub(&g.h[mu][be].scale_int(delta(al, nu)))
                        .sub(&right_j(&g.h, al, mu, nv).scale_int(j_entry(be, nu)))
                        .add(&left_j(&g.h, be, nu, nv).scale_int(j_entry(mu, al)));
                    t.check(&g.h[al][be], &g.h[mu][nu], &rhs, &monomials)?;
                }
            }
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("[H_ab,H_cd] = d_bc H_ad - d_ad H_cb - J_bd (HJ)_ac + J_ca (JH)_db");
    for a in 0..c {
        for b in 0..c {
            for cc in 0..c {
                for d in 0..c {
                    let rhs = g.big_h[a][d]
                        .scale_int(delta(b, cc))
                        .sub(&g.big_h[cc][b].scale_int(delta(a, d)))
                        .sub(&right_j(&g.big_h, a, cc, nv).scale_int(j_entry(b, d)))
                        .add(&left_j(&g.big_h, d, b, nv).scale_int(j_entry(cc, a)));
                    t.check(&g.big_h[a][b], &g.big_h[cc][d], &rhs, &monomials)?;
                }
            }
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("[h_ab,H_cd] = 0");
    for al in 0..r {
        for be in 0..r {
            for a in 0..c {
                for b in 0..c {
                    t.check(&g.h[al][be], &g.big_h[a][b], &zero, &monomials)?;
                }
            }
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("[p_aa,h_mn] = -d_an p_ma - J_am (Jp)_na");
    for al in 0..r {
        for a in 0..c {
            for mu in 0..r {
                for nu in 0..r {
                    let rhs = g.p[mu][a]
                        .scale_int(-delta(al, nu))
                        .sub(&left_j(&g.p, nu, a, nv).scale_int(j_entry(al, mu)));
                    t.check(&g.p[al][a], &g.h[mu][nu], &rhs, &monomials)?;
                }
            }
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("[p_aa,H_bc] = -d_ac p_ab + J_ab (pJ)_ac");
    for al in 0..r {
        for a in 0..c {
            for b in 0..c {
                for cc in 0..c {
                    let rhs = g.p[al][b]
                        .scale_int(-delta(a, cc))
                        .add(&right_j(&g.p, al, cc, nv).scale_int(j_entry(a, b)));
                    t.check(&g.p[al][a], &g.big_h[b][cc], &rhs, &monomials)?;
                }
            }
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("[p_aa,p_bb] = -J_ab (hJ)_ab - J_ab (HJ)_ab");
    for al in 0..r {
        for a in 0..c {
            for be in 0..r {
                for b in 0..c {
                    let rhs = right_j(&g.h, al, be, nv)
                        .scale_int(-j_entry(a, b))
                        .sub(&right_j(&g.big_h, a, b, nv).scale_int(j_entry(al, be)));
                    t.check(&g.p[al][a], &g.p[be][b], &rhs, &monomials)?;
                }
            }
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("[pbar_aa,p_bb] = d_ab H_ba + d_ab h_ba");
    for al in 0..r {
        for a in 0..c {
            for be in 0..r {
                for b in 0..c {
                    let rhs = g.big_h[b][a]
                        .scale_int(delta(al, be))
                        .add(&g.h[be][al].scale_int(delta(a, b)));
                    t.check(&g.p_bar[al][a], &g.p[be][b], &rhs, &monomials)?;
                }
            }
        }
    }
    results.push(t.finish());

    // conj(h_ab) = -h_ba, conj(H_ab) = -H_ba, conj(p) = pbar
    let mut t = RelationTally::new("h* = -h");
    for al in 0..r {
        for be in 0..r {
            t.record(
                &alg.conjugate(&g.h[al][be]),
                None,
                &g.h[be][al].scale_int(-1),
                &monomials,
            );
        }
    }
    results.push(t.finish());
    let mut t = RelationTally::new("H* = -H");
    for a in 0..c {
        for b in 0..c {
            t.record(
                &alg.conjugate(&g.big_h[a][b]),
                None,
                &g.big_h[b][a].scale_int(-1),
                &monomials,
            );
        }
    }
    results.push(t.finish());
    let mut t = RelationTally::new("conj(p) = pbar");
    for al in 0..r {
        for a in 0..c {
            t.record(&alg.conjugate(&g.p[al][a]), None, &g.p_bar[al][a], &monomials);
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("p = (1 + zeta zeta-bar) dbar + zeta H = (1 + zeta zeta-bar) dbar + zeta h");
    for al in 0..r {
        for a in 0..c {
            t.record(&alg.p_via_big_h(al, a)?, None, &g.p[al][a], &monomials);
            t.record(&alg.p_via_h(al, a)?, None, &g.p[al][a], &monomials);
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("(Jh)' = Jh and (JH)' = JH");
    for i in 0..r {
        for j in 0..r {
            t.record(&left_j(&g.h, i, j, nv), None, &left_j(&g.h, j, i, nv), &monomials);
        }
    }
    for i in 0..c {
        for j in 0..c {
            t.record(
                &left_j(&g.big_h, i, j, nv),
                None,
                &left_j(&g.big_h, j, i, nv),
                &monomials,
            );
        }
    }
    results.push(t.finish());

    let mut t = RelationTally::new("p near the origin = dbar");
    for al in 0..r {
        for a in 0..c {
            t.record(
                &g.p[al][a].truncate_coefficients(1),
                None,
                &alg.d_bar(al, a),
                &monomials,
            );
        }
    }
    results.push(t.finish());

    let all_passed = results.iter().all(|r| r.passed);
    Ok(CommutationReport {
        k,
        n,
        max_degree,
        relations: results,
        all_passed,
    })
}

/// `lambda` with `op f = lambda f`, if `f` is a nonzero eigenvector.
pub fn eigenvalue(op: &DiffOperator, f: &PolyFunction) -> Option<GaussRational> {
    let (e, c) = f.terms().next()?;
    let image = op.apply(f);
    let lambda = image
        .terms()
        .find(|(ei, _)| *ei == e)
        .map(|(_, ci)| *ci / *c)
        .unwrap_or_else(GaussRational::zero);
    (image == f.scale(&lambda)).then_some(lambda)
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderStep {
    pub operator: String,
    pub cartan: String,
    pub start: i64,
    pub expected: i64,
    /// The image vanished, so the eigen-relation holds trivially.
    pub image_zero: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderReport {
    pub alpha: usize,
    pub a: usize,
    pub steps: Vec<LadderStep>,
    pub all_hold: bool,
}

fn integer_eigenvalue(op: &DiffOperator, f: &PolyFunction) -> Result<i64> {
    let l = eigenvalue(op, f).ok_or(Error::NotEigenvector)?;
    if !l.im.is_zero() || !l.re.is_integer() {
        return Err(Error::NotEigenvector);
    }
    Ok(l.re.to_integer())
}

/// Raising and lowering of Cartan eigenvalues by `p_{al a}` and
/// `pbar_{al a}`: with `h_a = H_{aa}` and `h_al = h_{al al}`, `p` raises
/// `h_a` and `pbar` lowers `h_al`; swapping `p` and `pbar` reverses both.
pub fn ladder_check(alg: &LieAlgebra, f: &PolyFunction, al: usize, a: usize) -> Result<LadderReport> {
    let ha = alg.big_h(a, a)?;
    let hal = alg.h(al, al)?;
    let p = alg.p(al, a)?;
    let pb = alg.p_bar(al, a)?;
    let n_a = integer_eigenvalue(&ha, f)?;
    let n_al = integer_eigenvalue(&hal, f)?;
    let step = |op: &DiffOperator, op_name: &str, cartan: &DiffOperator, c_name: &str, start: i64, shift: i64| {
        let img = op.apply(f);
        let expected = start + shift;
        let holds = cartan.apply(&img) == img.scale(&gr(expected));
        LadderStep {
            operator: op_name.into(),
            cartan: c_name.into(),
            start,
            expected,
            image_zero: img.is_zero(),
            holds,
        }
    };
    let steps = vec![
        step(&p, "p", &ha, "H_aa", n_a, 1),
        step(&pb, "pbar", &hal, "h_alal", n_al, -1),
        step(&pb, "pbar", &ha, "H_aa", n_a, -1),
        step(&p, "p", &hal, "h_alal", n_al, 1),
    ];
    let all_hold = steps.iter().all(|s| s.holds);
    Ok(LadderReport {
        alpha: al,
        a,
        steps,
        all_hold,
    })
}

/// Monomial from an exponent vector.
pub fn monomial(alg: &LieAlgebra, exps: Exponents) -> Result<PolyFunction> {
    if exps.len() != alg.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for {} variables",
            exps.len(),
            alg.nvars()
        )));
    }
    Ok(PolyFunction::monomial(exps, GaussRational::one()))
}
