//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{Num, One, Zero};

/// Coefficient ring for [`Poly`].
pub trait Coeff: Clone + PartialEq + Debug + Num + Neg<Output = Self> {
    /// `n * 1`.
    fn from_count(n: u32) -> Self {
        let mut c = Self::zero();
        for _ in 0..n {
            c = c + Self::one();
        }
        c
    }

    /// Complex conjugate; the identity on real rings.
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Coeff for Rational64 {
    fn from_count(n: u32) -> Self {
        Rational64::from_integer(n as i64)
    }
}

pub type GaussRational = Complex<Rational64>;

impl Coeff for GaussRational {
    fn from_count(n: u32) -> Self {
        Complex::new(Rational64::from_integer(n as i64), Rational64::zero())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u16>;

/// Canonical form: every stored coefficient is nonzero and exponent vectors
/// all have length `nvars`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exps: Exponents, c: C) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max()
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        if s.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c.clone() * C::from_count(e[i] as u32));
            }
        }
        out
    }

    /// Substitute `x_i -> sign_i x_{perm_i}`.
    pub fn signed_permute(&self, perm: &[usize], sign: &[bool]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; self.nvars];
            let mut negative = false;
            for (i, &k) in e.iter().enumerate() {
                e2[perm[i]] += k;
                if sign[i] && k % 2 == 1 {
                    negative = !negative;
                }
            }
            out.add_term(e2, if negative { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Conjugate every coefficient.
    pub fn conj_coeffs(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.conj());
        }
        out
    }

    /// Drop every term of total degree above `max`.
    pub fn truncate(&self, max: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().map(|&x| x as u32).sum::<u32>() <= max {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Evaluate with a caller-supplied coefficient map.
    pub fn eval_with<T, F>(&self, point: &[T], coeff: F) -> T
    where
        T: Clone + Num,
        F: Fn(&C) -> T,
    {
        let mut total = T::zero();
        for (e, c) in &self.terms {
            let mut term = coeff(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = term * x.clone();
                }
            }
            total = total + term;
        }
        total
    }

    /// Render with variable names from `name`; `coeff` formats a coefficient.
    pub fn render(&self, name: impl Fn(usize) -> String, coeff: impl Fn(&C) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(name(i)),
                    _ => factors.push(format!("{}^{k}", name(i))),
                }
            }
            let cs = coeff(c);
            parts.push(match (factors.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => factors.join("*"),
                (false, "-1") => format!("-{}", factors.join("*")),
                _ => format!("{cs}*{}", factors.join("*")),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// All monomials in `nvars` variables of total degree at most `max_degree`,
/// ordered by degree then lexicographically.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Exponents> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == nvars {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k as u16;
            rec(nvars, i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut layer = Vec::new();
        let mut cur = vec![0; nvars];
        rec(nvars, 0, d, &mut cur, &mut layer);
        layer.retain(|e| e.iter().map(|&x| x as u32).sum::<u32>() == d);
        out.extend(layer);
    }
    out
}

pub fn rational_to_string(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn gauss_to_string(c: &GaussRational) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => rational_to_string(&c.re),
        (true, false) if c.im == Rational64::one() => "i".into(),
        (true, false) if c.im == -Rational64::one() => "-i".into(),
        (true, false) => format!("{}i", rational_to_string(&c.im)),
        (false, false) => format!("({}+{}i)", rational_to_string(&c.re), rational_to_string(&c.im)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Rational64>;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn arithmetic_and_canonical_form() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let s = x.add(&y);
        let d = x.sub(&y);
        // (x + y)(x - y) = x^2 - y^2
        let prod = s.mul(&d);
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(prod, expect);
        assert!(x.sub(&x).is_zero());
        assert_eq!(s.pow(3).num_terms(), 4);
        assert_eq!(s.pow(3).degree(), Some(3));
        assert_eq!(P::zero(2).degree(), None);
    }

    #[test]
    fn derivative_rules() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.pow(3).mul(&y).scale(&r(2));
        assert_eq!(f.derivative(0), x.pow(2).mul(&y).scale(&r(6)));
        assert_eq!(f.derivative(1), x.pow(3).scale(&r(2)));
        assert!(P::one(2).derivative(0).is_zero());
    }

    #[test]
    fn signed_permutation() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        // x -> -y, y -> x
        let f = x.mul(&x).mul(&y);
        let g = f.signed_permute(&[1, 0], &[true, false]);
        assert_eq!(g, y.mul(&y).mul(&x));
        let h = x.signed_permute(&[1, 0], &[true, false]);
        assert_eq!(h, y.neg());
    }

    #[test]
    fn evaluation() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.mul(&y).add(&P::constant(2, r(3)));
        let v = f.eval_with(&[2.0, 5.0], |c| *c.numer() as f64 / *c.denom() as f64);
        assert_eq!(v, 13.0);
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_up_to(3, 2);
        assert_eq!(m.len(), 10);
        assert_eq!(m[0], vec![0, 0, 0]);
        assert_eq!(monomials_up_to(8, 3).len(), 165);
    }

    #[test]
    fn rendering() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.mul(&x).sub(&y.scale(&Rational64::new(1, 2)));
        let s = f.render(|i| ["x", "y"][i].to_string(), rational_to_string);
        assert_eq!(s, "-1/2*y + x^2");
    }
}
