//! The linear operator `p* = d_0 + i d_1 + j d_2 + k d_3` on quaternion
//! valued polynomial fields `psi = A_0 + A_1 i + A_2 j + A_3 k` in
//! `(x_0, x_1, x_2, x_3)`, with `x_0` the cyclic time.

use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{rational_to_string, Poly};
use crate::quaternion::Quaternion;

pub type RealPoly = Poly<Rational64>;

const NVARS: usize = 4;

fn var_name(i: usize) -> String {
    format!("x{i}")
}

/// Product of quaternions with polynomial components.
fn qmul(a: &[RealPoly; 4], b: &[RealPoly; 4]) -> [RealPoly; 4] {
    let m = |i: usize, j: usize| a[i].mul(&b[j]);
    [
        m(0, 0).sub(&m(1, 1)).sub(&m(2, 2)).sub(&m(3, 3)),
        m(0, 1).add(&m(1, 0)).add(&m(2, 3)).sub(&m(3, 2)),
        m(0, 2).sub(&m(1, 3)).add(&m(2, 0)).add(&m(3, 1)),
        m(0, 3).add(&m(1, 2)).sub(&m(2, 1)).add(&m(3, 0)),
    ]
}

fn unit(r: usize) -> [RealPoly; 4] {
    std::array::from_fn(|i| {
        if i == r {
            RealPoly::one(NVARS)
        } else {
            RealPoly::zero(NVARS)
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QPolyField {
    pub components: [RealPoly; 4],
}

impl QPolyField {
    pub fn zero() -> Self {
        Self {
            components: std::array::from_fn(|_| RealPoly::zero(NVARS)),
        }
    }

    pub fn new(components: [RealPoly; 4]) -> Result<Self> {
        if components.iter().any(|p| p.nvars() != NVARS) {
            return Err(Error::DimensionMismatch("field components need 4 variables".into()));
        }
        Ok(Self { components })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            components: std::array::from_fn(|i| self.components[i].add(&other.components[i])),
        }
    }

    pub fn scale(&self, c: Rational64) -> Self {
        Self {
            components: std::array::from_fn(|i| self.components[i].scale(&c)),
        }
    }

    pub fn scalar(&self) -> &RealPoly {
        &self.components[0]
    }

    pub fn vector(&self) -> [&RealPoly; 3] {
        [&self.components[1], &self.components[2], &self.components[3]]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RealPoly::is_zero)
    }

    /// Value at a point, as a floating quaternion.
    pub fn eval(&self, x: &[f64; 4]) -> Quaternion {
        let ev = |p: &RealPoly| p.eval_with(x, |c| *c.numer() as f64 / *c.denom() as f64);
        Quaternion::new(
            ev(&self.components[0]),
            ev(&self.components[1]),
            ev(&self.components[2]),
            ev(&self.components[3]),
        )
    }

    pub fn render(&self) -> [String; 4] {
        std::array::from_fn(|i| self.components[i].render(var_name, rational_to_string))
    }
}

/// `sum_r e_r d_r psi`, each term a quaternion product.
pub fn apply_pstar(psi: &QPolyField) -> QPolyField {
    let mut out = QPolyField::zero();
    for r in 0..NVARS {
        let d: [RealPoly; 4] = std::array::from_fn(|i| psi.components[i].derivative(r));
        let term = qmul(&unit(r), &d);
        for (o, t) in out.components.iter_mut().zip(&term) {
            *o = o.add(t);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldDecomposition {
    /// `A_{0,0} - div A`
    pub scalar: RealPoly,
    /// `-A_{,0} - grad A_0`
    pub e: [RealPoly; 3],
    /// `curl A`
    pub b: [RealPoly; 3],
    /// `p* psi` has scalar part `scalar` and vector part `-E + B`, as exact
    /// polynomial identities.
    pub consistent: bool,
}

impl FieldDecomposition {
    pub fn render(&self) -> RenderedDecomposition {
        let r = |p: &RealPoly| p.render(var_name, rational_to_string);
        RenderedDecomposition {
            scalar: r(&self.scalar),
            e: std::array::from_fn(|i| r(&self.e[i])),
            b: std::array::from_fn(|i| r(&self.b[i])),
            consistent: self.consistent,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RenderedDecomposition {
    pub scalar: String,
    pub e: [String; 3],
    pub b: [String; 3],
    pub consistent: bool,
}

/// Componentwise `E`, `B` and the scalar term, checked against `p* psi`.
pub fn decompose(psi: &QPolyField) -> FieldDecomposition {
    let a = &psi.components;
    let d = |c: usize, r: usize| a[c].derivative(r);
    let scalar = d(0, 0).sub(&d(1, 1)).sub(&d(2, 2)).sub(&d(3, 3));
    let e: [RealPoly; 3] = std::array::from_fn(|i| d(i + 1, 0).neg().sub(&d(0, i + 1)));
    let b = [d(3, 2).sub(&d(2, 3)), d(1, 3).sub(&d(3, 1)), d(2, 1).sub(&d(1, 2))];
    let image = apply_pstar(psi);
    let consistent = image.components[0] == scalar && (0..3).all(|i| image.components[i + 1] == b[i].sub(&e[i]));
    FieldDecomposition {
        scalar,
        e,
        b,
        consistent,
    }
}

/// `max |v w - [(v0 w0 - v.w) + (v0 w + w0 v + v x w)]|`.
pub fn quaternion_product_identity(v: Quaternion, w: Quaternion) -> f64 {
    let (a, b) = (v.vector(), w.vector());
    let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let assembled = Quaternion::new(
        v.w * w.w - dot,
        v.w * b[0] + w.w * a[0] + cross[0],
        v.w * b[1] + w.w * a[1] + cross[1],
        v.w * b[2] + w.w * a[2] + cross[2],
    );
    (v * w).max_abs_diff(assembled)
}

/// Random field with integer-over-small-denominator coefficients and
/// components of total degree at most `max_degree`.
pub fn random_field<R: Rng + ?Sized>(rng: &mut R, max_degree: u32, terms: usize) -> QPolyField {
    let components = std::array::from_fn(|_| {
        let mut p = RealPoly::zero(NVARS);
        for _ in 0..terms {
            let deg = rng.random_range(0..=max_degree);
            let mut e = vec![0u16; NVARS];
            for _ in 0..deg {
                e[rng.random_range(0..NVARS)] += 1;
            }
            let c = Rational64::new(rng.random_range(-9..=9), rng.random_range(1..=4));
            p.add_term(e, c);
        }
        p
    });
    QPolyField { components }
}

/// Parse `"A0=x0*x3; A1=-x2; A2=x1"`. Components may be separated by `;`
/// or given as separate strings; omitted ones are zero.
pub fn parse_field<S: AsRef<str>>(specs: &[S]) -> Result<QPolyField> {
    let mut out = QPolyField::zero();
    let mut seen = [false; 4];
    for spec in specs {
        for part in spec.as_ref().split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, expr) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected COMPONENT=POLY, got '{part}'")))?;
            let idx = match name.trim() {
                "A0" => 0,
                "A1" => 1,
                "A2" => 2,
                "A3" => 3,
                other => return Err(Error::Parse(format!("unknown component '{other}' (A0..A3)"))),
            };
            if seen[idx] {
                return Err(Error::Parse(format!("component A{idx} given twice")));
            }
            seen[idx] = true;
            out.components[idx] = parse_poly(expr)?;
        }
    }
    Ok(out)
}

/// Polynomial in `x0..x3`: integers, `+ - * / ^`, parentheses. Division is
/// only by constants.
pub fn parse_poly(s: &str) -> Result<RealPoly> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected trailing input in '{s}'")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Var(usize),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(
                text.parse().map_err(|_| Error::Parse(format!("bad number '{text}'")))?,
            ));
        } else if c == 'x' {
            match chars.get(i + 1).and_then(|d| d.to_digit(10)) {
                Some(d) if d < 4 => out.push(Tok::Var(d as usize)),
                _ => return Err(Error::Parse("variables are x0, x1, x2, x3".into())),
            }
            i += 2;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RealPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RealPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                let c = d.constant_term();
                if d.degree().unwrap_or(0) > 0 || c.is_zero() {
                    return Err(Error::Parse("division only by nonzero constants".into()));
                }
                acc = acc.scale(&(Rational64::one() / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RealPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) if (0..=64).contains(&n) => {
                    self.pos += 1;
                    Ok(base.pow(n as u32))
                }
                _ => Err(Error::Parse("exponent must be an integer in 0..=64".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RealPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RealPoly::constant(NVARS, Rational64::from_integer(n)))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(RealPoly::var(NVARS, i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
