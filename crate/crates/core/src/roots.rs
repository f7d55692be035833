//! The C_n root system of sp(n), subalgebra embeddings, and weight labels.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Roots `+-L_i +- L_j (i < j)` and `+-2 L_i` in the `L` basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub n: usize,
    pub roots: Vec<Vec<i32>>,
}

impl RootSystem {
    pub fn generate(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank("rank must be at least 1".into()));
        }
        let mut roots = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for s in [2, -2] {
                let mut v = vec![0; n];
                v[i] = s;
                roots.push(v);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut v = vec![0; n];
                    v[i] = si;
                    v[j] = sj;
                    roots.push(v);
                }
            }
        }
        roots.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { n, roots })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &[i32]) -> bool {
        v.len() == self.n && self.roots.binary_search_by(|r| v.cmp(r.as_slice())).is_ok()
    }

    pub fn closed_under_negation(&self) -> bool {
        self.roots
            .iter()
            .all(|r| self.contains(&r.iter().map(|x| -x).collect::<Vec<_>>()))
    }

    pub fn has_duplicates(&self) -> bool {
        self.roots.windows(2).any(|w| w[0] == w[1])
    }
}

/// Every root of sp(m), zero padded, is a root of sp(n).
pub fn embed_check(m: usize, n: usize) -> Result<bool> {
    if m == 0 || m >= n {
        return Err(Error::InvalidRank(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    let small = RootSystem::generate(m)?;
    let big = RootSystem::generate(n)?;
    Ok(small.roots.iter().all(|r| {
        let mut v = r.clone();
        v.resize(n, 0);
        big.contains(&v)
    }))
}

/// Plot coordinates for a root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Projection {
    /// `L_i` along the unit vector at angle `pi i / n`, so each `+-2 L_i`
    /// lies on its own axis line.
    Planar,
    /// The first three coordinates.
    Spatial,
}

pub fn project(root: &[i32], projection: Projection) -> Vec<f64> {
    match projection {
        Projection::Planar => {
            let n = root.len() as f64;
            let mut p = [0.0; 2];
            for (i, &c) in root.iter().enumerate() {
                let a = PI * i as f64 / n;
                p[0] += c as f64 * a.cos();
                p[1] += c as f64 * a.sin();
            }
            p.iter().map(|v| if v.abs() < 1e-12 { 0.0 } else { *v }).collect()
        }
        Projection::Spatial => (0..3).map(|i| root.get(i).copied().unwrap_or(0) as f64).collect(),
    }
}

/// Quaternion unit used as a colour marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Color {
    I,
    J,
    K,
}

impl Color {
    fn as_char(self) -> char {
        match self {
            Color::I => 'i',
            Color::J => 'j',
            Color::K => 'k',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'i' => Some(Color::I),
            'j' => Some(Color::J),
            'k' => Some(Color::K),
            _ => None,
        }
    }
}

/// A weight `sum_i c_i L_i` with an optional colour.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Weight {
    pub coeffs: Vec<i32>,
    pub color: Option<Color>,
}

impl Weight {
    pub fn new(coeffs: Vec<i32>, color: Option<Color>) -> Self {
        Self { coeffs, color }
    }

    /// `c L_i` (index from 1).
    pub fn single(i: usize, c: i32, color: Option<Color>) -> Self {
        let mut coeffs = vec![0; i];
        coeffs[i - 1] = c;
        Self { coeffs, color }
    }
}

/// One `c L_i` term of a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Constituent {
    /// From 1.
    pub index: usize,
    pub coeff: i32,
    pub color: Option<Color>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParticleClass {
    Lepton,
    Meson,
    Baryon,
}

impl fmt::Display for ParticleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParticleClass::Lepton => "lepton",
            ParticleClass::Meson => "meson",
            ParticleClass::Baryon => "baryon",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParticleLabel {
    /// Flavour letters only, e.g. `"uud"`.
    pub letters: String,
    /// Letters with colour tags, e.g. `"u[i]u[j]d[k]"`.
    pub text: String,
    pub class: ParticleClass,
    pub constituents: Vec<Constituent>,
}

const MACRON: char = '\u{304}';

/// `u, d, s, c`, then `q5, q6, ...`.
pub fn flavour(index: usize) -> String {
    match index {
        1 => "u".into(),
        2 => "d".into(),
        3 => "s".into(),
        4 => "c".into(),
        i => format!("q{i}"),
    }
}

fn barred(index: usize) -> String {
    match index {
        // precomposed where one exists
        1 => "\u{16b}".into(),
        i => format!("{}{MACRON}", flavour(i)),
    }
}

fn constituent_text(c: &Constituent) -> String {
    let mag = c.coeff.unsigned_abs();
    let prefix = if mag > 1 { mag.to_string() } else { String::new() };
    let letter = if c.coeff < 0 { barred(c.index) } else { flavour(c.index) };
    format!("{prefix}{letter}")
}

/// Flatten weights into their nonzero `c L_i` terms; one term is a lepton,
/// two a meson, three a baryon.
pub fn particle_label(weights: &[Weight]) -> Result<ParticleLabel> {
    let constituents: Vec<Constituent> = weights
        .iter()
        .flat_map(|w| {
            w.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(move |(i, &c)| Constituent {
                    index: i + 1,
                    coeff: c,
                    color: w.color,
                })
        })
        .collect();
    let class = match constituents.len() {
        1 => ParticleClass::Lepton,
        2 => ParticleClass::Meson,
        3 => ParticleClass::Baryon,
        k => return Err(Error::UnsupportedWeightCount(k)),
    };
    let letters: String = constituents.iter().map(constituent_text).collect();
    let text: String = constituents
        .iter()
        .map(|c| match c.color {
            Some(col) => format!("{}[{}]", constituent_text(c), col.as_char()),
            None => constituent_text(c),
        })
        .collect();
    Ok(ParticleLabel {
        letters,
        text,
        class,
        constituents,
    })
}

/// Inverse of [`ParticleLabel::text`].
pub fn parse_label(s: &str) -> Result<Vec<Constituent>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |m: &str| Error::Parse(format!("{m} in label '{s}'"));
    while i < chars.len() {
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let mag: i32 = if i > start {
            chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| err("bad multiplicity"))?
        } else {
            1
        };
        let (index, mut negative) = match chars.get(i) {
            Some('u') => (1, false),
            Some('\u{16b}') => (1, true),
            Some('d') => (2, false),
            Some('s') => (3, false),
            Some('c') => (4, false),
            Some('q') => {
                let s0 = i + 1;
                let mut e = s0;
                while e < chars.len() && chars[e].is_ascii_digit() {
                    e += 1;
                }
                let idx: usize = chars[s0..e]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err("bad flavour index"))?;
                if idx < 5 {
                    return Err(err("q-flavours start at q5"));
                }
                i = e - 1;
                (idx, false)
            }
            _ => return Err(err("expected a flavour letter")),
        };
        i += 1;
        if chars.get(i) == Some(&MACRON) {
            if negative {
                return Err(err("double bar"));
            }
            negative = true;
            i += 1;
        }
        let color = if chars.get(i) == Some(&'[') {
            let col = chars
                .get(i + 1)
                .and_then(|&c| Color::from_char(c))
                .ok_or_else(|| err("bad colour"))?;
            if chars.get(i + 2) != Some(&']') {
                return Err(err("unclosed colour"));
            }
            i += 3;
            Some(col)
        } else {
            None
        };
        out.push(Constituent {
            index,
            coeff: if negative { -mag } else { mag },
            color,
        });
    }
    Ok(out)
}

/// Euler characteristic of an even-dimensional sphere, `1 + (-1)^d`.
pub fn euler_characteristic(sphere_dim: usize) -> Result<i64> {
    if sphere_dim < 2 || sphere_dim % 2 == 1 {
        return Err(Error::OddDimension(sphere_dim));
    }
    Ok(1 + (-1i64).pow(sphere_dim as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_closure() {
        let r1 = RootSystem::generate(1).unwrap();
        assert_eq!(r1.roots, vec![vec![2], vec![-2]]);
        for n in 1..=6 {
            let r = RootSystem::generate(n).unwrap();
            assert_eq!(r.len(), 2 * n * n);
            assert!(r.closed_under_negation());
            assert!(!r.has_duplicates());
        }
        assert!(RootSystem::generate(0).is_err());
    }

    #[test]
    fn sp3_roots() {
        // brute force over {-2..2}^3 with the defining shape
        let r = RootSystem::generate(3).unwrap();
        let mut count = 0;
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let v = [a, b, c];
                    let nz: Vec<i32> = v.iter().copied().filter(|x| *x != 0).collect();
                    let is_root =
                        (nz.len() == 1 && nz[0].abs() == 2) || (nz.len() == 2 && nz.iter().all(|x| x.abs() == 1));
                    assert_eq!(r.contains(&v), is_root, "{v:?}");
                    count += is_root as usize;
                }
            }
        }
        assert_eq!(count, 18);
        assert!(!r.contains(&[1, 1, 1]));
    }

    #[test]
    fn embeddings() {
        assert!(embed_check(1, 2).unwrap());
        assert!(embed_check(2, 3).unwrap());
        for n in 2..=6 {
            for m in 1..n {
                assert!(embed_check(m, n).unwrap());
            }
        }
        assert!(embed_check(3, 3).is_err());
        assert!(embed_check(0, 3).is_err());
    }

    #[test]
    fn labels() {
        let lepton = particle_label(&[Weight::single(1, 2, None)]).unwrap();
        assert_eq!(lepton.class, ParticleClass::Lepton);
        let l2 = particle_label(&[Weight::single(3, -2, None)]).unwrap();
        assert_eq!(l2.class, ParticleClass::Lepton);
        let ud = particle_label(&[Weight::new(vec![1, 1], None)]).unwrap();
        assert_eq!(ud.letters, "ud");
        assert_eq!(ud.class, ParticleClass::Meson);
        let ubar_d = particle_label(&[Weight::new(vec![-1, 1], None)]).unwrap();
        assert_eq!(ubar_d.letters, "ūd");
        let p = particle_label(&[
            Weight::single(1, 1, Some(Color::I)),
            Weight::single(1, 1, Some(Color::J)),
            Weight::single(2, 1, Some(Color::K)),
        ])
        .unwrap();
        assert_eq!(p.letters, "uud");
        assert_eq!(p.text, "u[i]u[j]d[k]");
        assert_eq!(p.class, ParticleClass::Baryon);
        let q = particle_label(&[Weight::new(vec![0, 0, 0, 0, 1, -1], None)]).unwrap();
        assert_eq!(q.letters, "q5q6\u{304}");
        assert!(matches!(
            particle_label(&[Weight::new(vec![1, 1, 1, 1], None)]),
            Err(Error::UnsupportedWeightCount(4))
        ));
        assert!(matches!(particle_label(&[]), Err(Error::UnsupportedWeightCount(0))));
    }

    #[test]
    fn label_round_trip() {
        let cases = vec![
            vec![Weight::single(1, 2, None)],
            vec![Weight::single(2, -2, Some(Color::K))],
            vec![Weight::new(vec![-1, 0, 1], None)],
            vec![Weight::new(vec![0, -1, 0, -1], Some(Color::J))],
            vec![
                Weight::single(1, 1, Some(Color::I)),
                Weight::single(1, 1, Some(Color::J)),
                Weight::single(2, 1, Some(Color::K)),
            ],
            vec![
                Weight::new(vec![0, 0, 0, 0, 0, 0, -1], None),
                Weight::single(4, 1, Some(Color::I)),
            ],
        ];
        for ws in cases {
            let label = particle_label(&ws).unwrap();
            let mut back = parse_label(&label.text).unwrap();
            let mut orig = label.constituents.clone();
            back.sort();
            orig.sort();
            assert_eq!(back, orig, "{}", label.text);
        }
        assert!(parse_label("x").is_err());
        assert!(parse_label("u[m]").is_err());
    }

    #[test]
    fn projections() {
        let r = RootSystem::generate(3).unwrap();
        for i in 0..3 {
            for s in [2, -2] {
                let mut v = vec![0; 3];
                v[i] = s;
                assert!(r.contains(&v));
                let p = project(&v, Projection::Planar);
                let a = PI * i as f64 / 3.0;
                // parallel to axis i
                assert!((p[0] * a.sin() - p[1] * a.cos()).abs() < 1e-12);
                let q = project(&v, Projection::Spatial);
                assert_eq!(q.iter().filter(|x| **x != 0.0).count(), 1);
            }
        }
    }

    #[test]
    fn euler() {
        assert_eq!(euler_characteristic(4).unwrap(), 2);
        assert_eq!(euler_characteristic(12).unwrap(), 2);
        assert_eq!(euler_characteristic(2).unwrap(), 2);
        assert_eq!(euler_characteristic(3), Err(Error::OddDimension(3)));
        assert_eq!(euler_characteristic(0), Err(Error::OddDimension(0)));
    }
}
