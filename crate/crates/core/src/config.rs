//! Numerical tolerances shared by the checks in this crate.
//!
//! The algebraic identities are exact; floating point needs declared slack.
//! Two global defaults cover most checks: `identity` for quantities computed
//! directly and `differentiated` for anything produced by finite
//! differences. Individual checks may carry tighter or looser pinned values,
//! which live next to the check itself.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Identity checks on directly computed values.
    pub identity: f64,
    /// Checks on quantities obtained by numerical differentiation.
    pub differentiated: f64,
    /// Quaternionic-structure residual accepted when mapping a complex
    /// result back to quaternion form.
    pub structure: f64,
    /// Relative tolerance when pairing the doubled eigenvalues of a
    /// complex embedding.
    pub pairing: f64,
    /// Condition number above which a denominator counts as singular.
    pub max_condition: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: 1e-10,
            differentiated: 1e-6,
            structure: 1e-9,
            pairing: 1e-8,
            max_condition: 1e12,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 5] = ["identity", "differentiated", "structure", "pairing", "max_condition"];

    /// Set one tolerance by name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Parse(format!("tolerance {key} must be positive, got {value}")));
        }
        match key {
            "identity" => self.identity = value,
            "differentiated" => self.differentiated = value,
            "structure" => self.structure = value,
            "pairing" => self.pairing = value,
            "max_condition" => self.max_condition = value,
            _ => return Err(Error::Parse(format!("unknown tolerance key '{key}'"))),
        }
        Ok(())
    }

    /// Apply `KEY=VAL` overrides in order.
    pub fn with_overrides<'a, I>(mut self, overrides: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        for spec in overrides {
            let (key, val) = spec
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected KEY=VAL, got '{spec}'")))?;
            let value: f64 = val
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number in '{spec}'")))?;
            self.set(key.trim(), value)?;
        }
        Ok(self)
    }

    pub fn as_map(&self) -> BTreeMap<&'static str, f64> {
        BTreeMap::from([
            ("identity", self.identity),
            ("differentiated", self.differentiated),
            ("structure", self.structure),
            ("pairing", self.pairing),
            ("max_condition", self.max_condition),
        ])
    }
}
