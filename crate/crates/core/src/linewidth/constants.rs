use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Constants used to convert decay rates to SI lifetimes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    pub alpha: f64,
    pub m_kg: f64,
    pub c_mps: f64,
    pub hbar_js: f64,
}

impl Default for PhysicalConstants {
    /// Five- and six-digit values that reproduce the reference lifetimes.
    fn default() -> Self {
        Self {
            alpha: 7.29735e-3,
            m_kg: 9.10939e-31,
            c_mps: 2.99792e8,
            hbar_js: 1.05457e-34,
        }
    }
}

const KEYS: [&str; 4] = ["alpha", "m_kg", "c_mps", "hbar_Js"];

impl PhysicalConstants {
    pub fn new(alpha: f64, m_kg: f64, c_mps: f64, hbar_js: f64) -> Result<Self> {
        let c = Self {
            alpha,
            m_kg,
            c_mps,
            hbar_js,
        };
        for (key, v) in KEYS.iter().zip(c.values()) {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!(
                    "constant {key} must be positive, got {v}"
                )));
            }
        }
        Ok(c)
    }

    fn values(&self) -> [f64; 4] {
        [self.alpha, self.m_kg, self.c_mps, self.hbar_js]
    }

    /// Parses a flat `key=value` file with keys `alpha`, `m_kg`, `c_mps`, `hbar_Js`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut found: BTreeMap<&str, f64> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config {
                line: idx + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {raw:?}")))?;
            let key = key.trim();
            let known = KEYS
                .iter()
                .find(|k| **k == key)
                .ok_or_else(|| err(format!("unknown constant {key:?}")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("value of {key} is not a number")))?;
            found.insert(known, value);
        }
        let get = |key: &str| {
            found
                .get(key)
                .copied()
                .ok_or_else(|| Error::invalid(format!("constants file is missing key {key}")))
        };
        Self::new(get("alpha")?, get("m_kg")?, get("c_mps")?, get("hbar_Js")?)
    }

    pub fn to_key_values(&self) -> String {
        KEYS.iter()
            .zip(self.values())
            .map(|(k, v)| format!("{k}={v:e}\n"))
            .collect()
    }

    /// `2 * (2 alpha^5 m c^2 / hbar)`: converts an eigenvalue of `Im Z` into a
    /// decay rate of the survival probability in 1/s.
    pub fn rate_factor(&self) -> f64 {
        4.0 * self.alpha.powi(5) * self.m_kg * self.c_mps * self.c_mps / self.hbar_js
    }
}
