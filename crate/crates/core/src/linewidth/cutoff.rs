use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{to_f64, Rational};

/// Ultraviolet cutoff `kappa` on photon energies: positive, `kappa(0+) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum CutoffFunction {
    /// `kappa = 1`, which keeps every matrix entry exact.
    One,
    /// `kappa(r) = exp(-r^4)`
    GaussianQuartic,
    /// Piecewise-linear interpolation of `(r, kappa)` samples starting at `(0, 1)`;
    /// held constant past the last node.
    Tabulated(Vec<(f64, f64)>),
}

impl CutoffFunction {
    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        let Some(&(r0, k0)) = points.first() else {
            return Err(Error::invalid("tabulated cutoff needs at least one point"));
        };
        if r0 != 0.0 || (k0 - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("tabulated cutoff must start at (0, 1)"));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::invalid(
                "tabulated cutoff nodes must be strictly increasing",
            ));
        }
        if points.iter().any(|&(_, k)| !(k >= 0.0) || !k.is_finite()) {
            return Err(Error::invalid(
                "tabulated cutoff values must be finite and nonnegative",
            ));
        }
        Ok(CutoffFunction::Tabulated(points))
    }

    /// Reads `r,kappa` lines; blank lines and `#` comments are skipped.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse = |s: &str| {
                s.trim().parse::<f64>().map_err(|_| Error::Config {
                    line: idx + 1,
                    message: format!("expected `r,kappa`, got {raw:?}"),
                })
            };
            let (r, k) = line.split_once(',').ok_or_else(|| Error::Config {
                line: idx + 1,
                message: format!("expected `r,kappa`, got {raw:?}"),
            })?;
            points.push((parse(r)?, parse(k)?));
        }
        Self::tabulated(points)
    }

    pub fn is_identically_one(&self) -> bool {
        matches!(self, CutoffFunction::One)
    }

    pub fn eval_f64(&self, r: f64) -> f64 {
        match self {
            CutoffFunction::One => 1.0,
            CutoffFunction::GaussianQuartic => (-r.powi(4)).exp(),
            CutoffFunction::Tabulated(points) => {
                let idx = points.partition_point(|&(x, _)| x <= r);
                if idx == 0 {
                    return points[0].1;
                }
                if idx == points.len() {
                    return points[idx - 1].1;
                }
                let (x0, y0) = points[idx - 1];
                let (x1, y1) = points[idx];
                y0 + (y1 - y0) * (r - x0) / (x1 - x0)
            }
        }
    }

    pub fn eval(&self, r: &Rational) -> f64 {
        self.eval_f64(to_f64(r))
    }
}

impl fmt::Display for CutoffFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutoffFunction::One => write!(f, "one"),
            CutoffFunction::GaussianQuartic => write!(f, "quartic"),
            CutoffFunction::Tabulated(p) => write!(f, "table({} points)", p.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(CutoffFunction::One.eval_f64(3.0), 1.0);
        let q = CutoffFunction::GaussianQuartic;
        assert_eq!(q.eval_f64(0.0), 1.0);
        assert!((q.eval_f64(1.0) - (-1f64).exp()).abs() < 1e-15);
        let t = CutoffFunction::parse_table("# r,k\n0,1\n1,0.5\n2,0\n").unwrap();
        assert_eq!(t.eval_f64(0.5), 0.75);
        assert_eq!(t.eval_f64(5.0), 0.0);
        assert!(CutoffFunction::parse_table("0.1,1\n").is_err());
        assert!(CutoffFunction::parse_table("0,1\n1,-1\n").is_err());
        assert!(matches!(
            CutoffFunction::parse_table("0,1\nnope\n"),
            Err(Error::Config { line: 2, .. })
        ));
    }
}
