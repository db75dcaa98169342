//! Flat `key=value` configuration for the toy model.
//!
//! ```text
//! # two-level demo
//! levels = -1/4, -1/16      # energies, increasing
//! degeneracies = 1, 1
//! target = 1                # index j of the decaying level
//! grid = tanh               # tanh | linear
//! nodes = 400
//! omega_max = 1.875         # default 10 (E_j - E_0)
//! grid_center = 0.1875      # tanh only; default E_j - E_0
//! grid_width = 0.5625       # tanh only; default 3 (E_j - E_0)
//! profile = sqrt_gauss      # sqrt_gauss: G = w^(1/2) e^(-w^2) | flat: G = 1
//! coupling = 0, 1; 1, 0     # symmetric matrix over electronic states, rows split by ';'
//! g = 0.05
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, to_f64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    Linear,
    /// Nodes equidistant in `tanh((w - center)/width)`.
    Tanh,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CouplingProfile {
    /// `G(w) = w^(1/2) exp(-w^2)`, spectral density `w exp(-2 w^2)`.
    SqrtGauss,
    /// `G(w) = 1`.
    Flat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelConfig {
    pub levels: Vec<f64>,
    pub degeneracies: Vec<usize>,
    pub target: usize,
    pub grid: GridKind,
    pub nodes: usize,
    pub omega_max: Option<f64>,
    pub grid_center: Option<f64>,
    pub grid_width: Option<f64>,
    pub profile: CouplingProfile,
    /// Row-major, `states x states`.
    pub coupling: Vec<Vec<f64>>,
    pub g: f64,
}

impl Default for ModelConfig {
    /// Hydrogen-like levels `-1/4, -1/16` coupled through one emission channel.
    fn default() -> Self {
        Self {
            levels: vec![-0.25, -0.0625],
            degeneracies: vec![1, 1],
            target: 1,
            grid: GridKind::Tanh,
            nodes: 400,
            omega_max: None,
            grid_center: None,
            grid_width: None,
            profile: CouplingProfile::SqrtGauss,
            coupling: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            g: 0.05,
        }
    }
}

fn number(text: &str) -> Option<f64> {
    text.trim()
        .parse::<f64>()
        .ok()
        .or_else(|| parse_rational(text).ok().map(|q| to_f64(&q)))
}

fn list(text: &str) -> Option<Vec<f64>> {
    text.split(',').map(number).collect()
}

impl ModelConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ModelConfig::default();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        let mut coupling_line = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {raw:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(prev) = seen.insert(key.to_string(), line_no) {
                return Err(err(format!("duplicate key {key:?} (first on line {prev})")));
            }
            let bad = |what: &str| err(format!("{key}: expected {what}, got {value:?}"));
            match key {
                "levels" => {
                    cfg.levels = list(value).ok_or_else(|| bad("comma-separated numbers"))?
                }
                "degeneracies" => {
                    cfg.degeneracies = value
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad("comma-separated positive integers"))?
                }
                "target" => cfg.target = value.parse().map_err(|_| bad("a level index"))?,
                "grid" => {
                    cfg.grid = match value {
                        "linear" => GridKind::Linear,
                        "tanh" => GridKind::Tanh,
                        _ => return Err(bad("linear or tanh")),
                    }
                }
                "nodes" => cfg.nodes = value.parse().map_err(|_| bad("a node count"))?,
                "omega_max" => cfg.omega_max = Some(number(value).ok_or_else(|| bad("a number"))?),
                "grid_center" => {
                    cfg.grid_center = Some(number(value).ok_or_else(|| bad("a number"))?)
                }
                "grid_width" => {
                    cfg.grid_width = Some(number(value).ok_or_else(|| bad("a number"))?)
                }
                "profile" => {
                    cfg.profile = match value {
                        "sqrt_gauss" => CouplingProfile::SqrtGauss,
                        "flat" => CouplingProfile::Flat,
                        _ => return Err(bad("sqrt_gauss or flat")),
                    }
                }
                "coupling" => {
                    cfg.coupling = value
                        .split(';')
                        .map(list)
                        .collect::<Option<_>>()
                        .ok_or_else(|| bad("rows of numbers separated by ';'"))?;
                    coupling_line = Some(line_no);
                }
                "g" => cfg.g = number(value).ok_or_else(|| bad("a number"))?,
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        if !seen.contains_key("degeneracies") {
            cfg.degeneracies = vec![1; cfg.levels.len()];
        } else if cfg.degeneracies.len() != cfg.levels.len() {
            return Err(Error::Config {
                line: seen["degeneracies"],
                message: format!(
                    "{} degeneracies for {} levels",
                    cfg.degeneracies.len(),
                    cfg.levels.len()
                ),
            });
        }
        let states: usize = cfg.degeneracies.iter().sum();
        if cfg.coupling.len() != states || cfg.coupling.iter().any(|r| r.len() != states) {
            return Err(Error::Config {
                line: coupling_line
                    .or_else(|| seen.get("levels").copied())
                    .unwrap_or(0),
                message: format!("coupling must be a {states}x{states} matrix"),
            });
        }
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = String::new();
        out.push_str(&format!("levels = {}\n", join(&self.levels)));
        out.push_str(&format!(
            "degeneracies = {}\n",
            self.degeneracies
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!("target = {}\n", self.target));
        out.push_str(&format!(
            "grid = {}\n",
            match self.grid {
                GridKind::Linear => "linear",
                GridKind::Tanh => "tanh",
            }
        ));
        out.push_str(&format!("nodes = {}\n", self.nodes));
        if let Some(w) = self.omega_max {
            out.push_str(&format!("omega_max = {w}\n"));
        }
        if let Some(c) = self.grid_center {
            out.push_str(&format!("grid_center = {c}\n"));
        }
        if let Some(w) = self.grid_width {
            out.push_str(&format!("grid_width = {w}\n"));
        }
        out.push_str(&format!(
            "profile = {}\n",
            match self.profile {
                CouplingProfile::SqrtGauss => "sqrt_gauss",
                CouplingProfile::Flat => "flat",
            }
        ));
        out.push_str(&format!(
            "coupling = {}\n",
            self.coupling
                .iter()
                .map(|r| join(r))
                .collect::<Vec<_>>()
                .join("; ")
        ));
        out.push_str(&format!("g = {}\n", self.g));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips() {
        let cfg = ModelConfig::default();
        assert_eq!(ModelConfig::parse(&cfg.to_text()).unwrap(), cfg);
        assert_eq!(ModelConfig::parse("").unwrap(), cfg);
    }

    #[test]
    fn parses_rationals_and_comments() {
        let cfg = ModelConfig::parse("levels = -1/4, -1/16 # hydrogen\ng = 0.1\n").unwrap();
        assert_eq!(cfg.levels, vec![-0.25, -0.0625]);
        assert_eq!(cfg.g, 0.1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = ModelConfig::parse("g = 0.1\n\nfoo = 3\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 3, .. }), "{e}");
        let e = ModelConfig::parse("g = abc\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 1, .. }));
        let e = ModelConfig::parse("g = 1\ng = 2\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }));
        let e = ModelConfig::parse("levels = -1, -0.5, -0.1\n").unwrap_err();
        assert!(matches!(e, Error::Config { .. }), "{e}");
        let e = ModelConfig::parse("levels=-1,-0.5\ndegeneracies = 1,1,1\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }));
    }
}
