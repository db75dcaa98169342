use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::constants::PhysicalConstants;
use super::imz::ImZMatrix;
use crate::error::{Error, Result};
use crate::exact::{format_rational, to_f64, Rational};
use crate::hydrogen::{format_float, Orbital};

/// One eigenvalue of `Im Z`, shared by the `2l+1` states of angular momentum `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub l: u32,
    pub multiplicity: usize,
    pub exact: Option<Rational>,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
    /// Largest deviation between the read-off diagonal and a dense eigensolver.
    pub crosscheck_deviation: f64,
}

impl Spectrum {
    pub fn kernel_dimension(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|e| match &e.exact {
                Some(q) => *q == Rational::from_integer(0.into()),
                None => e.value == 0.0,
            })
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.kernel_dimension() == 0 && self.eigenvalues.iter().all(|e| e.value > 0.0)
    }
}

/// Reads the eigenvalues off the diagonal, which rotational invariance forces
/// in the `(l, m)` basis; a dense symmetric eigensolve is run alongside.
pub fn diagonalize(matrix: &ImZMatrix) -> Result<Spectrum> {
    let dim = matrix.dim();
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            let nonzero = match matrix.exact_entry(i, j) {
                Some(e) => !e.is_zero(),
                None => {
                    matrix.value(i, j).abs() > 1e-14 * matrix.values().amax().max(f64::MIN_POSITIVE)
                }
            };
            if nonzero {
                return Err(Error::Consistency(format!(
                    "Im Z has a nonzero off-diagonal entry at ({i}, {j})"
                )));
            }
        }
    }
    let mut by_l: BTreeMap<u32, Eigenvalue> = BTreeMap::new();
    for (i, orbital) in matrix.basis.iter().enumerate() {
        let exact = matrix.exact_entry(i, i).map(|e| {
            e.as_rational()
                .ok_or_else(|| Error::Consistency(format!("diagonal entry {e} is irrational")))
        });
        let exact = exact.transpose()?;
        let value = matrix.value(i, i);
        match by_l.get_mut(&orbital.l()) {
            Some(ev) => {
                let same = match (&ev.exact, &exact) {
                    (Some(a), Some(b)) => a == b,
                    _ => (ev.value - value).abs() <= 1e-14 * ev.value.abs().max(1e-300),
                };
                if !same {
                    return Err(Error::Consistency(format!(
                        "Im Z diagonal depends on m for l = {}",
                        orbital.l()
                    )));
                }
                ev.multiplicity += 1;
            }
            None => {
                by_l.insert(
                    orbital.l(),
                    Eigenvalue {
                        l: orbital.l(),
                        multiplicity: 1,
                        exact,
                        value,
                    },
                );
            }
        }
    }
    let mut dense: Vec<f64> = matrix
        .values()
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    dense.sort_by(f64::total_cmp);
    let mut read: Vec<f64> = (0..dim).map(|i| matrix.value(i, i)).collect();
    read.sort_by(f64::total_cmp);
    let crosscheck_deviation = dense
        .iter()
        .zip(&read)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(Spectrum {
        eigenvalues: by_l.into_values().collect(),
        crosscheck_deviation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lifetime {
    Seconds(f64),
    /// Zero eigenvalue: no electric-dipole decay channel.
    InfiniteAtE1Order,
}

impl Lifetime {
    pub fn seconds(&self) -> Option<f64> {
        match self {
            Lifetime::Seconds(s) => Some(*s),
            Lifetime::InfiniteAtE1Order => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StateLifetime {
    pub orbital: Orbital,
    pub exact: Option<Rational>,
    pub value: f64,
    pub lifetime: Lifetime,
}

#[derive(Clone, Debug)]
pub struct LinewidthReport {
    pub matrix: ImZMatrix,
    pub spectrum: Spectrum,
    pub states: Vec<StateLifetime>,
    pub constants: PhysicalConstants,
}

/// `tau = hbar / (4 alpha^5 m c^2 lambda)` for every basis state.
pub fn lifetimes(matrix: &ImZMatrix, constants: &PhysicalConstants) -> Result<LinewidthReport> {
    let constants = PhysicalConstants::new(
        constants.alpha,
        constants.m_kg,
        constants.c_mps,
        constants.hbar_js,
    )?;
    let spectrum = diagonalize(matrix)?;
    let factor = constants.rate_factor();
    let states = matrix
        .basis
        .iter()
        .map(|orbital| {
            let ev = spectrum
                .eigenvalues
                .iter()
                .find(|e| e.l == orbital.l())
                .expect("every l has an eigenvalue");
            // rationals become floats only here
            let value = ev.exact.as_ref().map(to_f64).unwrap_or(ev.value);
            let lifetime = if value > 0.0 {
                Lifetime::Seconds(1.0 / (factor * value))
            } else {
                Lifetime::InfiniteAtE1Order
            };
            StateLifetime {
                orbital: *orbital,
                exact: ev.exact.clone(),
                value,
                lifetime,
            }
        })
        .collect();
    Ok(LinewidthReport {
        matrix: matrix.clone(),
        spectrum,
        states,
        constants,
    })
}

fn entry_text(m: &ImZMatrix, i: usize, j: usize) -> String {
    match m.exact_entry(i, j) {
        Some(e) => match e.as_rational() {
            Some(q) => format_rational(&q),
            None => e.to_string(),
        },
        None => format_float(m.value(i, j)),
    }
}

fn lifetime_text(l: &Lifetime) -> String {
    match l {
        Lifetime::Seconds(s) => format!("{s:.5e}"),
        Lifetime::InfiniteAtE1Order => "inf".to_string(),
    }
}

/// Convention tags printed with every result.
pub fn convention_lines(matrix: &ImZMatrix) -> Vec<String> {
    vec![
        format!("prefactor: {}", matrix.form.prefactor_tag()),
        "phase: Condon-Shortley spherical harmonics, radial sign as in R_{n,l}".to_string(),
        "units: length = a0/2, energy = 4 Ry, E_n = -1/(4 n^2)".to_string(),
        format!("cutoff: {}", matrix.cutoff),
    ]
}

/// Full matrix with exact `num/den` entries (or floats for a soft cutoff).
pub fn format_matrix_exact(m: &ImZMatrix) -> String {
    let mut out = String::new();
    for line in convention_lines(m) {
        let _ = writeln!(out, "# {line}");
    }
    if let Some(w) = &m.warning {
        let _ = writeln!(out, "# warning: {w}");
    }
    let _ = writeln!(
        out,
        "# level n={} basis (n,l,m): {}",
        m.n,
        m.basis
            .iter()
            .map(Orbital::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|j| entry_text(m, i, j)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn format_matrix_json(m: &ImZMatrix) -> Value {
    let rows: Vec<Vec<Value>> = (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| json!(entry_text(m, i, j))).collect())
        .collect();
    json!({
        "n": m.n,
        "basis": m.basis.iter().map(Orbital::to_string).collect::<Vec<_>>(),
        "exact": m.is_exact(),
        "conventions": convention_lines(m),
        "warning": m.warning,
        "entries": rows,
    })
}

/// CSV with header `state,l,m,ImZ,lifetime_s`.
pub fn format_report_csv(report: &LinewidthReport) -> String {
    let mut out = String::from("state,l,m,ImZ,lifetime_s\n");
    for s in &report.states {
        let imz = match &s.exact {
            Some(q) => format_rational(q),
            None => format_float(s.value),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            s.orbital.label(),
            s.orbital.l(),
            s.orbital.m(),
            imz,
            lifetime_text(&s.lifetime)
        );
    }
    out
}

pub fn format_report_json(report: &LinewidthReport) -> Value {
    let c = &report.constants;
    json!({
        "n": report.matrix.n,
        "conventions": convention_lines(&report.matrix),
        "constants": { "alpha": c.alpha, "m_kg": c.m_kg, "c_mps": c.c_mps, "hbar_Js": c.hbar_js },
        "eigenvalues": report.spectrum.eigenvalues.iter().map(|e| json!({
            "l": e.l,
            "multiplicity": e.multiplicity,
            "exact": e.exact.as_ref().map(format_rational),
            "value": e.value,
        })).collect::<Vec<_>>(),
        "states": report.states.iter().map(|s| json!({
            "state": s.orbital.to_string(),
            "ImZ": s.exact.as_ref().map(format_rational).unwrap_or_else(|| format_float(s.value)),
            "lifetime_s": s.lifetime.seconds(),
        })).collect::<Vec<_>>(),
    })
}

/// Human-readable table: one line per eigenvalue with its lifetime.
pub fn format_report_text(report: &LinewidthReport) -> String {
    let mut out = String::new();
    for line in convention_lines(&report.matrix) {
        let _ = writeln!(out, "# {line}");
    }
    let c = &report.constants;
    let _ = writeln!(
        out,
        "# constants: alpha={:e} m_kg={:e} c_mps={:e} hbar_Js={:e}",
        c.alpha, c.m_kg, c.c_mps, c.hbar_js
    );
    if let Some(w) = &report.matrix.warning {
        let _ = writeln!(out, "# warning: {w}");
    }
    let _ = writeln!(out, "l  mult  ImZ  lifetime_s");
    for ev in &report.spectrum.eigenvalues {
        let state = report
            .states
            .iter()
            .find(|s| s.orbital.l() == ev.l)
            .expect("state for every l");
        let imz = ev
            .exact
            .as_ref()
            .map(format_rational)
            .unwrap_or_else(|| format_float(ev.value));
        let lt = match state.lifetime {
            Lifetime::Seconds(s) => format!("{s:.5e}"),
            Lifetime::InfiniteAtE1Order => "infinite at E1 order".to_string(),
        };
        let _ = writeln!(out, "{}  {}  {}  {}", ev.l, ev.multiplicity, imz, lt);
    }
    out
}
