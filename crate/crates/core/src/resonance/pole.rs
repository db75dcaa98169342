use nalgebra::DMatrix;
use num_complex::Complex64;

use super::model::ToyModel;
use super::zmatrix::{im_z_eigen, self_energy, z_matrix_toy, Sheet};
use crate::error::{Error, Result};

pub const POLE_TOLERANCE: f64 = 1e-12;
pub const MAX_NEWTON_STEPS: usize = 50;

#[derive(Clone, Debug)]
pub struct PoleResult {
    pub g: f64,
    pub z: Complex64,
    pub start: Complex64,
    /// Smallest singular value of `E_j - z - g^2 Q^II(z)` at the returned point.
    pub residual: f64,
    /// `(z, residual)` for every Newton iterate, starting point first.
    pub trace: Vec<(Complex64, f64)>,
}

impl PoleResult {
    pub fn iterations(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "g = {}\npole = {:.15e} {:+.15e}i\nresidual = {:.3e}\niterations = {}\n",
            self.g,
            self.z.re,
            self.z.im,
            self.residual,
            self.iterations()
        );
        out.push_str("trace:\n");
        for (i, (z, h)) in self.trace.iter().enumerate() {
            out.push_str(&format!(
                "  {i:2}  {:.15e} {:+.15e}i  |h| = {h:.3e}\n",
                z.re, z.im
            ));
        }
        out
    }
}

/// `E_j - z - g^2 Q^II(z)` on the target level.
fn pole_matrix(model: &ToyModel, g: f64, z: Complex64) -> Result<DMatrix<Complex64>> {
    let q = self_energy(model, z, Sheet::Second)?;
    let d = q.nrows();
    Ok(
        DMatrix::from_diagonal_element(d, d, Complex64::from(model.target_energy()) - z)
            - q * Complex64::from(g * g),
    )
}

/// Distance of `m` from the singular matrices.
fn smallest_singular_value(m: DMatrix<Complex64>) -> f64 {
    if m.nrows() == 1 {
        m[(0, 0)].norm()
    } else {
        m.singular_values().min()
    }
}

/// Newton iteration with a central-difference derivative, appending `(z, residual)` to `trace`.
fn newton(
    mut z: Complex64,
    step: f64,
    trace: &mut Vec<(Complex64, f64)>,
    f: impl Fn(Complex64) -> Result<(Complex64, f64)>,
) -> Result<Complex64> {
    let (mut h, mut residual) = f(z)?;
    if trace.last().map(|t| t.0) != Some(z) {
        trace.push((z, residual));
    }
    while residual >= POLE_TOLERANCE && trace.len() <= MAX_NEWTON_STEPS {
        let dh = (f(z + step)?.0 - f(z - step)?.0) / (2.0 * step);
        z -= h / dh;
        (h, residual) = f(z)?;
        trace.push((z, residual));
    }
    Ok(z)
}

/// Zero of `det(E_j - z - g^2 Q^II(z))` below the real axis.
///
/// Newton's method starts from `E_j - i g^2 lambda`, with `lambda` the largest eigenvalue
/// of `Im Z` and `v` its eigenvector. It first solves the projected scalar equation
/// `E_j - z - g^2 v^T Q^II(z) v = 0`, which is the whole problem on a non-degenerate level,
/// then polishes on the determinant. Starting on the decaying branch keeps the iteration
/// away from dark states whose pole stays at `E_j`. The residual is the smallest singular
/// value of `E_j - z - g^2 Q^II(z)`.
pub fn resonance_pole(model: &ToyModel, g: f64) -> Result<PoleResult> {
    if !(g.is_finite() && g >= 0.0) {
        return Err(Error::invalid(format!(
            "coupling strength must be >= 0, got {g}"
        )));
    }
    let e_j = Complex64::from(model.target_energy());
    if g == 0.0 {
        return Ok(PoleResult {
            g,
            z: e_j,
            start: e_j,
            residual: 0.0,
            trace: vec![(e_j, 0.0)],
        });
    }
    let (im_eigs, vectors) = im_z_eigen(&z_matrix_toy(model)?);
    let decay = im_eigs.last().copied().unwrap_or(0.0);
    let v = vectors.column(vectors.ncols() - 1).map(Complex64::from);
    let start = e_j - Complex64::new(0.0, g * g * decay);
    let step = 1e-6 * g * g * decay.max(1e-3);
    let mut trace = Vec::new();
    let projected = |z: Complex64| -> Result<(Complex64, f64)> {
        let m = pole_matrix(model, g, z)?;
        let h = (v.transpose() * m * &v)[(0, 0)];
        Ok((h, h.norm()))
    };
    let mut z = newton(start, step, &mut trace, projected)?;
    if v.len() > 1 {
        let full = |z: Complex64| -> Result<(Complex64, f64)> {
            let m = pole_matrix(model, g, z)?;
            Ok((m.clone().lu().determinant(), smallest_singular_value(m)))
        };
        z = newton(z, step, &mut trace, full)?;
    }
    let residual = trace.last().map(|t| t.1).unwrap_or(f64::INFINITY);
    let render = |trace: &[(Complex64, f64)]| {
        trace
            .iter()
            .map(|(z, h)| format!("({:.6e}{:+.6e}i, |h|={h:.2e})", z.re, z.im))
            .collect::<Vec<_>>()
            .join(" -> ")
    };
    if !(residual < POLE_TOLERANCE) {
        return Err(Error::NoConvergence {
            what: "resonance pole Newton iteration",
            iterations: trace.len() - 1,
            trace: render(&trace),
        });
    }
    if z.im >= 0.0 && decay > 0.0 {
        return Err(Error::Consistency(format!(
            "pole {z} is not below the real axis: {}",
            render(&trace)
        )));
    }
    Ok(PoleResult {
        g,
        z,
        start,
        residual,
        trace,
    })
}

#[derive(Clone, Debug)]
pub struct PoleScanRow {
    pub g: f64,
    pub pole: Complex64,
    /// `-Im z* / g^2`.
    pub scaled_width: f64,
    /// `|-Im z* / g^2 - Im Z|`.
    pub error: f64,
}

#[derive(Clone, Debug)]
pub struct PoleScan {
    pub im_z: f64,
    pub rows: Vec<PoleScanRow>,
}

impl PoleScan {
    /// Errors strictly decrease as `g` decreases.
    pub fn error_decreasing(&self) -> bool {
        let mut rows: Vec<&PoleScanRow> = self.rows.iter().collect();
        rows.sort_by(|a, b| b.g.total_cmp(&a.g));
        rows.windows(2).all(|w| w[1].error < w[0].error)
    }

    /// Richardson estimate of `lim_{g->0} (z* - E_j)/g^2` from the two smallest couplings.
    /// The leading correction is `-g^2 Z Q'(E_j)`, quadratic in `g`.
    pub fn richardson(&self, e_j: f64) -> Option<Complex64> {
        let mut rows: Vec<&PoleScanRow> = self.rows.iter().collect();
        rows.sort_by(|a, b| a.g.total_cmp(&b.g));
        let (a, b) = (rows.first()?, rows.get(1)?);
        let fa = (a.pole - e_j) / (a.g * a.g);
        let fb = (b.pole - e_j) / (b.g * b.g);
        let (a2, b2) = (a.g * a.g, b.g * b.g);
        Some((fa * b2 - fb * a2) / (b2 - a2))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("g,re_pole,im_pole,scaled_width,im_z,error\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.15e},{:.15e},{:.15e},{:.15e},{:.6e}\n",
                r.g, r.pole.re, r.pole.im, r.scaled_width, self.im_z, r.error
            ));
        }
        out
    }
}

pub fn pole_scan(model: &ToyModel, g_list: &[f64]) -> Result<PoleScan> {
    let (im_eigs, _) = im_z_eigen(&z_matrix_toy(model)?);
    let im_z = im_eigs.last().copied().unwrap_or(0.0);
    let mut rows = Vec::with_capacity(g_list.len());
    for &g in g_list {
        if !(g > 0.0) {
            return Err(Error::invalid(format!("pole scan needs g > 0, got {g}")));
        }
        let pole = resonance_pole(model, g)?.z;
        let scaled_width = -pole.im / (g * g);
        rows.push(PoleScanRow {
            g,
            pole,
            scaled_width,
            error: (scaled_width - im_z).abs(),
        });
    }
    Ok(PoleScan { im_z, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::{build_model, ModelConfig};

    #[test]
    fn zero_coupling_returns_the_level() {
        let model = build_model(&ModelConfig::default()).unwrap();
        let pole = resonance_pole(&model, 0.0).unwrap();
        assert_eq!(pole.z, Complex64::from(-0.0625));
        assert_eq!(pole.iterations(), 0);
    }

    #[test]
    fn pole_converges_below_axis() {
        let model = build_model(&ModelConfig::default()).unwrap();
        for g in [0.2, 0.1, 0.05] {
            let pole = resonance_pole(&model, g).unwrap();
            assert!(pole.residual < POLE_TOLERANCE);
            assert!(pole.z.im < 0.0);
            assert!(pole.iterations() <= 10, "{}", pole.to_text());
        }
    }

    #[test]
    fn scaled_pole_approaches_minus_z() {
        let model = build_model(&ModelConfig::default()).unwrap();
        let z = z_matrix_toy(&model).unwrap()[(0, 0)];
        let scan = pole_scan(&model, &[0.1, 0.05, 0.025]).unwrap();
        assert!(scan.error_decreasing(), "{}", scan.to_csv());
        let limit = scan.richardson(-0.0625).unwrap();
        let plain = (scan.rows[2].pole + 0.0625) / (0.025 * 0.025);
        assert!((limit + z).norm() <= (plain + z).norm() + 1e-9);
        assert!((limit + z).norm() < 1e-3 * z.norm(), "{limit} vs {}", -z);
    }

    #[test]
    fn degenerate_level_avoids_dark_root() {
        let cfg = ModelConfig {
            degeneracies: vec![1, 2],
            nodes: 200,
            coupling: vec![vec![0., 1., 1.], vec![1., 0., 0.], vec![1., 0., 0.]],
            ..Default::default()
        };
        let model = build_model(&cfg).unwrap();
        let (eigs, _) = im_z_eigen(&z_matrix_toy(&model).unwrap());
        assert!(eigs[0].abs() < 1e-12 * eigs[1]);
        let pole = resonance_pole(&model, 0.05).unwrap();
        assert!(pole.residual < POLE_TOLERANCE);
        let ratio = -pole.z.im / (0.0025 * eigs[1]);
        assert!((ratio - 1.0).abs() < 0.05, "{}", pole.to_text());
    }

    #[test]
    fn pole_matches_direct_perturbative_width() {
        // second-order: z* = E_j - g^2 Z - g^4 Z Q'(E_j) + ...; the width ratio tends to 1
        let model = build_model(&ModelConfig::default()).unwrap();
        let z = z_matrix_toy(&model).unwrap()[(0, 0)];
        let pole = resonance_pole(&model, 0.01).unwrap();
        let ratio = -pole.z.im / (1e-4 * z.im);
        assert!((ratio - 1.0).abs() < 1e-3, "{ratio}");
    }
}
