use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::config::CouplingProfile;
use super::model::ToyModel;
use super::quad::Composite;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    /// Physical sheet, analytic off the cut.
    First,
    /// Continued from `Im z > 0` downward through the cut.
    Second,
}

fn rho(profile: CouplingProfile, omega: f64) -> f64 {
    profile.density(Complex64::new(omega, 0.0)).re
}

/// `lim_{eps -> 0+} int_0^W rho(w) / (w + delta - i eps) dw` for one channel at
/// offset `delta = E_c - E_j`.
pub fn channel_integral(profile: CouplingProfile, support: f64, delta: f64) -> Result<Complex64> {
    let rule = Composite::default();
    if delta > 0.0 {
        return Ok(rule
            .integrate(0.0, support, |w| rho(profile, w) / (w + delta))
            .into());
    }
    if delta == 0.0 {
        if !profile.infrared_finite() {
            return Err(Error::DivergentIntegral(format!(
                "int |G(w)|^2 / w near w = 0 for profile {profile:?}"
            )));
        }
        return Ok(rule.integrate(0.0, support, |w| rho(profile, w) / w).into());
    }
    let resonance = -delta;
    if resonance >= support {
        return Err(Error::invalid(format!(
            "resonant frequency {resonance} outside the grid support (0, {support})"
        )));
    }
    // Pair w* + t with w* - t so the 1/t singularity cancels, then integrate the remainder.
    let h = resonance.min(support - resonance);
    let mut pv = rule.integrate(0.0, h, |t| {
        (rho(profile, resonance + t) - rho(profile, resonance - t)) / t
    });
    let (lo, hi) = if resonance + h < support {
        (resonance + h, support)
    } else {
        (0.0, resonance - h)
    };
    if hi > lo {
        pv += rule.integrate(lo, hi, |w| rho(profile, w) / (w - resonance));
    }
    Ok(Complex64::new(pv, PI * rho(profile, resonance)))
}

/// `int_0^W rho(w) / (w - zeta) dw` with `zeta = z - E_c`, on the requested sheet.
pub fn channel_function(
    profile: CouplingProfile,
    support: f64,
    zeta: Complex64,
    sheet: Sheet,
) -> Result<Complex64> {
    if zeta.im == 0.0 && zeta.re >= 0.0 && zeta.re <= support {
        return Err(Error::invalid(format!(
            "spectral parameter {zeta} lies on the cut [0, {support}]"
        )));
    }
    let rule = Composite::default();
    let r0 = profile.density(zeta);
    let body = rule.integrate_complex(0.0, support, |w| {
        (profile.density(w.into()) - r0) / (w - zeta)
    });
    let logs = (Complex64::from(support) - zeta).ln() - (-zeta).ln();
    let mut value = body + r0 * logs;
    if sheet == Sheet::Second && zeta.im < 0.0 && zeta.re > 0.0 && zeta.re < support {
        value += Complex64::new(0.0, 2.0 * PI) * r0;
    }
    Ok(value)
}

fn same_level_coupling(model: &ToyModel) -> bool {
    let target = model.target_states();
    target
        .clone()
        .any(|a| target.clone().any(|c| model.coupling()[(c, a)] != 0.0))
}

/// Level-shift operator on the target level: `Z_ab = sum_c C_ca C_cb I(E_c - E_j)`.
/// Independent of `g`; the physical shift is `g^2 Z`.
pub fn z_matrix_toy(model: &ToyModel) -> Result<DMatrix<Complex64>> {
    let target = model.target_states();
    let support = model.grid().support();
    let e_j = model.target_energy();
    if !model.profile().infrared_finite() && same_level_coupling(model) {
        return Err(Error::DivergentIntegral(
            "flat coupling within the target level is infrared divergent".into(),
        ));
    }
    let d = target.len();
    let mut z = DMatrix::zeros(d, d);
    for c in 0..model.states() {
        let column: Vec<f64> = target.clone().map(|a| model.coupling()[(c, a)]).collect();
        if column.iter().all(|x| *x == 0.0) {
            continue;
        }
        let integral = channel_integral(model.profile(), support, model.state_energy(c) - e_j)?;
        for a in 0..d {
            for b in 0..d {
                z[(a, b)] += integral * (column[a] * column[b]);
            }
        }
    }
    Ok(z)
}

/// Order-`g^2` self-energy `Q(z)` on the target level, continued to `sheet`.
pub fn self_energy(model: &ToyModel, z: Complex64, sheet: Sheet) -> Result<DMatrix<Complex64>> {
    let target = model.target_states();
    let support = model.grid().support();
    if !model.profile().infrared_finite() && same_level_coupling(model) {
        return Err(Error::DivergentIntegral(
            "flat coupling within the target level is infrared divergent".into(),
        ));
    }
    let d = target.len();
    let mut q = DMatrix::zeros(d, d);
    for c in 0..model.states() {
        let column: Vec<f64> = target.clone().map(|a| model.coupling()[(c, a)]).collect();
        if column.iter().all(|x| *x == 0.0) {
            continue;
        }
        let value = channel_function(model.profile(), support, z - model.state_energy(c), sheet)?;
        for a in 0..d {
            for b in 0..d {
                q[(a, b)] += value * (column[a] * column[b]);
            }
        }
    }
    Ok(q)
}

pub fn im_part(z: &DMatrix<Complex64>) -> DMatrix<f64> {
    z.map(|c| c.im)
}

/// Eigenvalues of `Im Z` in increasing order with matching eigenvectors as columns.
pub fn im_z_eigen(z: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(im_part(z));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|a, b| eig.eigenvalues[*a].total_cmp(&eig.eigenvalues[*b]));
    let values = order.iter().map(|i| eig.eigenvalues[*i]).collect();
    let vectors = DMatrix::from_columns(
        &order
            .iter()
            .map(|i| eig.eigenvectors.column(*i))
            .collect::<Vec<_>>(),
    );
    (values, vectors)
}
