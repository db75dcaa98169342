use nalgebra::DVector;

use super::model::ToyModel;
use super::survival::Propagator;
use super::zmatrix::{im_part, z_matrix_toy};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryRow {
    pub g: f64,
    /// `tau / g^2`.
    pub s: f64,
    pub abs_a: f64,
    /// `exp(-tau Im Gamma)`.
    pub predicted: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryTable {
    pub tau: f64,
    pub im_gamma: f64,
    pub rows: Vec<CorollaryRow>,
}

impl CorollaryTable {
    /// Deviations strictly decrease as `g` decreases.
    pub fn strictly_decreasing(&self) -> bool {
        let mut rows: Vec<&CorollaryRow> = self.rows.iter().collect();
        rows.sort_by(|a, b| b.g.total_cmp(&a.g));
        rows.windows(2).all(|w| w[1].deviation < w[0].deviation)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("g,s,abs_a,predicted,deviation\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.10e},{:.15e},{:.15e},{:.6e}\n",
                r.g, r.s, r.abs_a, r.predicted, r.deviation
            ));
        }
        out
    }
}

/// Compares `|<Phi, exp(-i s H_g) Phi>|` at `s = tau/g^2` with `exp(-tau Im Gamma)`.
///
/// `state` gives the coefficients of `Phi` on the target vacuum states and must be an
/// eigenvector of `Im Z`, whose eigenvalue is `Im Gamma`; it defaults to the first
/// target state.
pub fn corollary_limit_check(
    model: &ToyModel,
    tau: f64,
    g_list: &[f64],
    state: Option<&DVector<f64>>,
) -> Result<CorollaryTable> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::invalid(format!("tau must be >= 0, got {tau}")));
    }
    let target = model.target_states();
    let coeffs = match state {
        Some(v) if v.len() == target.len() => v.clone(),
        Some(v) => {
            return Err(Error::invalid(format!(
                "state has {} coefficients, target level has {} states",
                v.len(),
                target.len()
            )))
        }
        None => {
            let mut v = DVector::zeros(target.len());
            v[0] = 1.0;
            v
        }
    };
    let norm = coeffs.norm();
    if norm == 0.0 {
        return Err(Error::invalid("state must be nonzero"));
    }
    let coeffs = coeffs / norm;
    let im_z = im_part(&z_matrix_toy(model)?);
    let image = &im_z * &coeffs;
    let im_gamma = coeffs.dot(&image);
    let miss = (&image - &coeffs * im_gamma).norm();
    if miss > 1e-9 * im_z.norm().max(1.0) {
        return Err(Error::invalid(format!(
            "state is not an eigenvector of Im Z (residual {miss:.3e})"
        )));
    }
    let predicted = (-tau * im_gamma).exp();
    let mut rows = Vec::with_capacity(g_list.len());
    for &g in g_list {
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::invalid(format!("corollary needs g > 0, got {g}")));
        }
        let scaled = model.with_coupling_strength(g)?;
        let mut phi = DVector::zeros(scaled.dim());
        for (i, a) in target.clone().enumerate() {
            phi[a] = coeffs[i];
        }
        let s = tau / (g * g);
        let abs_a = Propagator::new(&scaled)?
            .amplitude(&phi, &phi, &[s])?
            .values[0]
            .norm();
        rows.push(CorollaryRow {
            g,
            s,
            abs_a,
            predicted,
            deviation: (abs_a - predicted).abs(),
        });
    }
    Ok(CorollaryTable {
        tau,
        im_gamma,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::{build_model, GridKind, ModelConfig};

    #[test]
    fn zero_time_gives_unit_amplitude() {
        let model = build_model(&ModelConfig {
            nodes: 40,
            ..ModelConfig::default()
        })
        .unwrap();
        let table = corollary_limit_check(&model, 0.0, &[0.2, 0.1], None).unwrap();
        for r in &table.rows {
            assert!((r.abs_a - 1.0).abs() < 1e-13);
            assert_eq!(r.predicted, 1.0);
        }
    }

    fn degenerate_target() -> ToyModel {
        // two excited states coupled identically to the ground state: (1, -1)/sqrt 2 is dark
        let cfg = ModelConfig {
            levels: vec![-0.25, -0.0625],
            degeneracies: vec![1, 2],
            target: 1,
            grid: GridKind::Tanh,
            nodes: 200,
            coupling: vec![
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0],
            ],
            ..ModelConfig::default()
        };
        build_model(&cfg).unwrap()
    }

    #[test]
    fn dark_state_does_not_decay() {
        let model = degenerate_target();
        let dark = DVector::from_vec(vec![1.0, -1.0]);
        let table = corollary_limit_check(&model, 1.0, &[0.1, 0.05], Some(&dark)).unwrap();
        assert!(table.im_gamma.abs() < 1e-15);
        for r in &table.rows {
            assert!((r.abs_a - 1.0).abs() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn non_eigenvector_is_rejected() {
        let model = degenerate_target();
        let err = corollary_limit_check(&model, 1.0, &[0.1], None).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)), "{err}");
    }
}
