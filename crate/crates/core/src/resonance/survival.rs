use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::model::ToyModel;
use crate::error::{Error, Result};

/// `H_g` diagonalized once, for evaluating `<phi1, exp(-i s H) phi2>` at many times.
#[derive(Clone, Debug)]
pub struct Propagator {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Propagator {
    pub fn new(model: &ToyModel) -> Result<Self> {
        let h = model.hamiltonian();
        let dim = h.nrows();
        let max_iter = 100 * dim.max(1);
        let eig = SymmetricEigen::try_new(h, f64::EPSILON, max_iter).ok_or_else(|| {
            Error::NoConvergence {
                what: "symmetric eigensolver",
                iterations: max_iter,
                trace: format!("dimension {dim}"),
            }
        })?;
        Ok(Self {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn amplitude(
        &self,
        phi1: &DVector<f64>,
        phi2: &DVector<f64>,
        times: &[f64],
    ) -> Result<SurvivalSeries> {
        let dim = self.eigenvalues.len();
        if phi1.len() != dim || phi2.len() != dim {
            return Err(Error::invalid(format!(
                "state lengths {} and {} do not match dimension {dim}",
                phi1.len(),
                phi2.len()
            )));
        }
        let c1 = self.eigenvectors.tr_mul(phi1);
        let c2 = self.eigenvectors.tr_mul(phi2);
        let weights: Vec<f64> = c1.iter().zip(c2.iter()).map(|(a, b)| a * b).collect();
        let values = times
            .iter()
            .map(|&s| {
                weights
                    .iter()
                    .zip(self.eigenvalues.iter())
                    .map(|(w, l)| Complex64::from_polar(*w, -s * l))
                    .sum()
            })
            .collect();
        Ok(SurvivalSeries {
            times: times.to_vec(),
            values,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurvivalSeries {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl SurvivalSeries {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,re_a,im_a,abs_a\n");
        for (s, a) in self.times.iter().zip(&self.values) {
            out.push_str(&format!(
                "{s:.10e},{:.15e},{:.15e},{:.15e}\n",
                a.re,
                a.im,
                a.norm()
            ));
        }
        out
    }
}

pub fn survival_amplitude(
    model: &ToyModel,
    phi1: &DVector<f64>,
    phi2: &DVector<f64>,
    times: &[f64],
) -> Result<SurvivalSeries> {
    Propagator::new(model)?.amplitude(phi1, phi2, times)
}

/// `samples` equally spaced times on `[start, end]`.
pub fn linspace(start: f64, end: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => vec![],
        1 => vec![start],
        n => (0..n)
            .map(|i| start + (end - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Times `s` in `[0.1, 0.5] / rate`, after transients and well before recurrences.
pub fn fit_window(expected_rate: f64, samples: usize) -> Vec<f64> {
    linspace(0.1 / expected_rate, 0.5 / expected_rate, samples)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayFit {
    /// `-d ln|A| / ds`.
    pub amplitude_rate: f64,
    pub intercept: f64,
    pub rms_residual: f64,
}

impl DecayFit {
    /// Decay rate of `|A|^2`.
    pub fn probability_rate(&self) -> f64 {
        2.0 * self.amplitude_rate
    }
}

/// Least-squares line through `ln|A(s)|`.
pub fn fit_decay(series: &SurvivalSeries) -> Result<DecayFit> {
    let n = series.times.len();
    if n < 2 {
        return Err(Error::invalid(
            "need at least two samples to fit a decay rate",
        ));
    }
    let ys: Vec<f64> = series.values.iter().map(|a| a.norm().ln()).collect();
    if ys.iter().any(|y| !y.is_finite()) {
        return Err(Error::invalid("amplitude vanishes inside the fit window"));
    }
    let mean_x = series.times.iter().sum::<f64>() / n as f64;
    let mean_y = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in series.times.iter().zip(&ys) {
        sxy += (x - mean_x) * (y - mean_y);
        sxx += (x - mean_x).powi(2);
    }
    if sxx == 0.0 {
        return Err(Error::invalid("fit window has zero width"));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let rms = (series
        .times
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / n as f64)
        .sqrt();
    Ok(DecayFit {
        amplitude_rate: -slope,
        intercept,
        rms_residual: rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::{build_model, z_matrix_toy, ModelConfig};

    #[test]
    fn decoupled_target_never_decays() {
        let cfg = ModelConfig {
            g: 0.0,
            nodes: 60,
            ..ModelConfig::default()
        };
        let model = build_model(&cfg).unwrap();
        let phi = model.basis_vector(1);
        let series = survival_amplitude(&model, &phi, &phi, &linspace(0.0, 500.0, 11)).unwrap();
        for a in &series.values {
            assert!((a.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn unitarity_and_initial_value() {
        let cfg = ModelConfig {
            g: 0.3,
            nodes: 80,
            ..ModelConfig::default()
        };
        let model = build_model(&cfg).unwrap();
        let prop = Propagator::new(&model).unwrap();
        let phi = model.basis_vector(1);
        let series = prop
            .amplitude(&phi, &phi, &linspace(0.0, 1e4, 301))
            .unwrap();
        assert!((series.values[0] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!(series.max_abs() <= 1.0 + 1e-12);
        let other = model.basis_vector(model.photon_index(0, 5));
        let cross = prop.amplitude(&phi, &other, &[0.0]).unwrap();
        assert!(cross.values[0].norm() < 1e-13);
    }

    #[test]
    fn fit_recovers_exact_exponential() {
        let times = linspace(0.0, 10.0, 50);
        let values = times
            .iter()
            .map(|s| Complex64::from_polar(2.0 * (-0.3 * s).exp(), 1.7 * s))
            .collect();
        let fit = fit_decay(&SurvivalSeries { times, values }).unwrap();
        assert!((fit.amplitude_rate - 0.3).abs() < 1e-13);
        assert!((fit.intercept - 2f64.ln()).abs() < 1e-12);
        assert!((fit.probability_rate() - 0.6).abs() < 1e-13);
    }

    #[test]
    fn golden_rule_rate() {
        let model = build_model(&ModelConfig {
            g: 0.1,
            ..ModelConfig::default()
        })
        .unwrap();
        let im_z = z_matrix_toy(&model).unwrap()[(0, 0)].im;
        let expected = 0.01 * im_z;
        let phi = model.basis_vector(1);
        let series = survival_amplitude(&model, &phi, &phi, &fit_window(expected, 101)).unwrap();
        let fit = fit_decay(&series).unwrap();
        let ratio = fit.amplitude_rate / expected;
        assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn csv_has_header_and_rows() {
        let series = SurvivalSeries {
            times: vec![0.0, 1.0],
            values: vec![Complex64::new(1.0, 0.0); 2],
        };
        let csv = series.to_csv();
        assert!(csv.starts_with("s,re_a,im_a,abs_a\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
