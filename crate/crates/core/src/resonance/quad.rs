//! Composite Gauss-Legendre quadrature.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Nodes and weights on `[-1, 1]` (Golub-Welsch).
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order > 0);
    let jacobi = DMatrix::from_fn(order, order, |i, j| {
        if i.abs_diff(j) == 1 {
            let k = i.max(j) as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Composite rule: `panels` equal panels on `[a, b]`, each with `order` nodes.
#[derive(Clone, Debug)]
pub struct Composite {
    x: Vec<f64>,
    w: Vec<f64>,
}

impl Composite {
    pub fn new(order: usize, panels: usize) -> Self {
        let (x0, w0) = gauss_legendre(order);
        let scale = panels as f64;
        let (mut x, mut w) = (Vec::new(), Vec::new());
        for p in 0..panels {
            for (xi, wi) in x0.iter().zip(&w0) {
                x.push((2.0 * p as f64 + 1.0 + xi) / scale - 1.0);
                w.push(wi / scale);
            }
        }
        Self { x, w }
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        half * self
            .x
            .iter()
            .zip(&self.w)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }

    pub fn integrate_complex(&self, a: f64, b: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        self.x
            .iter()
            .zip(&self.w)
            .map(|(x, w)| f(mid + half * x) * *w)
            .sum::<Complex64>()
            * half
    }
}

impl Default for Composite {
    fn default() -> Self {
        Self::new(20, 64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        let (x, w) = gauss_legendre(8);
        for deg in 0..16 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg)).sum();
            let exact = if deg % 2 == 0 {
                2.0 / (deg as f64 + 1.0)
            } else {
                0.0
            };
            assert!((q - exact).abs() < 1e-14, "deg {deg}: {q} vs {exact}");
        }
    }

    #[test]
    fn composite_integrates_smooth_functions() {
        let rule = Composite::default();
        let q = rule.integrate(0.0, 3.0, |x| (-x * x).exp());
        // erf(3) sqrt(pi)/2
        assert!((q - 0.886_207_348_259_521).abs() < 1e-13);
        let c = rule.integrate_complex(0.0, 1.0, |x| Complex64::new(0.0, x).exp());
        let exact = Complex64::new(1f64.sin(), 1.0 - 1f64.cos());
        assert!((c - exact).norm() < 1e-14);
    }
}
