use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::config::{CouplingProfile, GridKind, ModelConfig};
use crate::error::{Error, Result};

impl CouplingProfile {
    /// `G(w)` at a real frequency.
    pub fn amplitude(self, omega: f64) -> f64 {
        match self {
            CouplingProfile::SqrtGauss => omega.sqrt() * (-omega * omega).exp(),
            CouplingProfile::Flat => 1.0,
        }
    }

    /// Spectral density `|G(w)|^2`, continued to complex `w`.
    pub fn density(self, omega: Complex64) -> Complex64 {
        match self {
            CouplingProfile::SqrtGauss => omega * (-2.0 * omega * omega).exp(),
            CouplingProfile::Flat => Complex64::new(1.0, 0.0),
        }
    }

    /// Whether `|G(w)|^2 / w` is integrable at zero.
    pub fn infrared_finite(self) -> bool {
        matches!(self, CouplingProfile::SqrtGauss)
    }
}

/// Photon frequencies with quadrature weights on `(0, support]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    support: f64,
}

impl Grid {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>, support: f64) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::invalid(format!(
                "{} grid nodes but {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        if !(support.is_finite() && support > 0.0) {
            return Err(Error::invalid(format!(
                "grid support must be positive, got {support}"
            )));
        }
        if let Some(k) = nodes.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::invalid(format!(
                "grid not strictly increasing at node {k}: {} >= {}",
                nodes[k],
                nodes[k + 1]
            )));
        }
        if let Some(&w) = nodes.iter().find(|w| !(**w > 0.0 && **w <= support)) {
            return Err(Error::invalid(format!(
                "grid node {w} outside (0, {support}]"
            )));
        }
        if let Some(k) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::invalid(format!(
                "non-positive quadrature weight {} at node {k}",
                weights[k]
            )));
        }
        Ok(Self {
            nodes,
            weights,
            support,
        })
    }

    /// Midpoint rule with `k` equal cells on `[0, omega_max]`.
    pub fn linear(k: usize, omega_max: f64) -> Result<Self> {
        let h = omega_max / k as f64;
        Self::new(
            (0..k).map(|i| (i as f64 + 0.5) * h).collect(),
            vec![h; k],
            omega_max,
        )
    }

    /// Cells equidistant in `tanh((w - center)/width)`, which clusters nodes near `center`.
    /// This is the midpoint rule in the stretched variable.
    pub fn tanh(k: usize, omega_max: f64, center: f64, width: f64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::invalid(format!(
                "grid width must be positive, got {width}"
            )));
        }
        if !(center > 0.0 && center < omega_max) {
            return Err(Error::invalid(format!(
                "grid center {center} outside (0, {omega_max})"
            )));
        }
        let a = (-center / width).tanh();
        let b = ((omega_max - center) / width).tanh();
        let h = (b - a) / k as f64;
        let (mut nodes, mut weights) = (Vec::with_capacity(k), Vec::with_capacity(k));
        for i in 0..k {
            let xi = a + (i as f64 + 0.5) * h;
            nodes.push(center + width * xi.atanh());
            weights.push(width * h / (1.0 - xi * xi));
        }
        Self::new(nodes, weights, omega_max)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn support(&self) -> f64 {
        self.support
    }
}

/// Finite discretization of `H_0 + g W` on the vacuum plus one-photon sector.
///
/// Electronic states are numbered level by level; basis index `s` is the vacuum
/// state of electronic state `s`, and `states + s K + k` is state `s` with one photon
/// at node `k`. The coupling sends vacuum state `a` to `(c, k)` with amplitude
/// `g C[c, a] G(w_k) sqrt(w_k weight)`; photon-photon elements vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct ToyModel {
    levels: Vec<f64>,
    degeneracies: Vec<usize>,
    target: usize,
    grid: Grid,
    profile: CouplingProfile,
    coupling: DMatrix<f64>,
    g: f64,
}

impl ToyModel {
    pub fn new(
        levels: Vec<f64>,
        degeneracies: Vec<usize>,
        target: usize,
        grid: Grid,
        profile: CouplingProfile,
        coupling: DMatrix<f64>,
        g: f64,
    ) -> Result<Self> {
        if levels.is_empty() || levels.len() != degeneracies.len() {
            return Err(Error::invalid(format!(
                "{} levels with {} degeneracies",
                levels.len(),
                degeneracies.len()
            )));
        }
        if levels.iter().any(|e| !e.is_finite()) || levels.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid(
                "levels must be finite and strictly increasing",
            ));
        }
        if degeneracies.contains(&0) {
            return Err(Error::invalid("degeneracies must be at least 1"));
        }
        if target >= levels.len() {
            return Err(Error::invalid(format!(
                "target level {target} out of range"
            )));
        }
        let states: usize = degeneracies.iter().sum();
        if coupling.shape() != (states, states) || coupling.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid(format!(
                "coupling must be a finite {states}x{states} matrix"
            )));
        }
        if !(g.is_finite() && g >= 0.0) {
            return Err(Error::invalid(format!(
                "coupling strength must be >= 0, got {g}"
            )));
        }
        Ok(Self {
            levels,
            degeneracies,
            target,
            grid,
            profile,
            coupling,
            g,
        })
    }

    pub fn with_coupling_strength(&self, g: f64) -> Result<Self> {
        if !(g.is_finite() && g >= 0.0) {
            return Err(Error::invalid(format!(
                "coupling strength must be >= 0, got {g}"
            )));
        }
        Ok(Self { g, ..self.clone() })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn degeneracies(&self) -> &[usize] {
        &self.degeneracies
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn target_energy(&self) -> f64 {
        self.levels[self.target]
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn profile(&self) -> CouplingProfile {
        self.profile
    }

    pub fn coupling(&self) -> &DMatrix<f64> {
        &self.coupling
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Number of electronic states, counting degeneracy.
    pub fn states(&self) -> usize {
        self.degeneracies.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.states() * (1 + self.grid.len())
    }

    pub fn level_of(&self, state: usize) -> usize {
        let mut acc = 0;
        for (i, d) in self.degeneracies.iter().enumerate() {
            acc += d;
            if state < acc {
                return i;
            }
        }
        panic!("electronic state {state} out of range");
    }

    pub fn state_energy(&self, state: usize) -> f64 {
        self.levels[self.level_of(state)]
    }

    /// Electronic states of the target level (equal to their vacuum basis indices).
    pub fn target_states(&self) -> std::ops::Range<usize> {
        let start: usize = self.degeneracies[..self.target].iter().sum();
        start..start + self.degeneracies[self.target]
    }

    pub fn photon_index(&self, state: usize, node: usize) -> usize {
        self.states() + state * self.grid.len() + node
    }

    /// Unperturbed energy of a basis index.
    pub fn bare_energy(&self, index: usize) -> f64 {
        let (s, k) = (self.states(), self.grid.len());
        if index < s {
            self.state_energy(index)
        } else {
            let (state, node) = ((index - s) / k, (index - s) % k);
            self.state_energy(state) + self.grid.nodes[node]
        }
    }

    pub fn basis_vector(&self, index: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[index] = 1.0;
        v
    }

    /// True when the continuum is empty or decoupled, so `H` is diagonal.
    pub fn is_degenerate(&self) -> bool {
        self.grid.is_empty() || self.g == 0.0 || self.coupling.iter().all(|c| *c == 0.0)
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.grid.is_empty() {
            out.push("warning: empty photon grid (K = 0), H is diagonal".to_string());
        }
        out
    }

    pub fn hamiltonian(&self) -> DMatrix<f64> {
        let (s, k, dim) = (self.states(), self.grid.len(), self.dim());
        let mut h = DMatrix::from_fn(
            dim,
            dim,
            |i, j| if i == j { self.bare_energy(i) } else { 0.0 },
        );
        let amps: Vec<f64> = (0..k)
            .map(|n| self.profile.amplitude(self.grid.nodes[n]) * self.grid.weights[n].sqrt())
            .collect();
        for a in 0..s {
            for c in 0..s {
                let ca = self.g * self.coupling[(c, a)];
                if ca == 0.0 {
                    continue;
                }
                for (node, amp) in amps.iter().enumerate() {
                    let p = s + c * k + node;
                    h[(p, a)] = ca * amp;
                    h[(a, p)] = ca * amp;
                }
            }
        }
        h
    }

    /// FNV-1a over the bit patterns of the assembled Hamiltonian.
    pub fn checksum(&self) -> String {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for x in self.hamiltonian().iter() {
            for byte in x.to_bits().to_le_bytes() {
                hash ^= byte as u64;
                hash = hash.wrapping_mul(0x0100_0000_01b3);
            }
        }
        format!("{hash:016x}")
    }
}

pub fn build_model(config: &ModelConfig) -> Result<ToyModel> {
    let levels = &config.levels;
    let target = config.target;
    if target >= levels.len() {
        return Err(Error::invalid(format!(
            "target level {target} out of range"
        )));
    }
    let gap = levels[target] - levels[0];
    let default = |given: Option<f64>, scale: f64, what: &str| -> Result<f64> {
        match given {
            Some(v) => Ok(v),
            None if gap > 0.0 => Ok(scale * gap),
            None => Err(Error::invalid(format!(
                "{what} has no default when the target is the lowest level"
            ))),
        }
    };
    let omega_max = default(config.omega_max, 10.0, "omega_max")?;
    let grid = match config.grid {
        GridKind::Linear => Grid::linear(config.nodes, omega_max)?,
        GridKind::Tanh => Grid::tanh(
            config.nodes,
            omega_max,
            default(config.grid_center, 1.0, "grid_center")?,
            default(config.grid_width, 3.0, "grid_width")?,
        )?,
    };
    let states: usize = config.degeneracies.iter().sum();
    if config.coupling.len() != states || config.coupling.iter().any(|r| r.len() != states) {
        return Err(Error::invalid(format!(
            "coupling must be a {states}x{states} matrix"
        )));
    }
    let coupling = DMatrix::from_fn(states, states, |i, j| config.coupling[i][j]);
    ToyModel::new(
        levels.clone(),
        config.degeneracies.clone(),
        target,
        grid,
        config.profile,
        coupling,
        config.g,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEFAULT_CHECKSUM: &str = "7d6f30454800a4da";

    #[test]
    fn dimension_of_two_level_model() {
        let cfg = ModelConfig {
            grid: GridKind::Linear,
            omega_max: Some(2.0),
            ..ModelConfig::default()
        };
        let model = build_model(&cfg).unwrap();
        assert_eq!(model.dim(), 2 + 2 * 400);
        assert_eq!(model.hamiltonian().shape(), (802, 802));
        assert!(model.warnings().is_empty());
    }

    #[test]
    fn empty_continuum_is_flagged() {
        let cfg = ModelConfig {
            nodes: 0,
            ..ModelConfig::default()
        };
        let model = build_model(&cfg).unwrap();
        assert_eq!(model.dim(), 2);
        assert!(model.is_degenerate());
        assert_eq!(model.warnings().len(), 1);
        let h = model.hamiltonian();
        assert_eq!(
            h,
            DMatrix::from_diagonal(&DVector::from_vec(vec![-0.25, -0.0625]))
        );
    }

    #[test]
    fn grids_integrate_smooth_densities() {
        let rho = |w: f64| w * (-2.0 * w * w).exp();
        // integral of w exp(-2 w^2) over [0, inf) is 1/4; the tail past 1.875 is ~1e-4
        let exact = 0.25 * (1.0 - (-2.0 * 1.875f64 * 1.875).exp());
        for grid in [
            Grid::linear(400, 1.875).unwrap(),
            Grid::tanh(400, 1.875, 0.1875, 0.5625).unwrap(),
        ] {
            let q: f64 = grid
                .nodes()
                .iter()
                .zip(grid.weights())
                .map(|(w, h)| h * rho(*w))
                .sum();
            assert!((q - exact).abs() < 1e-5, "{q} vs {exact}");
            let total: f64 = grid.weights().iter().sum();
            assert!((total - 1.875).abs() < 1e-2);
        }
    }

    #[test]
    fn tanh_grid_clusters_near_center() {
        let grid = Grid::tanh(400, 1.875, 0.1875, 0.5625).unwrap();
        let near = grid
            .nodes()
            .iter()
            .filter(|w| (**w - 0.1875).abs() < 0.1875)
            .count();
        assert!(near > 150, "{near}");
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(Grid::new(vec![0.1, 0.3, 0.2], vec![0.1; 3], 1.0).is_err());
        assert!(Grid::new(vec![0.1, 0.2], vec![0.1, -0.1], 1.0).is_err());
        assert!(Grid::new(vec![0.1, 0.2], vec![0.1, 0.0], 1.0).is_err());
        assert!(Grid::tanh(10, 1.0, 0.5, -0.1).is_err());
        let cfg = ModelConfig {
            g: -0.1,
            ..ModelConfig::default()
        };
        assert!(build_model(&cfg).is_err());
        let model = build_model(&ModelConfig::default()).unwrap();
        assert!(model.with_coupling_strength(-1.0).is_err());
        let cfg = ModelConfig {
            levels: vec![-0.1, -0.2],
            ..ModelConfig::default()
        };
        assert!(build_model(&cfg).is_err());
    }

    #[test]
    fn hamiltonian_is_symmetric_with_expected_couplings() {
        let model = build_model(&ModelConfig::default()).unwrap();
        let h = model.hamiltonian();
        assert_eq!(h, h.transpose());
        let (w, dw) = (model.grid().nodes()[7], model.grid().weights()[7]);
        let expected = 0.05 * w.sqrt() * (-w * w).exp() * dw.sqrt();
        assert!((h[(model.photon_index(0, 7), 1)] - expected).abs() < 1e-16);
        assert_eq!(
            h[(model.photon_index(1, 7), 0)],
            h[(model.photon_index(0, 7), 1)]
        );
        assert_eq!(h[(model.photon_index(0, 7), 0)], 0.0);
        assert_eq!(
            h[(model.photon_index(0, 7), model.photon_index(0, 7))],
            -0.25 + w
        );
    }

    #[test]
    fn default_model_is_reproducible() {
        let a = build_model(&ModelConfig::default()).unwrap();
        let b =
            build_model(&ModelConfig::parse(&ModelConfig::default().to_text()).unwrap()).unwrap();
        assert_eq!(a.checksum(), b.checksum());
        assert_eq!(a.checksum(), DEFAULT_CHECKSUM);
    }
}
