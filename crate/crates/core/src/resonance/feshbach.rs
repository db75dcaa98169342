use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::CouplingProfile;
use super::model::{Grid, ToyModel};
use crate::error::{Error, Result};

/// Largest tolerated condition estimate for a block `A - z`.
pub const MAX_CONDITION: f64 = 1e12;

/// `F(z) = P(H - z)P - P H Pbar [Pbar (H - z) Pbar]^-1 Pbar H P` on `ran P`.
#[derive(Clone, Debug)]
pub struct FeshbachData {
    pub z: Complex64,
    pub rho0: f64,
    /// Basis indices spanning `ran P`: target vacuum states, then target states with a photon below `rho0`.
    pub p_indices: Vec<usize>,
    pub q_indices: Vec<usize>,
    pub f: DMatrix<Complex64>,
    /// `[Pbar (H - z) Pbar]^-1 Pbar H P`.
    reduced: DMatrix<Complex64>,
    q_inverse: DMatrix<Complex64>,
}

fn projection(model: &ToyModel, rho0: f64) -> (Vec<usize>, Vec<usize>) {
    let mut p: Vec<usize> = model.target_states().collect();
    for a in model.target_states() {
        for (k, w) in model.grid().nodes().iter().enumerate() {
            if *w < rho0 {
                p.push(model.photon_index(a, k));
            }
        }
    }
    let q = (0..model.dim()).filter(|i| !p.contains(i)).collect();
    (p, q)
}

fn block(h: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| h[(rows[i], cols[j])].into())
}

/// `max |mu - z| / min |mu - z|` over the eigenvalues of a real symmetric block.
fn condition(a: &DMatrix<f64>, z: Complex64) -> f64 {
    if a.is_empty() {
        return 1.0;
    }
    let eig = SymmetricEigen::new(a.clone());
    let dist: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|mu| (Complex64::from(*mu) - z).norm())
        .collect();
    let max = dist.iter().cloned().fold(0.0, f64::max);
    let min = dist.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn shifted_inverse(
    a: &DMatrix<f64>,
    z: Complex64,
    name: &'static str,
) -> Result<DMatrix<Complex64>> {
    let cond = condition(a, z);
    if !(cond <= MAX_CONDITION) {
        return Err(Error::Singular {
            block: name,
            z: format!("{z}"),
            condition: cond,
        });
    }
    let n = a.nrows();
    let shifted = a.map(Complex64::from) - DMatrix::from_diagonal_element(n, n, z);
    shifted.lu().try_inverse().ok_or(Error::Singular {
        block: name,
        z: format!("{z}"),
        condition: cond,
    })
}

pub fn feshbach_operator(model: &ToyModel, z: Complex64, rho0: f64) -> Result<FeshbachData> {
    let h = model.hamiltonian();
    let (p, q) = projection(model, rho0);
    let h_qq = DMatrix::from_fn(q.len(), q.len(), |i, j| h[(q[i], q[j])]);
    let q_inverse = shifted_inverse(&h_qq, z, "Pbar (H - z) Pbar")?;
    let h_qp = block(&h, &q, &p);
    let reduced = &q_inverse * &h_qp;
    let mut f = block(&h, &p, &p) - h_qp.adjoint() * &reduced;
    for i in 0..p.len() {
        f[(i, i)] -= z;
    }
    Ok(FeshbachData {
        z,
        rho0,
        p_indices: p,
        q_indices: q,
        f,
        reduced,
        q_inverse,
    })
}

impl FeshbachData {
    /// `(H - z)^-1` rebuilt from `F(z)^-1` and the `Pbar` resolvent.
    pub fn reconstruct_resolvent(&self) -> Result<DMatrix<Complex64>> {
        let (np, nq) = (self.p_indices.len(), self.q_indices.len());
        let f_inv = self.f.clone().lu().try_inverse().ok_or(Error::Singular {
            block: "F(z)",
            z: format!("{}", self.z),
            condition: f64::INFINITY,
        })?;
        // left = P - Rbar Pbar H P, right = its transpose; indices are local (P first, then Pbar)
        let mut left = DMatrix::zeros(np + nq, np);
        left.view_mut((0, 0), (np, np)).fill_with_identity();
        left.view_mut((np, 0), (nq, np))
            .copy_from(&(-&self.reduced));
        let local = &left * f_inv * left.transpose();
        let dim = np + nq;
        let order: Vec<usize> = self
            .p_indices
            .iter()
            .chain(&self.q_indices)
            .copied()
            .collect();
        let mut out = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut v = local[(i, j)];
                if i >= np && j >= np {
                    v += self.q_inverse[(i - np, j - np)];
                }
                out[(order[i], order[j])] = v;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolventCheck {
    /// `|<phi1,(H-z)^-1 phi2> - <phi1, F(z)^-1 phi2>|`.
    pub scalar: f64,
    /// Largest entry of the difference between the reconstructed and the direct resolvent.
    pub reconstruction: f64,
}

impl ResolventCheck {
    pub fn max(&self) -> f64 {
        self.scalar.max(self.reconstruction)
    }
}

/// Compares both sides of the Feshbach resolvent identity against a dense inverse of `H - z`.
/// `phi1`, `phi2` must lie in `ran P`.
pub fn resolvent_identity_check(
    model: &ToyModel,
    z: Complex64,
    rho0: f64,
    phi1: &DVector<f64>,
    phi2: &DVector<f64>,
) -> Result<ResolventCheck> {
    let data = feshbach_operator(model, z, rho0)?;
    let dim = model.dim();
    if phi1.len() != dim || phi2.len() != dim {
        return Err(Error::invalid(format!("states must have length {dim}")));
    }
    for phi in [phi1, phi2] {
        if data.q_indices.iter().any(|&i| phi[i] != 0.0) {
            return Err(Error::invalid("state has components outside ran P"));
        }
    }
    let direct = shifted_inverse(&model.hamiltonian(), z, "H - z")?;
    let rebuilt = data.reconstruct_resolvent()?;
    let reconstruction = (&rebuilt - &direct)
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);

    let c1 = phi1.map(Complex64::from);
    let c2 = phi2.map(Complex64::from);
    let lhs = c1.dotc(&(&direct * &c2));
    let p1 = DVector::from_iterator(data.p_indices.len(), data.p_indices.iter().map(|&i| c1[i]));
    let p2 = DVector::from_iterator(data.p_indices.len(), data.p_indices.iter().map(|&i| c2[i]));
    let f_inv = data.f.clone().lu().try_inverse().ok_or(Error::Singular {
        block: "F(z)",
        z: format!("{z}"),
        condition: f64::INFINITY,
    })?;
    let rhs = p1.dotc(&(f_inv * p2));
    Ok(ResolventCheck {
        scalar: (lhs - rhs).norm(),
        reconstruction,
    })
}

/// A random small model with a spectral parameter and projection cutoff.
#[derive(Clone, Debug)]
pub struct RandomCase {
    pub model: ToyModel,
    pub z: Complex64,
    pub rho0: f64,
}

/// Random model with `D <= max_dim` and `|Im z| >= 0.1`.
pub fn random_case(rng: &mut impl Rng, max_dim: usize) -> Result<RandomCase> {
    let levels_n = rng.gen_range(1..=3);
    let mut levels = Vec::with_capacity(levels_n);
    let mut e = rng.gen_range(-1.0..-0.5);
    for _ in 0..levels_n {
        levels.push(e);
        e += rng.gen_range(0.05..0.4);
    }
    let degeneracies: Vec<usize> = (0..levels_n).map(|_| rng.gen_range(1..=2)).collect();
    let states: usize = degeneracies.iter().sum();
    let k = rng.gen_range(1..=(max_dim / states - 1).max(1));
    let omega_max = rng.gen_range(0.5..2.0);
    let grid = Grid::linear(k, omega_max)?;
    let profile = if rng.gen_bool(0.5) {
        CouplingProfile::SqrtGauss
    } else {
        CouplingProfile::Flat
    };
    let coupling = DMatrix::from_fn(states, states, |_, _| rng.gen_range(-1.0..1.0));
    let g = rng.gen_range(0.05..1.0);
    let target = rng.gen_range(0..levels_n);
    let model = ToyModel::new(levels, degeneracies, target, grid, profile, coupling, g)?;
    let im = rng.gen_range(0.1..1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let z = Complex64::new(model.target_energy() + rng.gen_range(-0.5..0.5), im);
    let rho0 = rng.gen_range(0.0..0.5 * omega_max);
    Ok(RandomCase { model, z, rho0 })
}

#[derive(Clone, Debug)]
pub struct BatchRow {
    pub index: usize,
    pub dim: usize,
    pub z: Complex64,
    pub p_dim: usize,
    pub check: ResolventCheck,
}

#[derive(Clone, Debug)]
pub struct BatchReport {
    pub seed: u64,
    pub rows: Vec<BatchRow>,
}

impl BatchReport {
    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.check.max()).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("model,dim,p_dim,re_z,im_z,scalar_residual,reconstruction_residual\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:.12e},{:.12e},{:.6e},{:.6e}\n",
                r.index, r.dim, r.p_dim, r.z.re, r.z.im, r.check.scalar, r.check.reconstruction
            ));
        }
        out
    }
}

/// Runs the resolvent identity on `count` seeded random models, each probed with
/// the first target vacuum state.
pub fn feshbach_batch(seed: u64, count: usize, max_dim: usize) -> Result<BatchReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(count);
    for index in 0..count {
        let case = random_case(&mut rng, max_dim)?;
        let first = case.model.target_states().start;
        let phi = case.model.basis_vector(first);
        let data = feshbach_operator(&case.model, case.z, case.rho0)?;
        let check = resolvent_identity_check(&case.model, case.z, case.rho0, &phi, &phi)?;
        rows.push(BatchRow {
            index,
            dim: case.model.dim(),
            z: case.z,
            p_dim: data.p_indices.len(),
            check,
        });
    }
    Ok(BatchReport { seed, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::{build_model, ModelConfig};

    fn small(g: f64) -> ToyModel {
        build_model(&ModelConfig {
            g,
            nodes: 20,
            ..ModelConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn uncoupled_feshbach_is_diagonal() {
        let model = small(0.0);
        let z = Complex64::new(-0.1, 0.2);
        let data = feshbach_operator(&model, z, 0.0).unwrap();
        assert_eq!(data.f.shape(), (1, 1));
        assert_eq!(data.f[(0, 0)], Complex64::from(-0.0625) - z);
        let phi = model.basis_vector(1);
        let check = resolvent_identity_check(&model, z, 0.0, &phi, &phi).unwrap();
        assert!(check.max() < 1e-15, "{check:?}");
    }

    #[test]
    fn real_z_far_from_spectrum_gives_real_symmetric_f() {
        let model = small(0.3);
        let data = feshbach_operator(&model, Complex64::new(-3.0, 0.0), 0.1).unwrap();
        assert!(data.p_indices.len() > 1);
        assert!(data.f.iter().all(|c| c.im == 0.0));
        assert!((&data.f - data.f.transpose()).norm() < 1e-15);
    }

    #[test]
    fn identity_holds_with_low_photon_block() {
        let model = small(0.4);
        let z = Complex64::new(-0.07, 0.3);
        let data = feshbach_operator(&model, z, 0.15).unwrap();
        assert_eq!(
            data.p_indices.len(),
            1 + model.grid().nodes().iter().filter(|w| **w < 0.15).count()
        );
        let mut phi = model.basis_vector(1);
        phi[data.p_indices[1]] = 0.5;
        let check =
            resolvent_identity_check(&model, z, 0.15, &phi, &model.basis_vector(1)).unwrap();
        assert!(check.max() < 1e-12, "{check:?}");
    }

    #[test]
    fn eigenvalue_of_h_is_rejected() {
        let model = small(0.3);
        let eig = SymmetricEigen::new(model.hamiltonian());
        let z = Complex64::from(eig.eigenvalues[3]);
        let phi = model.basis_vector(1);
        let err = resolvent_identity_check(&model, z, 0.0, &phi, &phi).unwrap_err();
        assert!(matches!(err, Error::Singular { .. }), "{err}");
        assert!(err.to_string().contains("z ="));
    }

    #[test]
    fn states_outside_p_are_rejected() {
        let model = small(0.3);
        let phi = model.basis_vector(0);
        let err = resolvent_identity_check(&model, Complex64::new(0.0, 0.5), 0.0, &phi, &phi);
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn random_batch_is_exact_and_deterministic() {
        let a = feshbach_batch(7, 20, 50).unwrap();
        assert!(a.max_residual() < 1e-10, "{}", a.max_residual());
        assert!(a.rows.iter().all(|r| r.dim <= 50 && r.z.im.abs() >= 0.1));
        let b = feshbach_batch(7, 20, 50).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
    }
}
