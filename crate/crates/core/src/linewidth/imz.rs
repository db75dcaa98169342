use nalgebra::DMatrix;

use super::cutoff::CutoffFunction;
use crate::error::{Error, Result};
use crate::exact::{rat, to_f64, ExactScalar, Rational};
use crate::hydrogen::{
    dipole_element, energy, momentum_element, Axis, ExactComplex, Orbital, PhasedScalar,
};

/// Which formula assembled the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImZForm {
    /// `(2/3) sum_i (E_n - E_i)^3 kappa^2 P_n x P_i x P_n`
    Position,
    /// `(8/3) sum_i (E_n - E_i) kappa^2 P_n p P_i p P_n`
    Momentum,
}

impl ImZForm {
    pub fn prefactor_tag(self) -> &'static str {
        match self {
            ImZForm::Position => "2/3 * (E_n - E_i)^3 * kappa^2 * <x P_i x>",
            ImZForm::Momentum => "8/3 * (E_n - E_i) * kappa^2 * <p P_i p>",
        }
    }
}

/// `Im Z` restricted to the `n^2`-dimensional eigenspace of level `n`.
#[derive(Clone, Debug)]
pub struct ImZMatrix {
    pub n: u32,
    pub basis: Vec<Orbital>,
    pub cutoff: CutoffFunction,
    pub form: ImZForm,
    /// Row-major exact entries; present only when the cutoff is identically one.
    exact: Option<Vec<ExactScalar>>,
    values: DMatrix<f64>,
    /// Set when the matrix is trivially zero (ground state).
    pub warning: Option<String>,
}

impl ImZMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact_entry(&self, row: usize, col: usize) -> Option<&ExactScalar> {
        self.exact.as_ref().map(|e| &e[row * self.dim() + col])
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[(row, col)]
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    /// Diagonal as rationals, if exact.
    pub fn exact_diagonal(&self) -> Option<Vec<Rational>> {
        (0..self.dim())
            .map(|i| self.exact_entry(i, i).and_then(ExactScalar::as_rational))
            .collect()
    }

    pub fn index_of(&self, orbital: &Orbital) -> Option<usize> {
        self.basis.iter().position(|o| o == orbital)
    }

    /// Exact equality of two assembled matrices (same basis, same exact entries).
    pub fn exactly_equals(&self, other: &ImZMatrix) -> bool {
        self.n == other.n
            && self.basis == other.basis
            && self.exact.is_some()
            && self.exact == other.exact
    }

    fn zero_ground_state(cutoff: &CutoffFunction, form: ImZForm) -> Self {
        let basis = Orbital::level(1).expect("level 1");
        Self {
            n: 1,
            basis,
            cutoff: cutoff.clone(),
            form,
            exact: cutoff
                .is_identically_one()
                .then(|| vec![ExactScalar::zero()]),
            values: DMatrix::zeros(1, 1),
            warning: Some("n = 1 has no lower level; Im Z is the 1x1 zero matrix".into()),
        }
    }
}

/// `sum_axis sum_{k in level i} conj(<k|A_axis|row>) <k|A_axis|col>` on level `n`.
fn transition_block(
    n: u32,
    lower: u32,
    element: fn(&Orbital, Axis, &Orbital) -> Result<PhasedScalar>,
) -> Result<Vec<ExactScalar>> {
    let basis = Orbital::level(n)?;
    let dim = basis.len();
    let mut acc = vec![ExactComplex::zero(); dim * dim];
    for axis in Axis::ALL {
        for k in Orbital::level(lower)? {
            let column: Vec<PhasedScalar> = basis
                .iter()
                .map(|u| element(&k, axis, u))
                .collect::<Result<_>>()?;
            for (row, a) in column.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a_conj = a.conj();
                for (col, b) in column.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let term = (&a_conj * b).to_exact_complex();
                    acc[row * dim + col] = &acc[row * dim + col] + &term;
                }
            }
        }
    }
    acc.into_iter()
        .enumerate()
        .map(|(idx, z)| {
            if !z.im.is_zero() {
                return Err(Error::Consistency(format!(
                    "Im Z block for levels {n}<-{lower} has a complex entry at {idx}: {}",
                    z.im
                )));
            }
            Ok(z.re)
        })
        .collect()
}

fn assemble(n: u32, cutoff: &CutoffFunction, form: ImZForm) -> Result<ImZMatrix> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumbers { n, l: 0, m: 0 });
    }
    if n == 1 {
        return Ok(ImZMatrix::zero_ground_state(cutoff, form));
    }
    let basis = Orbital::level(n)?;
    let dim = basis.len();
    let e_n = energy(n)?;
    let mut exact = cutoff
        .is_identically_one()
        .then(|| vec![ExactScalar::zero(); dim * dim]);
    let mut values = DMatrix::<f64>::zeros(dim, dim);
    for lower in 1..n {
        let gap = &e_n - energy(lower)?;
        let (weight, block) = match form {
            ImZForm::Position => (
                rat(2, 3) * &gap * &gap * &gap,
                transition_block(n, lower, dipole_element)?,
            ),
            ImZForm::Momentum => (
                rat(8, 3) * &gap,
                transition_block(n, lower, momentum_element)?,
            ),
        };
        let kappa = cutoff.eval(&gap);
        let weight_f = to_f64(&weight) * kappa * kappa;
        for (idx, entry) in block.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            if let Some(exact) = exact.as_mut() {
                exact[idx] = &exact[idx] + &entry.scale(&weight);
            }
            values[(idx / dim, idx % dim)] += weight_f * entry.to_f64();
        }
    }
    if let Some(exact) = &exact {
        // float view of the exact sum, so both paths agree to the last bit
        for (idx, e) in exact.iter().enumerate() {
            values[(idx / dim, idx % dim)] = e.to_f64();
        }
    }
    Ok(ImZMatrix {
        n,
        basis,
        cutoff: cutoff.clone(),
        form,
        exact,
        values,
        warning: None,
    })
}

/// Position form of `Im Z` on level `n`, summed over all lower levels.
pub fn im_z_matrix(n: u32, cutoff: &CutoffFunction) -> Result<ImZMatrix> {
    assemble(n, cutoff, ImZForm::Position)
}

/// Momentum form of `Im Z`, built from exactly differentiated momentum elements.
pub fn im_z_momentum_form(n: u32, cutoff: &CutoffFunction) -> Result<ImZMatrix> {
    assemble(n, cutoff, ImZForm::Momentum)
}
