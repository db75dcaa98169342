//! Vacuum plus one-photon toy model: survival amplitudes, Feshbach map,
//! golden-rule level shift and the second-sheet resonance pole.

mod config;
mod corollary;
mod feshbach;
mod model;
mod pole;
mod quad;
mod survival;
mod zmatrix;

pub use config::{CouplingProfile, GridKind, ModelConfig};
pub use corollary::{corollary_limit_check, CorollaryRow, CorollaryTable};
pub use feshbach::{
    feshbach_batch, feshbach_operator, random_case, resolvent_identity_check, BatchReport,
    BatchRow, FeshbachData, RandomCase, ResolventCheck, MAX_CONDITION,
};
pub use model::{build_model, Grid, ToyModel};
pub use pole::{
    pole_scan, resonance_pole, PoleResult, PoleScan, PoleScanRow, MAX_NEWTON_STEPS, POLE_TOLERANCE,
};
pub use quad::{gauss_legendre, Composite};
pub use survival::{
    fit_decay, fit_window, linspace, survival_amplitude, DecayFit, Propagator, SurvivalSeries,
};
pub use zmatrix::{
    channel_function, channel_integral, im_part, im_z_eigen, self_energy, z_matrix_toy, Sheet,
};
