//! Decay operator `Im Z` on a hydrogen level, its spectrum, and SI lifetimes.

mod constants;
mod cutoff;
mod imz;
mod report;

pub use constants::PhysicalConstants;
pub use cutoff::CutoffFunction;
pub use imz::{im_z_matrix, im_z_momentum_form, ImZForm, ImZMatrix};
pub use report::{
    convention_lines, diagonalize, format_matrix_exact, format_matrix_json, format_report_csv,
    format_report_json, format_report_text, lifetimes, Eigenvalue, Lifetime, LinewidthReport,
    Spectrum, StateLifetime,
};
