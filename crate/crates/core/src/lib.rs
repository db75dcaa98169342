// `!(x > 0.0)` is the NaN-rejecting form of a range check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exact;
pub mod hydrogen;
pub mod linewidth;
pub mod resonance;

pub use error::{Error, Result};
