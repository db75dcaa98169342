//! Exact hydrogen bound states in units where `H = -Laplacian - 1/|x|`:
//! lengths in half Bohr radii, energies in units of 4 Ry.

mod angular;
mod dipole;
mod orbital;
mod radial;
mod table;

pub use angular::{cos_theta, sin_theta_lower, sin_theta_raise};
pub use dipole::{
    angular_element, dipole_allowed, dipole_element, momentum_element, momentum_from_commutator,
    Axis, ExactComplex, Phase, PhasedScalar,
};
pub use orbital::{energy, Orbital};
pub use radial::{
    gordon_2p_closed_form_squared, gordon_radial_integral, radial, radial_moment, RadialFunction,
};
pub use table::{format_float, phased_to_json, scalar_to_json, DipoleTable};
