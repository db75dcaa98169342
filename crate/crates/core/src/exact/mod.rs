//! Exact arithmetic: rationals, radical scalars, polynomials, and integrals
//! of polynomial times exponential densities on the half line.

mod poly;
mod rational;
mod scalar;

pub use poly::{integrate_poly_exp, laguerre, Polynomial};
pub use rational::{
    factorial, factorial_q, format_rational, int, parse_rational, pow, rat, to_f64, Factorials,
    Rational, DEFAULT_FACTORIAL_BOUND,
};
pub use scalar::{square_free_split, ExactScalar};
