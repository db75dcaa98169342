//! Angular coupling coefficients of the unit vector `r/|r|` between
//! spherical harmonics with Condon-Shortley phases.

use crate::exact::{rat, ExactScalar};

fn sqrt_ratio(num: i64, den: i64) -> ExactScalar {
    if num <= 0 {
        return ExactScalar::zero();
    }
    ExactScalar::sqrt(&rat(num, den)).expect("nonnegative ratio")
}

/// `<l',m'| cos(theta) |l,m>`
pub fn cos_theta(lp: u32, mp: i32, l: u32, m: i32) -> ExactScalar {
    let (l, lp, m) = (i64::from(l), i64::from(lp), i64::from(m));
    if i64::from(mp) != m {
        return ExactScalar::zero();
    }
    if lp == l + 1 {
        sqrt_ratio((l + 1) * (l + 1) - m * m, (2 * l + 1) * (2 * l + 3))
    } else if lp == l - 1 {
        sqrt_ratio(l * l - m * m, (2 * l - 1) * (2 * l + 1))
    } else {
        ExactScalar::zero()
    }
}

/// `<l',m'| sin(theta) e^{i phi} |l,m>`, nonzero only for `m' = m + 1`.
pub fn sin_theta_raise(lp: u32, mp: i32, l: u32, m: i32) -> ExactScalar {
    let (l, lp, m) = (i64::from(l), i64::from(lp), i64::from(m));
    if i64::from(mp) != m + 1 {
        return ExactScalar::zero();
    }
    if lp == l + 1 {
        -sqrt_ratio((l + m + 1) * (l + m + 2), (2 * l + 1) * (2 * l + 3))
    } else if lp == l - 1 {
        sqrt_ratio((l - m) * (l - m - 1), (2 * l - 1) * (2 * l + 1))
    } else {
        ExactScalar::zero()
    }
}

/// `<l',m'| sin(theta) e^{-i phi} |l,m>`, nonzero only for `m' = m - 1`.
pub fn sin_theta_lower(lp: u32, mp: i32, l: u32, m: i32) -> ExactScalar {
    let (l, lp, m) = (i64::from(l), i64::from(lp), i64::from(m));
    if i64::from(mp) != m - 1 {
        return ExactScalar::zero();
    }
    if lp == l + 1 {
        sqrt_ratio((l - m + 1) * (l - m + 2), (2 * l + 1) * (2 * l + 3))
    } else if lp == l - 1 {
        -sqrt_ratio((l + m) * (l + m - 1), (2 * l - 1) * (2 * l + 1))
    } else {
        ExactScalar::zero()
    }
}
