use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_complex::Complex64;

use super::angular::{cos_theta, sin_theta_lower, sin_theta_raise};
use super::orbital::{energy, Orbital};
use super::radial::{gordon_radial_integral, gradient_radial_integral, radial};
use crate::error::{Error, Result};
use crate::exact::{rat, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::invalid(format!(
                "axis must be x, y or z (got {other:?})"
            ))),
        }
    }
}

/// A fourth root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    fn index(self) -> u8 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    fn from_index(k: u8) -> Self {
        match k % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn conj(self) -> Self {
        Self::from_index(4 - self.index())
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Phase::One => Complex64::new(1.0, 0.0),
            Phase::I => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Phase::One => "+1",
            Phase::I => "+i",
            Phase::MinusOne => "-1",
            Phase::MinusI => "-i",
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    // phases are quarter turns, so multiplication adds indices
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_index(self.index() + rhs.index())
    }
}

/// Exact complex number `value * phase` with a real radical `value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhasedScalar {
    pub value: ExactScalar,
    pub phase: Phase,
}

impl PhasedScalar {
    pub fn zero() -> Self {
        Self::real(ExactScalar::zero())
    }

    pub fn real(value: ExactScalar) -> Self {
        Self {
            value,
            phase: Phase::One,
        }
    }

    pub fn new(value: ExactScalar, phase: Phase) -> Self {
        Self { value, phase }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.value.clone(), self.phase.conj())
    }

    /// `|z|^2`, always a pure rational when `value` has a single term.
    pub fn norm_sqr(&self) -> ExactScalar {
        self.value.square()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.phase.to_complex() * self.value.to_f64()
    }

    pub fn to_exact_complex(&self) -> ExactComplex {
        let v = self.value.clone();
        match self.phase {
            Phase::One => ExactComplex::new(v, ExactScalar::zero()),
            Phase::MinusOne => ExactComplex::new(-v, ExactScalar::zero()),
            Phase::I => ExactComplex::new(ExactScalar::zero(), v),
            Phase::MinusI => ExactComplex::new(ExactScalar::zero(), -v),
        }
    }

    /// Scales by a real exact factor.
    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::new(&self.value * s, self.phase)
    }
}

impl Mul for &PhasedScalar {
    type Output = PhasedScalar;
    fn mul(self, rhs: &PhasedScalar) -> PhasedScalar {
        PhasedScalar::new(&self.value * &rhs.value, self.phase * rhs.phase)
    }
}

impl fmt::Display for PhasedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            Phase::One => write!(f, "{}", self.value),
            p => write!(f, "({})*({})", p.symbol(), self.value),
        }
    }
}

/// Exact complex number with radical real and imaginary parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: ExactScalar,
    pub im: ExactScalar,
}

impl ExactComplex {
    pub fn new(re: ExactScalar, im: ExactScalar) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }
}

impl Add for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

/// `<l',m'| r_axis / r |l,m>` expressed as a real radical times a phase.
///
/// `x = (r/2)(s+ + s-)` and `y = (r/2i)(s+ - s-)` with `s± = sin(theta) e^{±i phi}`.
pub fn angular_element(target: &Orbital, axis: Axis, source: &Orbital) -> PhasedScalar {
    let (lp, mp, l, m) = (target.l(), target.m(), source.l(), source.m());
    let half = rat(1, 2);
    match axis {
        Axis::Z => PhasedScalar::real(cos_theta(lp, mp, l, m)),
        Axis::X | Axis::Y => {
            let (coeff, raising) = if mp == m + 1 {
                (sin_theta_raise(lp, mp, l, m), true)
            } else if mp == m - 1 {
                (sin_theta_lower(lp, mp, l, m), false)
            } else {
                return PhasedScalar::zero();
            };
            let value = coeff.scale(&half);
            let phase = match (axis, raising) {
                (Axis::X, _) => Phase::One,
                (_, true) => Phase::MinusI,
                (_, false) => Phase::I,
            };
            PhasedScalar::new(value, phase)
        }
    }
}

/// Whether `<target| r_axis |source>` is allowed by the dipole selection rules.
pub fn dipole_allowed(target: &Orbital, axis: Axis, source: &Orbital) -> bool {
    let dl = target.l().abs_diff(source.l()) == 1;
    let dm = target.m() - source.m();
    dl && match axis {
        Axis::Z => dm == 0,
        Axis::X | Axis::Y => dm.abs() == 1,
    }
}

/// `<u_target| r_axis |u_source>`: angular coefficient times the radial
/// integral `R^{n',l'}_{n,l}`; exactly zero when selection rules forbid it.
pub fn dipole_element(target: &Orbital, axis: Axis, source: &Orbital) -> Result<PhasedScalar> {
    let angular = angular_element(target, axis, source);
    if angular.is_zero() {
        return Ok(angular);
    }
    let radial = gordon_radial_integral(source.n(), source.l(), target.n(), target.l())?;
    Ok(angular.scale(&radial))
}

/// `<u_target| p_axis |u_source>` with `p = -i grad`, from exact differentiation.
///
/// Uses the gradient formula: the angular factor is that of the unit vector,
/// and the radial factor is `int r^2 R' (d/dr - l/r) R` for `l -> l+1` or
/// `int r^2 R' (d/dr + (l+1)/r) R` for `l -> l-1`.
pub fn momentum_element(target: &Orbital, axis: Axis, source: &Orbital) -> Result<PhasedScalar> {
    let angular = angular_element(target, axis, source);
    if angular.is_zero() {
        return Ok(angular);
    }
    let c = if target.l() == source.l() + 1 {
        -i64::from(source.l())
    } else {
        i64::from(source.l()) + 1
    };
    let radial_part = gradient_radial_integral(
        &radial(target.n(), target.l())?,
        &radial(source.n(), source.l())?,
        c,
    )?;
    let grad = angular.scale(&radial_part);
    Ok(&PhasedScalar::new(ExactScalar::one(), Phase::MinusI) * &grad)
}

/// Right-hand side of `<u'|p|u> = ((E_n - E_n')/(2i)) <u'|x|u>` from `[x, H] = 2ip`.
pub fn momentum_from_commutator(
    target: &Orbital,
    axis: Axis,
    source: &Orbital,
) -> Result<PhasedScalar> {
    let x = dipole_element(target, axis, source)?;
    let de = energy(source.n())? - energy(target.n())?;
    // 1/(2i) = -i/2
    let factor = PhasedScalar::new(ExactScalar::from_rational(de * rat(1, 2)), Phase::MinusI);
    Ok(&factor * &x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orb(n: u32, l: u32, m: i32) -> Orbital {
        Orbital::new(n, l, m).unwrap()
    }

    #[test]
    fn z_element_for_2p_to_ns() {
        for n in [1u32, 3, 4] {
            let el = dipole_element(&orb(n, 0, 0), Axis::Z, &orb(2, 1, 0)).unwrap();
            let want = ExactScalar::sqrt(&rat(1, 3)).unwrap()
                * gordon_radial_integral(2, 1, n, 0).unwrap();
            assert_eq!(el, PhasedScalar::real(want));
        }
    }

    #[test]
    fn forbidden_examples() {
        assert!(dipole_element(&orb(2, 0, 0), Axis::Z, &orb(1, 0, 0))
            .unwrap()
            .is_zero());
        assert!(dipole_element(&orb(1, 0, 0), Axis::X, &orb(2, 1, 0))
            .unwrap()
            .is_zero());
        assert!(momentum_element(&orb(3, 2, 1), Axis::Z, &orb(2, 1, 0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn phase_algebra() {
        assert_eq!(Phase::I * Phase::I, Phase::MinusOne);
        assert_eq!(Phase::MinusI.conj(), Phase::I);
        assert_eq!(Phase::One.conj(), Phase::One);
    }

    #[test]
    fn commutator_for_1s_2p0() {
        let (t, s) = (orb(1, 0, 0), orb(2, 1, 0));
        let p = momentum_element(&t, Axis::Z, &s).unwrap();
        assert_eq!(p, momentum_from_commutator(&t, Axis::Z, &s).unwrap());
        // (E_2 - E_1)/(2i) = -3i/32
        let x = dipole_element(&t, Axis::Z, &s).unwrap();
        assert_eq!(
            p,
            PhasedScalar::new(x.value.scale(&rat(3, 32)), Phase::MinusI)
        );
    }

    #[test]
    fn hermiticity() {
        for a in Orbital::level(3).unwrap() {
            for b in Orbital::level(2).unwrap() {
                for axis in Axis::ALL {
                    let ab = dipole_element(&a, axis, &b).unwrap();
                    let ba = dipole_element(&b, axis, &a).unwrap();
                    assert_eq!(ab.to_exact_complex(), ba.conj().to_exact_complex());
                    let pab = momentum_element(&a, axis, &b).unwrap();
                    let pba = momentum_element(&b, axis, &a).unwrap();
                    assert_eq!(pab.to_exact_complex(), pba.conj().to_exact_complex());
                }
            }
        }
    }

    #[test]
    fn diagonal_momentum_vanishes() {
        for a in Orbital::level(3).unwrap() {
            for axis in Axis::ALL {
                assert!(momentum_element(&a, axis, &a).unwrap().is_zero());
            }
        }
    }
}
