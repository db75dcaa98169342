//! Univariate polynomials in `r` with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{factorial_q, pow, Rational};
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    /// `coeffs[k]` multiplies `r^k`; no trailing zeros.
    coeffs: Vec<ExactScalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(ExactScalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(coeffs.into_iter().map(ExactScalar::from_rational).collect())
    }

    /// `c * r^k`
    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> ExactScalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }

    pub fn scale_exact(&self, s: &ExactScalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplies by `r^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// `p(c r)` as a polynomial in `r`.
    pub fn substitute_scaled(&self, c: &Rational) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a.scale(&pow(c, k as i32)))
                .collect(),
        )
    }

    pub fn eval_f64(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.to_f64())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*r")?,
                _ => write!(f, "({c})*r^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

/// Associated Laguerre polynomial `(d/dr)^mu ( e^r (d/dr)^lambda ( e^-r r^lambda ) )`.
///
/// Built by symbolic differentiation: `d/dr [e^-r p] = e^-r (p' - p)`, so the
/// inner factor is `lambda` applications of `p -> p' - p` to `r^lambda`.
pub fn laguerre(lambda: usize, mu: usize) -> Result<Polynomial> {
    if mu > lambda {
        return Err(Error::invalid(format!(
            "laguerre index mu={mu} exceeds lambda={lambda}"
        )));
    }
    let mut p = Polynomial::monomial(ExactScalar::one(), lambda);
    for _ in 0..lambda {
        p = &p.derivative() - &p;
    }
    for _ in 0..mu {
        p = p.derivative();
    }
    Ok(p)
}

/// `int_0^inf r^k p(r) e^(-a r) dr`, termwise from `int r^j e^(-a r) = j!/a^(j+1)`.
pub fn integrate_poly_exp(p: &Polynomial, a: &Rational, k: usize) -> Result<ExactScalar> {
    if *a <= Rational::zero() {
        return Err(Error::DivergentIntegral(super::rational::format_rational(
            a,
        )));
    }
    let inv = Rational::one() / a;
    Ok(p.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            let power = j + k;
            c.scale(&(factorial_q(power) * pow(&inv, power as i32 + 1)))
        })
        .sum())
}
