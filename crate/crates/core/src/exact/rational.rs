//! Arbitrary-precision rationals and the factorial cache.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders as `num/den`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den`, a bare integer, or a plain decimal such as `-0.0625`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad numerator in {text:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad denominator in {text:?}")))?;
        if den.is_zero() {
            return Err(Error::invalid(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::invalid(format!("bad decimal {text:?}")))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let q = Rational::new(num, den);
        return Ok(if negative { -q } else { q });
    }
    text.parse::<BigInt>()
        .map(Rational::from_integer)
        .map_err(|_| Error::invalid(format!("bad rational {text:?}")))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn pow(q: &Rational, exp: i32) -> Rational {
    num_traits::Pow::pow(q, exp)
}

/// Default upper bound of the shared factorial table.
pub const DEFAULT_FACTORIAL_BOUND: usize = 64;

/// Table of `0!..=bound!`; larger arguments are computed on demand.
#[derive(Debug, Clone)]
pub struct Factorials {
    table: Vec<BigUint>,
}

impl Factorials {
    pub fn with_bound(bound: usize) -> Self {
        let mut table = Vec::with_capacity(bound + 1);
        table.push(BigUint::one());
        for k in 1..=bound {
            let next = &table[k - 1] * BigUint::from(k);
            table.push(next);
        }
        Self { table }
    }

    pub fn bound(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, k: usize) -> BigUint {
        match self.table.get(k) {
            Some(v) => v.clone(),
            None => {
                let mut acc = self.table.last().cloned().unwrap_or_else(BigUint::one);
                for j in self.table.len()..=k {
                    acc *= BigUint::from(j);
                }
                acc
            }
        }
    }
}

impl Default for Factorials {
    fn default() -> Self {
        Self::with_bound(DEFAULT_FACTORIAL_BOUND)
    }
}

pub fn factorial(k: usize) -> BigUint {
    static TABLE: OnceLock<Factorials> = OnceLock::new();
    TABLE.get_or_init(Factorials::default).get(k)
}

pub fn factorial_q(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(factorial(k)))
}
