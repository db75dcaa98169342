//! Finite sums of rational multiples of square roots.
//!
//! Each term is stored as `coeff * sqrt(radicand)` with `radicand` a
//! square-free positive integer, so two scalars are equal exactly when their
//! term maps are equal. Square roots of distinct square-free integers are
//! linearly independent over the rationals, which is what makes the sign test
//! in [`ExactScalar::signum`] terminate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    terms: BTreeMap<BigUint, Rational>,
}

/// Splits `n` into `(root, core)` with `n = root^2 * core` and `core` square-free.
pub fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut core = BigUint::one();
    if rest.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut p: u64 = 2;
    // Once p^3 > rest, every remaining prime factor exceeds rest^(1/3), so
    // rest is 1, a prime, a product of two primes, or a prime square.
    while BigUint::from(p).pow(3) <= rest {
        let bp = BigUint::from(p);
        if (&rest % &bp).is_zero() {
            let mut exp = 0u32;
            while (&rest % &bp).is_zero() {
                rest /= &bp;
                exp += 1;
            }
            root *= bp.pow(exp / 2);
            if exp % 2 == 1 {
                core *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        root *= s;
    } else {
        core *= rest;
    }
    (root, core)
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Self::zero();
        s.push_term(q, BigUint::one());
        s
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    /// Exact square root of a nonnegative rational.
    ///
    /// The largest squares of numerator and denominator are pulled out
    /// separately; the leftover denominator core is then cleared into the
    /// radicand, e.g. `sqrt(8) = 2*sqrt(2)` and `sqrt(1/3) = (1/3)*sqrt(3)`.
    pub fn sqrt(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NegativeRadicand(format_rational(q)));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        let (a, p) = square_free_split(num);
        let (b, d) = square_free_split(den);
        let coeff = Rational::new(BigInt::from(a), BigInt::from(b * &d));
        let mut s = Self::zero();
        s.push_term(coeff, p * d);
        Ok(s)
    }

    fn push_term(&mut self, coeff: Rational, radicand: BigUint) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(radicand.clone())
            .or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// `(coeff, radicand)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &BigUint)> {
        self.terms.iter().map(|(r, c)| (c, r))
    }

    /// The value as a rational if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * q)).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| {
                to_f64(c) * to_f64(&Rational::from_integer(BigInt::from(r.clone()))).sqrt()
            })
            .sum()
    }

    /// Exact sign: -1, 0 or 1.
    ///
    /// Brackets every square root between dyadic rationals and refines the
    /// precision until the bracket of the sum excludes zero.
    pub fn signum(&self) -> i8 {
        if self.terms.is_empty() {
            return 0;
        }
        if self.terms.values().all(|c| c.is_positive()) {
            return 1;
        }
        if self.terms.values().all(|c| c.is_negative()) {
            return -1;
        }
        let mut bits: u32 = 32;
        loop {
            let scale = BigUint::one() << bits;
            let denom = BigInt::from(scale.clone());
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (radicand, coeff) in &self.terms {
                let s = (radicand * &scale * &scale).sqrt();
                let low = Rational::new(BigInt::from(s.clone()), denom.clone());
                let high = if &s * &s == radicand * &scale * &scale {
                    low.clone()
                } else {
                    Rational::new(BigInt::from(s + 1u32), denom.clone())
                };
                if coeff.is_positive() {
                    lo += coeff * &low;
                    hi += coeff * &high;
                } else {
                    lo += coeff * &high;
                    hi += coeff * &low;
                }
            }
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for ExactScalar {
    /// Human-readable form, e.g. `256/243*sqrt(6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (radicand, coeff)) in self.terms.iter().enumerate() {
            let c = if coeff.denom().is_one() {
                coeff.numer().to_string()
            } else {
                format_rational(coeff)
            };
            if i > 0 {
                write!(f, " + ")?;
            }
            if radicand.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*sqrt({radicand})")?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.push_term(c.clone(), r.clone());
        }
        out
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.push_term(-c, r.clone());
        }
        out
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &rhs.terms {
                // sqrt(a) sqrt(b) = g sqrt(ab/g^2) for square-free a, b with g = gcd(a, b)
                let g = ra.gcd(rb);
                let radicand = (ra / &g) * (rb / &g);
                let coeff = ca * cb * Rational::from_integer(BigInt::from(g));
                out.push_term(coeff, radicand);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn sqrt(q: Rational) -> ExactScalar {
        ExactScalar::sqrt(&q).unwrap()
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt(rat(4, 9)), ExactScalar::from_rational(rat(2, 3)));
        assert_eq!(
            sqrt(rat(1, 3)) * sqrt(rat(1, 3)),
            ExactScalar::from_rational(rat(1, 3))
        );
        let eight = sqrt(int(8));
        let (c, r) = eight.terms().next().unwrap();
        assert_eq!((c.clone(), r.clone()), (int(2), BigUint::from(2u32)));
        assert!(ExactScalar::sqrt(&rat(-1, 2)).is_err());
        assert!(sqrt(int(0)).is_zero());
    }

    #[test]
    fn square_of_single_term_is_rational() {
        let s = sqrt(rat(50, 27)).scale(&rat(-3, 7));
        assert!(s.square().is_rational());
        assert_eq!(s.square().as_rational().unwrap(), rat(9 * 50, 49 * 27));
    }

    #[test]
    fn square_free_split_handles_large_smooth_numbers() {
        let n = crate::exact::rational::factorial(15).pow(3);
        let (root, core) = square_free_split(&n);
        assert_eq!(&root * &root * &core, n);
        // core must be square-free
        let (r2, _) = square_free_split(&core);
        assert!(r2.is_one());
        let (root, core) = square_free_split(&BigUint::from(97u32 * 97 * 2));
        assert_eq!((root, core), (BigUint::from(97u32), BigUint::from(2u32)));
        let (root, core) = square_free_split(&BigUint::from(101u32 * 103));
        assert_eq!((root, core), (BigUint::one(), BigUint::from(101u32 * 103)));
    }

    #[test]
    fn signum_of_mixed_terms() {
        // sqrt(2) - 7/5 > 0, sqrt(2) - 3/2 < 0
        let s2 = sqrt(int(2));
        assert_eq!((&s2 - &ExactScalar::from_rational(rat(7, 5))).signum(), 1);
        assert_eq!((&s2 - &ExactScalar::from_rational(rat(3, 2))).signum(), -1);
        // sqrt(2) + sqrt(3) - sqrt(10) is about -0.0165
        let v = &(&s2 + &sqrt(int(3))) - &sqrt(int(10));
        assert_eq!(v.signum(), -1);
        assert!(sqrt(int(3)) > sqrt(int(2)));
    }

    #[test]
    fn display() {
        let s = &sqrt(int(6)).scale(&rat(256, 243)) + &ExactScalar::from_int(2);
        assert_eq!(s.to_string(), "2 + 256/243*sqrt(6)");
    }

    fn small_scalar() -> impl Strategy<Value = ExactScalar> {
        prop::collection::vec((-6i64..=6, 1i64..=5, 1i64..=12, 1i64..=6), 0..4).prop_map(|terms| {
            terms
                .into_iter()
                .map(|(cn, cd, rn, rd)| sqrt(rat(rn, rd)).scale(&rat(cn, cd)))
                .sum()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn value_matches_float(a in small_scalar(), b in small_scalar()) {
            let exact = (&a * &b).to_f64();
            let float = a.to_f64() * b.to_f64();
            prop_assert!((exact - float).abs() <= 1e-9 * (1.0 + float.abs()));
            let diff = a.to_f64() - b.to_f64();
            if diff.abs() > 1e-9 {
                prop_assert_eq!(a.cmp(&b), diff.partial_cmp(&0.0).unwrap());
            }
        }

        #[test]
        fn normalization_idempotent(n in 0i64..5000, d in 1i64..5000) {
            let s = sqrt(rat(n, d));
            let (c, r) = match s.terms().next() {
                Some((c, r)) => (c.clone(), r.clone()),
                None => return Ok(()),
            };
            let again = sqrt(Rational::from_integer(BigInt::from(r))).scale(&c);
            prop_assert_eq!(again, s.clone());
            prop_assert_eq!(s.square().as_rational().unwrap(), rat(n, d));
        }
    }
}
