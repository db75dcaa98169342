use crate::error::{Error, Result};
use crate::exact::{
    factorial_q, int, integrate_poly_exp, laguerre, pow, rat, ExactScalar, Polynomial, Rational,
};

/// `R_{n,l}(r) = prefactor * polynomial(r) * exp(-rate * r)` in units of half a Bohr radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialFunction {
    pub n: u32,
    pub l: u32,
    pub prefactor: ExactScalar,
    pub polynomial: Polynomial,
    /// Always `1/(2n)`.
    pub rate: Rational,
}

/// Builds
/// `R_{n,l}(r) = -(1/sqrt 8) (n-l-1)!^(1/2) / ((n+l)!^(3/2) (2n)^(1/2)) (2/n)^(3/2)
///               e^(-r/(2n)) (r/n)^l L^(2l+1)_(n+l)(r/n)`.
///
/// The global minus sign is kept; only squares enter decay rates.
pub fn radial(n: u32, l: u32) -> Result<RadialFunction> {
    if n == 0 || l >= n {
        return Err(Error::InvalidQuantumNumbers { n, l, m: 0 });
    }
    let (n_us, l_us) = (n as usize, l as usize);
    let n_q = int(i64::from(n));
    let sqrt = |q: Rational| ExactScalar::sqrt(&q);
    let fact_big = factorial_q(n_us + l_us);
    let prefactor = sqrt(rat(1, 8))?
        * sqrt(factorial_q(n_us - l_us - 1))?
        * sqrt(pow(&fact_big, -3))?
        * sqrt(rat(1, 2 * i64::from(n)))?
        * sqrt(pow(&(int(2) / &n_q), 3))?;
    let prefactor = -prefactor;

    let inv_n = rat(1, i64::from(n));
    let lag = laguerre(n_us + l_us, 2 * l_us + 1)?.substitute_scaled(&inv_n);
    let polynomial = lag.shift(l_us).scale(&pow(&inv_n, l as i32));
    Ok(RadialFunction {
        n,
        l,
        prefactor,
        polynomial,
        rate: rat(1, 2 * i64::from(n)),
    })
}

impl RadialFunction {
    pub fn eval_f64(&self, r: f64) -> f64 {
        self.prefactor.to_f64()
            * self.polynomial.eval_f64(r)
            * (-crate::exact::to_f64(&self.rate) * r).exp()
    }

    /// Polynomial part of `R'`, sharing this function's prefactor and exponential.
    pub fn derivative_polynomial(&self) -> Polynomial {
        &self.polynomial.derivative() - &self.polynomial.scale(&self.rate)
    }
}

/// `int_0^inf r^k a(r) b(r) dr` for polynomial-times-exponential factors.
fn pair_integral(
    pa: &ExactScalar,
    qa: &Polynomial,
    pb: &ExactScalar,
    qb: &Polynomial,
    rate: &Rational,
    k: usize,
) -> Result<ExactScalar> {
    Ok(pa * pb * integrate_poly_exp(&(qa * qb), rate, k)?)
}

/// `int_0^inf r^k R_a(r) R_b(r) dr`
pub fn radial_moment(a: &RadialFunction, b: &RadialFunction, k: usize) -> Result<ExactScalar> {
    pair_integral(
        &a.prefactor,
        &a.polynomial,
        &b.prefactor,
        &b.polynomial,
        &(&a.rate + &b.rate),
        k,
    )
}

/// `R^{n',l'}_{n,l} = int_0^inf r^3 R_{n',l'} R_{n,l} dr`, by direct exact integration.
pub fn gordon_radial_integral(n: u32, l: u32, n_prime: u32, l_prime: u32) -> Result<ExactScalar> {
    radial_moment(&radial(n_prime, l_prime)?, &radial(n, l)?, 3)
}

/// Square of the closed form `|R^{n,0}_{2,1}| = 2 sqrt(2^15 n^9 (n-2)^(2n-6) / (3 (n+2)^(2n+6)))`.
pub fn gordon_2p_closed_form_squared(n: u32) -> Result<Rational> {
    if n == 0 || n == 2 {
        return Err(Error::invalid(format!(
            "closed form needs n >= 1, n != 2 (got {n})"
        )));
    }
    let n = i64::from(n);
    let body = int(1 << 15) * pow(&int(n), 9) * pow(&int(n - 2), 2 * n as i32 - 6)
        / (int(3) * pow(&int(n + 2), 2 * n as i32 + 6));
    Ok(int(4) * body)
}

/// `int_0^inf r^2 R_target (d/dr + c/r) R_source dr`, the radial part of a
/// gradient matrix element (`c = -l` for `l -> l+1`, `c = l+1` for `l -> l-1`).
pub(crate) fn gradient_radial_integral(
    target: &RadialFunction,
    source: &RadialFunction,
    c: i64,
) -> Result<ExactScalar> {
    let rate = &target.rate + &source.rate;
    let deriv = pair_integral(
        &target.prefactor,
        &target.polynomial,
        &source.prefactor,
        &source.derivative_polynomial(),
        &rate,
        2,
    )?;
    let over_r = pair_integral(
        &target.prefactor,
        &target.polynomial,
        &source.prefactor,
        &source.polynomial,
        &rate,
        1,
    )?;
    Ok(deriv + over_r.scale(&int(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state() {
        let r10 = radial(1, 0).unwrap();
        // (1/sqrt 2) e^{-r/2}
        let value = &r10.prefactor * &r10.polynomial.coeff(0);
        assert_eq!(value, ExactScalar::sqrt(&rat(1, 2)).unwrap());
        assert_eq!(r10.polynomial.degree(), Some(0));
        assert_eq!(r10.rate, rat(1, 2));
        assert!(radial(2, 2).is_err());
        assert!(radial(0, 0).is_err());
    }

    #[test]
    fn normalization_and_degrees() {
        for n in 1..=8u32 {
            for l in 0..n {
                let r = radial(n, l).unwrap();
                assert_eq!(
                    radial_moment(&r, &r, 2).unwrap(),
                    ExactScalar::one(),
                    "n={n} l={l}"
                );
                assert_eq!(r.polynomial.degree(), Some((n - 1) as usize));
                // R ~ r^l near the origin
                for k in 0..l as usize {
                    assert!(r.polynomial.coeff(k).is_zero());
                }
                assert!(!r.polynomial.coeff(l as usize).is_zero());
            }
        }
        let r30 = radial(3, 0).unwrap();
        assert_eq!(r30.polynomial.degree(), Some(2));
    }

    #[test]
    fn orthogonality_within_l() {
        for l in 0..6u32 {
            for n in (l + 1)..=6 {
                for n2 in (n + 1)..=6 {
                    let ov =
                        radial_moment(&radial(n, l).unwrap(), &radial(n2, l).unwrap(), 2).unwrap();
                    assert!(ov.is_zero(), "n={n} n'={n2} l={l}");
                }
            }
        }
    }

    #[test]
    fn gordon_examples() {
        let r = gordon_radial_integral(2, 1, 1, 0).unwrap();
        assert_eq!(r, ExactScalar::sqrt(&int(6)).unwrap().scale(&rat(256, 243)));
        assert!((r.to_f64().abs() - 2.580_532_403_919_73).abs() < 1e-12);
        assert_eq!(
            r.square().as_rational().unwrap(),
            pow(&int(2), 17) / pow(&int(3), 9)
        );
        let r3 = gordon_radial_integral(2, 1, 3, 0).unwrap();
        assert_eq!(
            r3.square().as_rational().unwrap(),
            pow(&int(2), 17) * pow(&int(3), 8) / pow(&int(5), 12)
        );
        assert_eq!(
            gordon_radial_integral(1, 0, 1, 0).unwrap(),
            ExactScalar::from_int(3)
        );
    }

    #[test]
    fn gordon_closed_form() {
        for n in [1u32, 3, 4, 5, 6, 7, 8] {
            let direct = gordon_radial_integral(2, 1, n, 0).unwrap().square();
            assert_eq!(
                direct.as_rational().unwrap(),
                gordon_2p_closed_form_squared(n).unwrap(),
                "n={n}"
            );
        }
        assert!(gordon_2p_closed_form_squared(2).is_err());
    }

    #[test]
    fn float_evaluation_matches_polynomial_form() {
        let r21 = radial(2, 1).unwrap();
        // R_{2,1}(r) = r e^{-r/4} / (16 sqrt 3) after the scaling x -> 2x
        for x in [0.5f64, 1.0, 4.0, 9.0] {
            let want = x * (-x / 4.0).exp() / (16.0 * 3f64.sqrt());
            assert!((r21.eval_f64(x) - want).abs() < 1e-14);
        }
    }
}
