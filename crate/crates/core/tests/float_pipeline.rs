//! Exact results rendered to f64 against an independent floating pipeline:
//! Laguerre recurrence radials, numerical radial integrals and closed-form
//! angular sums.

use qedlife::exact::to_f64;
use qedlife::hydrogen::{gordon_radial_integral, Orbital};
use qedlife::linewidth::{im_z_matrix, CutoffFunction};
use qedlife::resonance::Composite;

/// Generalized Laguerre `L_k^(alpha)(x)` by the three-term recurrence.
fn laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + alpha - x);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

struct FloatRadial {
    n: u32,
    l: u32,
    norm: f64,
}

impl FloatRadial {
    fn new(n: u32, l: u32, rule: &Composite) -> Self {
        let mut r = FloatRadial { n, l, norm: 1.0 };
        let s = rule.integrate(0.0, 60.0 * n as f64, |x| x * x * r.shape(x).powi(2));
        r.norm = 1.0 / s.sqrt();
        r
    }

    fn shape(&self, r: f64) -> f64 {
        let n = self.n as f64;
        let x = r / n;
        (-r / (2.0 * n)).exp()
            * x.powi(self.l as i32)
            * laguerre(self.n - self.l - 1, 2.0 * self.l as f64 + 1.0, x)
    }

    fn eval(&self, r: f64) -> f64 {
        self.norm * self.shape(r)
    }
}

fn rule() -> Composite {
    Composite::new(24, 200)
}

#[test]
fn radial_integrals_agree_to_twelve_digits() {
    let rule = rule();
    for n in 1..=5u32 {
        for np in 1..=5u32 {
            for l in 0..n {
                for lp in [l.wrapping_sub(1), l + 1] {
                    if lp >= np {
                        continue;
                    }
                    let (a, b) = (
                        FloatRadial::new(n, l, &rule),
                        FloatRadial::new(np, lp, &rule),
                    );
                    let upper = 60.0 * n.max(np) as f64;
                    let float = rule
                        .integrate(0.0, upper, |r| r.powi(3) * a.eval(r) * b.eval(r))
                        .abs();
                    let exact = gordon_radial_integral(n, l, np, lp).unwrap().to_f64().abs();
                    assert!(
                        (float - exact).abs() <= 1e-12 * exact.max(1e-300),
                        "R^{{{np},{lp}}}_{{{n},{l}}}: {float} vs {exact}"
                    );
                }
            }
        }
    }
}

/// `sum_{m', axis} |<l' m'| r_hat_axis |l m>|^2`.
fn angular_sum(l: u32, lp: u32) -> f64 {
    let l = l as f64;
    if lp as f64 > l {
        (l + 1.0) / (2.0 * l + 1.0)
    } else {
        l / (2.0 * l + 1.0)
    }
}

#[test]
fn im_z_diagonal_agrees_with_float_golden_rule() {
    let rule = rule();
    for n in 2..=5u32 {
        let m = im_z_matrix(n, &CutoffFunction::One).unwrap();
        let en = -0.25 / (n * n) as f64;
        for l in 0..n {
            let a = FloatRadial::new(n, l, &rule);
            let mut float = 0.0;
            for i in 1..n {
                let de = en + 0.25 / (i * i) as f64;
                for lp in [l.wrapping_sub(1), l + 1] {
                    if lp >= i {
                        continue;
                    }
                    let b = FloatRadial::new(i, lp, &rule);
                    let r =
                        rule.integrate(0.0, 60.0 * n as f64, |r| r.powi(3) * a.eval(r) * b.eval(r));
                    float += 2.0 / 3.0 * de.powi(3) * r * r * angular_sum(l, lp);
                }
            }
            let idx = m.index_of(&Orbital::new(n, l, 0).unwrap()).unwrap();
            let exact = to_f64(
                m.exact_entry(idx, idx)
                    .unwrap()
                    .as_rational()
                    .as_ref()
                    .unwrap(),
            );
            if exact == 0.0 {
                assert!(float.abs() < 1e-20, "n={n} l={l}: {float}");
            } else {
                assert!(
                    (float - exact).abs() <= 1e-12 * exact,
                    "n={n} l={l}: {float} vs {exact}"
                );
            }
        }
    }
}
