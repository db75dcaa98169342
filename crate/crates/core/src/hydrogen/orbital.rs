use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// Bound state `u_{n,l,m}` with `n >= 1`, `0 <= l < n`, `|m| <= l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbital {
    n: u32,
    l: u32,
    m: i32,
}

impl Orbital {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 || l >= n || m.unsigned_abs() > l {
            return Err(Error::InvalidQuantumNumbers { n, l, m });
        }
        Ok(Self { n, l, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// All `n^2` orbitals of a level, ordered by `l` then `m`.
    pub fn level(n: u32) -> Result<Vec<Orbital>> {
        if n == 0 {
            return Err(Error::InvalidQuantumNumbers { n, l: 0, m: 0 });
        }
        Ok((0..n)
            .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| Orbital { n, l, m }))
            .collect())
    }

    /// Spectroscopic label such as `3p(m=-1)`.
    pub fn label(&self) -> String {
        const LETTERS: &[u8] = b"spdfghiklmnoqrtuv";
        let letter = LETTERS
            .get(self.l as usize)
            .map(|&b| b as char)
            .unwrap_or('?');
        format!("{}{}(m={})", self.n, letter, self.m)
    }
}

impl fmt::Display for Orbital {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n, self.l, self.m)
    }
}

impl std::str::FromStr for Orbital {
    type Err = Error;

    /// Parses `n,l,m`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::invalid(format!("expected n,l,m but got {s:?}")));
        }
        let bad = |_| Error::invalid(format!("expected integers n,l,m but got {s:?}"));
        let n: u32 = parts[0].parse().map_err(bad)?;
        let l: u32 = parts[1].parse().map_err(bad)?;
        let m: i32 = parts[2].parse().map_err(bad)?;
        Orbital::new(n, l, m)
    }
}

/// `E_n = -1/(4 n^2)`: eigenvalues of `-Laplacian - 1/|x|`, i.e. units of 4 Ry.
pub fn energy(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumbers { n, l: 0, m: 0 });
    }
    Ok(rat(-1, 4 * i64::from(n) * i64::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_bounds() {
        assert!(Orbital::new(0, 0, 0).is_err());
        assert!(Orbital::new(2, 2, 0).is_err());
        assert!(Orbital::new(3, 1, -2).is_err());
        assert!(Orbital::new(3, 2, -2).is_ok());
        assert_eq!(Orbital::level(3).unwrap().len(), 9);
        assert_eq!(
            "2,1,0".parse::<Orbital>().unwrap(),
            Orbital::new(2, 1, 0).unwrap()
        );
        assert!("2,1".parse::<Orbital>().is_err());
        assert!("2,5,0".parse::<Orbital>().is_err());
        assert_eq!(Orbital::new(3, 1, -1).unwrap().label(), "3p(m=-1)");
    }

    #[test]
    fn energies() {
        assert_eq!(energy(1).unwrap(), rat(-1, 4));
        assert_eq!(energy(2).unwrap(), rat(-1, 16));
        assert_eq!(energy(3).unwrap() - energy(2).unwrap(), rat(5, 144));
        assert!(energy(0).is_err());
    }

    // Finite-difference discretization of the l = 0 radial operator
    // -u'' - u/r on [0, 80] with Dirichlet ends; eigenvalues located by Sturm
    // bisection on the tridiagonal matrix as an independent oracle.
    #[test]
    fn energies_match_grid_diagonalization() {
        let n = 40_000usize;
        let h = 80.0 / (n + 1) as f64;
        let diag: Vec<f64> = (1..=n)
            .map(|i| 2.0 / (h * h) - 1.0 / (i as f64 * h))
            .collect();
        let off2 = 1.0 / (h * h * h * h);
        let count_below = |x: f64| {
            let mut d = diag[0] - x;
            let mut count = usize::from(d < 0.0);
            for &a in &diag[1..] {
                d = a - x - off2 / if d == 0.0 { 1e-300 } else { d };
                count += usize::from(d < 0.0);
            }
            count
        };
        for k in 1..=2usize {
            let (mut lo, mut hi) = (-1.0, 0.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if count_below(mid) >= k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let want = crate::exact::to_f64(&energy(k as u32).unwrap());
            assert!((hi - want).abs() < 1e-4, "level {k}: {hi} vs {want}");
        }
    }
}
