//! Closed-form spectra used as ground truth: hydrogenic and oscillator
//! levels, linear-potential levels from Airy zeros, degeneracies and the
//! coupling scaling law.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::airy::{airy_zero, AiryZeroIndex, AiryZeroKind};
use crate::{Error, Result};

/// Eigenstate label `(N, n, ell)`: dimension, radial quantum number
/// (1 plus the number of radial nodes) and angular momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StateLabel {
    pub dim: u32,
    pub n: u32,
    pub ell: u32,
}

impl StateLabel {
    pub fn new(dim: u32, n: u32, ell: u32) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidState(format!("dimension must be >= 1, got {dim}")));
        }
        if n < 1 {
            return Err(Error::InvalidState(format!("radial quantum number must be >= 1, got {n}")));
        }
        if dim == 1 && ell != 0 {
            return Err(Error::InvalidState("ell must be 0 in one dimension".into()));
        }
        Ok(Self { dim, n, ell })
    }

    pub fn ground(dim: u32) -> Self {
        Self { dim, n: 1, ell: 0 }
    }

    fn checked(self) -> Result<Self> {
        Self::new(self.dim, self.n, self.ell)
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, n={}, l={})", self.dim, self.n, self.ell)
    }
}

/// Unit-coupling eigenvalue of `-Δ - 1/r`. One dimension is excluded.
pub fn hydrogen_energy(s: StateLabel) -> Result<f64> {
    let s = s.checked()?;
    if s.dim < 2 {
        return Err(Error::Domain("the one-dimensional hydrogen atom is not supported".into()));
    }
    let x = 2.0 * (s.n as f64 + s.ell as f64 + s.dim as f64 / 2.0 - 1.5);
    Ok(-1.0 / (x * x))
}

/// Unit-coupling eigenvalue of `-Δ + r^2`.
pub fn oscillator_energy(s: StateLabel) -> Result<f64> {
    let s = s.checked()?;
    Ok(if s.dim == 1 { 2.0 * s.n as f64 - 1.0 } else { 4.0 * s.n as f64 + 2.0 * s.ell as f64 + s.dim as f64 - 4.0 })
}

/// Linear potential `v r` for the two exactly solvable sectors.
///
/// `N = 3, ell = 0` uses zeros of Ai; `N = 1` uses zeros of Ai' with
/// `n = 1, 2, ...` mapped to the `n`-th zero. The latter covers only the
/// even-parity levels of the full-line problem; the solver's interleaved
/// one-dimensional spectrum matches it at odd `n`.
pub fn linear_energy_exact(s: StateLabel, v: f64) -> Result<f64> {
    let s = s.checked()?;
    if v <= 0.0 {
        return Err(Error::Domain(format!("coupling must be positive, got {v}")));
    }
    let kind = match (s.dim, s.ell) {
        (3, 0) => AiryZeroKind::ZeroOfAi,
        (1, _) => AiryZeroKind::ZeroOfAiPrime,
        _ => return Err(Error::Domain(format!("no closed form for the linear potential in state {s}"))),
    };
    let r = airy_zero(AiryZeroIndex { kind, k: s.n as usize })?;
    Ok(v.powf(2.0 / 3.0) * r)
}

fn factorial(n: u64) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k).ok_or(Error::Overflow("factorial")))
}

/// Multiplicity of each level in the `ell` sector of `N`-dimensional space.
pub fn degeneracy(dim: u32, ell: u32) -> Result<u128> {
    if dim < 2 {
        return Err(Error::Domain(format!("degeneracy needs N >= 2, got {dim}")));
    }
    if ell == 0 {
        return Ok(1);
    }
    let (n, l) = (dim as u64, ell as u64);
    let num = factorial(l + n - 3)?.checked_mul((2 * l + n - 2) as u128).ok_or(Error::Overflow("degeneracy"))?;
    let den = factorial(l)?.checked_mul(factorial(n - 2)?).ok_or(Error::Overflow("degeneracy"))?;
    Ok(num / den)
}

/// Eigenvalue at coupling `v` from the unit-coupling value: `v^{2/(q+2)} E`.
pub fn scale_energy(e_unit: f64, v: f64, q: f64) -> Result<f64> {
    if v <= 0.0 {
        return Err(Error::Domain(format!("coupling must be positive, got {v}")));
    }
    if q <= -2.0 {
        return Err(Error::Domain(format!("exponent must exceed -2, got {q}")));
    }
    Ok(v.powf(2.0 / (q + 2.0)) * e_unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn st(d: u32, n: u32, l: u32) -> StateLabel {
        StateLabel::new(d, n, l).unwrap()
    }

    #[test]
    fn label_invariants() {
        assert!(StateLabel::new(0, 1, 0).is_err());
        assert!(StateLabel::new(3, 0, 0).is_err());
        assert!(StateLabel::new(1, 1, 1).is_err());
        assert!(StateLabel::new(1, 2, 0).is_ok());
    }

    #[test]
    fn hydrogen_values() {
        assert_abs_diff_eq!(hydrogen_energy(st(3, 1, 0)).unwrap(), -0.25);
        assert_abs_diff_eq!(hydrogen_energy(st(3, 2, 0)).unwrap(), -0.0625);
        assert_abs_diff_eq!(hydrogen_energy(st(2, 1, 0)).unwrap(), -1.0);
        assert!(hydrogen_energy(st(1, 1, 0)).is_err());
    }

    #[test]
    fn oscillator_values() {
        assert_abs_diff_eq!(oscillator_energy(st(3, 1, 0)).unwrap(), 3.0);
        assert_abs_diff_eq!(oscillator_energy(st(3, 2, 1)).unwrap(), 9.0);
        assert_abs_diff_eq!(oscillator_energy(st(1, 1, 0)).unwrap(), 1.0);
    }

    #[test]
    fn linear_values() {
        assert_abs_diff_eq!(linear_energy_exact(st(3, 1, 0), 1.0).unwrap(), 2.338_107_41, epsilon = 1e-8);
        assert_abs_diff_eq!(linear_energy_exact(st(3, 1, 0), 8.0).unwrap(), 9.352_429_64, epsilon = 1e-8);
        assert_abs_diff_eq!(linear_energy_exact(st(1, 1, 0), 1.0).unwrap(), 1.018_792_97, epsilon = 1e-8);
        assert!(linear_energy_exact(st(3, 1, 1), 1.0).is_err());
        assert!(linear_energy_exact(st(2, 1, 0), 1.0).is_err());
        assert!(linear_energy_exact(st(3, 1, 0), 0.0).is_err());
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy(3, 1).unwrap(), 3);
        assert_eq!(degeneracy(4, 1).unwrap(), 4);
        assert_eq!(degeneracy(3, 0).unwrap(), 1);
        assert_eq!(degeneracy(3, 2).unwrap(), 5);
        assert_eq!(degeneracy(2, 5).unwrap(), 2);
        assert!(degeneracy(1, 0).is_err());
        assert!(matches!(degeneracy(30, 20), Err(Error::Overflow(_))));
    }

    #[test]
    fn scaling_values() {
        assert_abs_diff_eq!(scale_energy(3.0, 1.0, 2.0).unwrap(), 3.0);
        assert_abs_diff_eq!(scale_energy(2.338_107_41, 8.0, 1.0).unwrap(), 9.352_429_64, epsilon = 1e-8);
        assert_abs_diff_eq!(scale_energy(-0.25, 4.0, -1.0).unwrap(), -4.0, epsilon = 1e-14);
        assert!(scale_energy(1.0, 0.0, 1.0).is_err());
        for &(e, v, q) in &[(2.5, 3.0, 1.5), (-0.7, 0.2, -0.5), (1.0, 7.0, 0.0)] {
            let ratio = scale_energy(e, v, q).unwrap() / e;
            assert_abs_diff_eq!(ratio, v.powf(2.0 / (q + 2.0)), epsilon = 1e-14);
        }
    }

    #[test]
    fn monotone_in_each_quantum_number() {
        for dim in 2..=12 {
            for n in 1..=6 {
                for l in 0..=6 {
                    let h = hydrogen_energy(st(dim, n, l)).unwrap();
                    let o = oscillator_energy(st(dim, n, l)).unwrap();
                    assert!(hydrogen_energy(st(dim, n + 1, l)).unwrap() > h);
                    assert!(hydrogen_energy(st(dim, n, l + 1)).unwrap() > h);
                    assert!(hydrogen_energy(st(dim + 1, n, l)).unwrap() > h);
                    assert!(oscillator_energy(st(dim, n + 1, l)).unwrap() > o);
                    assert!(oscillator_energy(st(dim, n, l + 1)).unwrap() > o);
                    assert!(oscillator_energy(st(dim + 1, n, l)).unwrap() > o);
                }
            }
        }
    }

    #[test]
    fn angular_momentum_shifts_dimension() {
        for dim in 2..=8 {
            for n in 1..=4 {
                for l in 0..=4 {
                    assert_eq!(
                        hydrogen_energy(st(dim, n, l)).unwrap(),
                        hydrogen_energy(st(dim + 2 * l, n, 0)).unwrap()
                    );
                    assert_eq!(
                        oscillator_energy(st(dim, n, l)).unwrap(),
                        oscillator_energy(st(dim + 2 * l, n, 0)).unwrap()
                    );
                }
            }
        }
    }
}
