//! Central potentials: the power/log family `A + B v sgn(q) r^q` and
//! `A + B v ln r`, plus general sums of such terms.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Anything that can be evaluated as a central potential `V(r)`, `r > 0`.
pub trait Potential: Sync {
    fn eval(&self, r: f64) -> f64;
}

impl<F> Potential for F
where
    F: Fn(f64) -> f64 + Sync,
{
    fn eval(&self, r: f64) -> f64 {
        self(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Power,
    Log,
}

/// `A + B v sgn(q) r^q` (power) or `A + B v ln r` (log).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    /// Exponent; ignored for the log kind.
    pub q: f64,
    pub v: f64,
    pub shift: f64,
    pub scale: f64,
}

impl PotentialSpec {
    pub fn power(q: f64, v: f64) -> Result<Self> {
        Self::new(PotentialKind::Power, q, v, 0.0, 1.0)
    }

    pub fn log(v: f64) -> Result<Self> {
        Self::new(PotentialKind::Log, 0.0, v, 0.0, 1.0)
    }

    /// Power potential for `q != 0`, log potential for `q == 0`.
    pub fn from_exponent(q: f64, v: f64) -> Result<Self> {
        if q == 0.0 {
            Self::log(v)
        } else {
            Self::power(q, v)
        }
    }

    pub fn new(kind: PotentialKind, q: f64, v: f64, shift: f64, scale: f64) -> Result<Self> {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!("coupling must be positive, got {v}")));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::Domain(format!("scale B must be positive, got {scale}")));
        }
        if !shift.is_finite() {
            return Err(Error::Domain("shift A must be finite".into()));
        }
        if kind == PotentialKind::Power && (q == 0.0 || !(q > -2.0) || !q.is_finite()) {
            return Err(Error::Domain(format!("power exponent must satisfy q > -2, q != 0; got {q}")));
        }
        let q = if kind == PotentialKind::Log { 0.0 } else { q };
        Ok(Self { kind, q, v, shift, scale })
    }

    pub fn with_shift_scale(self, shift: f64, scale: f64) -> Result<Self> {
        Self::new(self.kind, self.q, self.v, shift, scale)
    }

    /// Exponent with the log case encoded as `q = 0`.
    pub fn exponent(&self) -> f64 {
        match self.kind {
            PotentialKind::Power => self.q,
            PotentialKind::Log => 0.0,
        }
    }

    pub fn terms(&self) -> PotentialTerms {
        let c = self.scale * self.v;
        match self.kind {
            PotentialKind::Power => {
                PotentialTerms { shift: self.shift, powers: vec![(self.q, c * self.q.signum())], log_coef: 0.0 }
            }
            PotentialKind::Log => PotentialTerms { shift: self.shift, powers: Vec::new(), log_coef: c },
        }
    }
}

impl Potential for PotentialSpec {
    fn eval(&self, r: f64) -> f64 {
        let c = self.scale * self.v;
        match self.kind {
            PotentialKind::Power => self.shift + c * self.q.signum() * r.powf(self.q),
            PotentialKind::Log => self.shift + c * r.ln(),
        }
    }
}

/// `shift + sum_i c_i r^{q_i} + log_coef ln r` with signed coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialTerms {
    pub shift: f64,
    pub powers: Vec<(f64, f64)>,
    pub log_coef: f64,
}

impl PotentialTerms {
    /// Continuum threshold `lim_{r->inf} V(r)`, or `None` when the potential confines.
    pub fn threshold(&self) -> Option<f64> {
        let confining = self.log_coef > 0.0 || self.powers.iter().any(|&(q, c)| q > 0.0 && c > 0.0);
        if confining {
            None
        } else {
            Some(self.shift)
        }
    }

    /// Most singular exponent at the origin (0 for log, `+inf` when constant).
    pub fn leading_exponent(&self) -> f64 {
        let mut lead = f64::INFINITY;
        for &(q, c) in &self.powers {
            if c != 0.0 {
                lead = lead.min(q);
            }
        }
        if self.log_coef != 0.0 {
            lead = lead.min(0.0);
        }
        lead
    }

    pub fn is_single_power(&self) -> bool {
        self.log_coef == 0.0 && self.powers.len() == 1
    }
}

impl Potential for PotentialTerms {
    fn eval(&self, r: f64) -> f64 {
        let mut v = self.shift;
        for &(q, c) in &self.powers {
            v += c * r.powf(q);
        }
        if self.log_coef != 0.0 {
            v += self.log_coef * r.ln();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(PotentialSpec::power(0.0, 1.0).is_err());
        assert!(PotentialSpec::power(-2.0, 1.0).is_err());
        assert!(PotentialSpec::power(1.0, 0.0).is_err());
        assert!(PotentialSpec::power(1.0, 1.0).unwrap().with_shift_scale(0.0, -1.0).is_err());
        assert!(PotentialSpec::log(-1.0).is_err());
    }

    #[test]
    fn evaluation() {
        let p = PotentialSpec::power(-1.0, 2.0).unwrap().with_shift_scale(0.5, 3.0).unwrap();
        assert_eq!(p.eval(2.0), 0.5 - 3.0);
        assert_eq!(p.terms().eval(2.0), p.eval(2.0));
        let l = PotentialSpec::log(1.0).unwrap();
        assert_eq!(l.eval(1.0), 0.0);
        assert_eq!(l.terms().threshold(), None);
        assert_eq!(p.terms().threshold(), Some(0.5));
        assert_eq!(PotentialSpec::power(0.5, 1.0).unwrap().terms().threshold(), None);
    }

    #[test]
    fn closures_are_potentials() {
        let f = |r: f64| r * r;
        assert_eq!(Potential::eval(&f, 3.0), 9.0);
    }
}
