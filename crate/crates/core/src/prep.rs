//! The P-representation `E = min_r { P^2/r^2 + sgn(q) r^q }` (with `ln r`
//! for `q = 0`), its derivative and inverse, the `Z` and `Q` functions, and
//! energies of scaled and shifted potentials expressed through a single `P`.
//!
//! The `q = 0` case has its own code path everywhere; it is never reached as
//! a numerical limit of the power formulas.

use serde::{Deserialize, Serialize};

use crate::exact::StateLabel;
use crate::{Error, Result};

/// `½(1 + ln 2)`, the constant in the log-potential formula.
pub const LOG_CONSTANT: f64 = 0.846_573_590_279_972_6;

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!("P must be positive and finite, got {p}")));
    }
    Ok(())
}

fn check_q(q: f64) -> Result<()> {
    if !(q > -2.0) || !q.is_finite() {
        return Err(Error::Domain(format!("exponent must satisfy q > -2, got {q}")));
    }
    Ok(())
}

/// Kinetic-potential energy `g(P, q) = min_{r>0} { P^2/r^2 + sgn(q) r^q }`.
pub fn g(p: f64, q: f64) -> Result<f64> {
    check_p(p)?;
    check_q(q)?;
    if q == 0.0 {
        return Ok(LOG_CONSTANT + p.ln());
    }
    let base = 2.0 * p * p / q.abs();
    Ok(q.signum() * (1.0 + 0.5 * q) * base.powf(q / (2.0 + q)))
}

/// `∂g/∂P`, strictly positive on the whole domain.
pub fn g_derivative(p: f64, q: f64) -> Result<f64> {
    check_p(p)?;
    check_q(q)?;
    if q == 0.0 {
        return Ok(1.0 / p);
    }
    let base = 2.0 * p * p / q.abs();
    Ok(q.abs() / p * base.powf(q / (2.0 + q)))
}

/// Inverse of `g` in its first argument.
pub fn p_from_energy(e: f64, q: f64) -> Result<f64> {
    check_q(q)?;
    if !e.is_finite() {
        return Err(Error::Domain(format!("energy must be finite, got {e}")));
    }
    if q == 0.0 {
        return Ok((e - LOG_CONSTANT).exp());
    }
    if e == 0.0 || e.signum() != q.signum() {
        return Err(Error::Domain(format!("energy {e} has no P-representation for q = {q} (sign mismatch)")));
    }
    let ln_p = 0.5 * ((0.5 * q.abs()).ln() + (2.0 + q) / q * (e.abs() / (1.0 + 0.5 * q)).ln());
    Ok(ln_p.exp())
}

/// `Z(q) = (1 + q/N)^{1/q}`, with `Z(0) = e^{1/N}`.
pub fn z_factor(q: f64, dim: u32) -> Result<f64> {
    if dim < 1 {
        return Err(Error::Domain("dimension must be >= 1".into()));
    }
    let n = dim as f64;
    if q == 0.0 {
        return Ok((1.0 / n).exp());
    }
    if !(1.0 + q / n > 0.0) {
        return Err(Error::Domain(format!("Z(q) needs q > -N; got q = {q}, N = {dim}")));
    }
    Ok(((q / n).ln_1p() / q).exp())
}

/// `min_r { P^2/r^2 + A + B sgn(q) r^q }`, or `A + B ln r` in place of the power when `q = 0`.
pub fn scaled_energy(p: f64, shift: f64, scale: f64, q: f64) -> Result<f64> {
    check_p(p)?;
    check_q(q)?;
    if !(scale > 0.0) {
        return Err(Error::Domain(format!("scale B must be positive, got {scale}")));
    }
    if q == 0.0 {
        return Ok(shift + scale * (LOG_CONSTANT + (p / scale.sqrt()).ln()));
    }
    Ok(shift + scale.powf(2.0 / (q + 2.0)) * g(p, q)?)
}

/// Energy for the family `V(r, q) = (r^q - 1)/q`, with `V(r, 0) = ln r`.
///
/// Evaluated as `expm1(y)/q + e^y/2`, `y = q ln(2P^2)/(q+2)`, which is the
/// `A = -1/q`, `B = 1/|q|` case of [`scaled_energy`] rearranged to avoid
/// cancellation near `q = 0`.
pub fn shifted_family_energy(p: f64, q: f64) -> Result<f64> {
    check_p(p)?;
    check_q(q)?;
    if q == 0.0 {
        return g(p, 0.0);
    }
    let y = q / (q + 2.0) * (2.0 * p * p).ln();
    Ok(y.exp_m1() / q + 0.5 * y.exp())
}

/// One state's point on the `P(q)` curve at unit coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PSample {
    /// Exponent, `0` for the log potential.
    pub q: f64,
    pub p: f64,
    pub energy: f64,
    pub label: StateLabel,
}

impl PSample {
    pub fn from_energy(q: f64, energy: f64, label: StateLabel) -> Result<Self> {
        let p = p_from_energy(energy, q)?;
        Ok(Self { q, p, energy, label })
    }

    pub fn from_p(q: f64, p: f64, label: StateLabel) -> Result<Self> {
        let energy = g(p, q)?;
        Ok(Self { q, p, energy, label })
    }

    pub fn to_q_sample(&self) -> Result<QSample> {
        let z = z_factor(self.q, self.label.dim)?;
        Ok(QSample { q: self.q, z, q_value: z * self.p, dim: self.label.dim })
    }
}

/// `Z(q)` and `Q(q) = Z(q) P(q)` for one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QSample {
    pub q: f64,
    pub z: f64,
    pub q_value: f64,
    pub dim: u32,
}
