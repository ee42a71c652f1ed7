//! Airy function of the first kind and its zeros on the negative axis.
//!
//! Evaluation strategy along the real line:
//!
//! * `|x| <= 5`: Maclaurin series.
//! * `-10 < x < -5`: Taylor continuation of `y'' = x y` started from the
//!   Maclaurin values at `x = -5`. On the oscillatory side this recurrence is
//!   stable and keeps full double precision.
//! * `x <= -10` and `x > 5`: asymptotic expansions, truncated at the smallest term.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ai(0)
const AI0: f64 = 0.355_028_053_887_817_2;
/// -Ai'(0)
const AIP0: f64 = 0.258_819_403_792_806_8;

const SERIES_LIMIT: f64 = 5.0;
const ASYMPTOTIC_NEG: f64 = 10.0;
const TAYLOR_STEP: f64 = 0.25;

/// Largest supported zero index unless a caller asks for more.
pub const DEFAULT_MAX_ZERO_INDEX: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AiryZeroKind {
    /// Zeros of Ai.
    ZeroOfAi,
    /// Zeros of Ai'.
    ZeroOfAiPrime,
}

/// `k`-th zero (by increasing magnitude) of Ai or Ai'.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AiryZeroIndex {
    pub kind: AiryZeroKind,
    pub k: usize,
}

impl AiryZeroIndex {
    pub fn new(kind: AiryZeroKind, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::IndexOutOfRange { index: 0, max: DEFAULT_MAX_ZERO_INDEX });
        }
        Ok(Self { kind, k })
    }
}

/// Returns `(Ai(x), Ai'(x))`.
pub fn airy_ai(x: f64) -> (f64, f64) {
    if x.abs() <= SERIES_LIMIT {
        maclaurin(x)
    } else if x > SERIES_LIMIT {
        asymptotic_pos(x)
    } else if x > -ASYMPTOTIC_NEG {
        let start = maclaurin(-SERIES_LIMIT);
        taylor_continue(-SERIES_LIMIT, start, x)
    } else {
        asymptotic_neg(-x)
    }
}

pub fn ai(x: f64) -> f64 {
    airy_ai(x).0
}

pub fn ai_prime(x: f64) -> f64 {
    airy_ai(x).1
}

fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f = sum t_k, g = sum s_k; Ai = c1 f - c2 g
    let mut t = 1.0;
    let mut s = x;
    let mut f = t;
    let mut g = s;
    // f' = sum u_k (k>=1), g' = sum v_k (k>=0)
    let mut u = 0.5 * x * x;
    let mut v = 1.0;
    let mut fp = u;
    let mut gp = v;
    for k in 1..200 {
        let kf = k as f64;
        t *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        s *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        v *= x3 / ((3.0 * kf - 2.0) * (3.0 * kf));
        if k >= 2 {
            u *= x3 / (3.0 * (kf - 1.0) * (3.0 * kf - 1.0));
            fp += u;
        }
        f += t;
        g += s;
        gp += v;
        let scale = f.abs() + g.abs() + fp.abs() + gp.abs();
        if t.abs() + s.abs() + u.abs() + v.abs() < 1e-18 * scale.max(1e-300) {
            break;
        }
    }
    (AI0 * f - AIP0 * g, AI0 * fp - AIP0 * gp)
}

/// Advances `(y, y')` of `y'' = x y` from `x0` to `x1` with local Taylor series.
fn taylor_continue(x0: f64, (mut y, mut yp): (f64, f64), x1: f64) -> (f64, f64) {
    let steps = ((x1 - x0).abs() / TAYLOR_STEP).ceil().max(1.0) as usize;
    let h = (x1 - x0) / steps as f64;
    let mut xc = x0;
    for _ in 0..steps {
        // a_{k+2} = (xc a_k + a_{k-1}) / ((k+1)(k+2))
        let mut a_prev = 0.0; // a_{k-1}
        let mut a_k = y;
        let mut a_k1 = yp;
        let mut val = y + yp * h;
        let mut der = yp;
        let mut hp = h; // h^(k+1)
        for k in 0..80 {
            let kf = k as f64;
            let a_k2 = (xc * a_k + a_prev) / ((kf + 1.0) * (kf + 2.0));
            let hk2 = hp * h; // h^(k+2)
            let dv = a_k2 * hk2;
            let dd = (kf + 2.0) * a_k2 * hp;
            val += dv;
            der += dd;
            a_prev = a_k;
            a_k = a_k1;
            a_k1 = a_k2;
            hp = hk2;
            if k > 4 && dv.abs() + dd.abs() < 1e-19 * (val.abs() + der.abs()) {
                break;
            }
        }
        y = val;
        yp = der;
        xc += h;
    }
    (y, yp)
}

fn u_coeffs(n: usize) -> Vec<f64> {
    let mut u = vec![1.0; n];
    for k in 1..n {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
    }
    u
}

fn v_coeff(u: &[f64], k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        let kf = k as f64;
        -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k]
    }
}

const ASYM_TERMS: usize = 40;

/// Sums `sum_k c_k w^k` stopping at the smallest term.
fn truncated_sum(coeff: impl Fn(usize) -> f64, w: f64) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut wp = 1.0;
    for k in 0..ASYM_TERMS {
        let term = coeff(k) * wp;
        if term.abs() > last {
            break;
        }
        sum += term;
        last = term.abs();
        if last < 1e-18 * sum.abs() {
            break;
        }
        wp *= w;
    }
    sum
}

fn asymptotic_neg(z: f64) -> (f64, f64) {
    let u = u_coeffs(2 * ASYM_TERMS + 2);
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let w = 1.0 / (zeta * zeta);
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let p_u = truncated_sum(|k| sign(k) * u[2 * k], w);
    let q_u = truncated_sum(|k| sign(k) * u[2 * k + 1], w) / zeta;
    let p_v = truncated_sum(|k| sign(k) * v_coeff(&u, 2 * k), w);
    let q_v = truncated_sum(|k| sign(k) * v_coeff(&u, 2 * k + 1), w) / zeta;
    let (s, c) = (zeta - FRAC_PI_4).sin_cos();
    let z4 = z.powf(0.25);
    let sp = PI.sqrt();
    let a = (c * p_u + s * q_u) / (sp * z4);
    let ap = z4 / sp * (s * p_v - c * q_v);
    (a, ap)
}

fn asymptotic_pos(z: f64) -> (f64, f64) {
    let u = u_coeffs(ASYM_TERMS + 1);
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let w = -1.0 / zeta;
    let su = truncated_sum(|k| u[k], w);
    let sv = truncated_sum(|k| v_coeff(&u, k), w);
    let e = (-zeta).exp();
    let z4 = z.powf(0.25);
    let sp = PI.sqrt();
    (e / (2.0 * sp * z4) * su, -z4 * e / (2.0 * sp) * sv)
}

/// Standard asymptotic estimate of the `k`-th zero magnitude.
fn zero_estimate(kind: AiryZeroKind, k: usize) -> f64 {
    let kf = k as f64;
    match kind {
        AiryZeroKind::ZeroOfAi => {
            let t = 3.0 * PI * (4.0 * kf - 1.0) / 8.0;
            t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t.powi(-2) - 5.0 / 36.0 * t.powi(-4))
        }
        AiryZeroKind::ZeroOfAiPrime => {
            let t = 3.0 * PI * (4.0 * kf - 3.0) / 8.0;
            t.powf(2.0 / 3.0) * (1.0 - 7.0 / 48.0 * t.powi(-2) + 35.0 / 288.0 * t.powi(-4))
        }
    }
}

/// Positive `r_k` with `Ai(-r_k) = 0` or `Ai'(-r_k) = 0`, using the default index limit.
pub fn airy_zero(idx: AiryZeroIndex) -> Result<f64> {
    airy_zero_with_limit(idx, DEFAULT_MAX_ZERO_INDEX)
}

pub fn airy_zero_with_limit(idx: AiryZeroIndex, max_index: usize) -> Result<f64> {
    if idx.k == 0 || idx.k > max_index {
        return Err(Error::IndexOutOfRange { index: idx.k, max: max_index });
    }
    let target = |r: f64| -> f64 {
        let (a, ap) = airy_ai(-r);
        match idx.kind {
            AiryZeroKind::ZeroOfAi => a,
            AiryZeroKind::ZeroOfAiPrime => ap,
        }
    };
    let est = zero_estimate(idx.kind, idx.k);
    let spacing = PI / est.max(1.0).sqrt();
    let mut half = 0.25 * spacing;
    let (mut lo, mut hi) = ((est - half).max(0.0), est + half);
    let mut tries = 0;
    while target(lo) * target(hi) > 0.0 {
        tries += 1;
        if tries > 8 {
            return Err(Error::NotBracketed(format!("Airy zero {idx:?} near {est}")));
        }
        half *= 1.25;
        lo = (est - half).max(0.0);
        hi = est + half;
    }
    let mut flo = target(lo);
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        let fm = target(mid);
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if fm * flo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    let r = 0.5 * (lo + hi);
    // Newton polish in r; d/dr Ai(-r) = -Ai'(-r), d/dr Ai'(-r) = -(-r) Ai(-r)
    let (a, ap) = airy_ai(-r);
    let polished = match idx.kind {
        AiryZeroKind::ZeroOfAi => r + a / ap,
        AiryZeroKind::ZeroOfAiPrime => r - ap / (r * a),
    };
    if (polished - r).abs() <= 2.0 * (hi - lo).max(1e-12) {
        Ok(polished)
    } else {
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn values_at_origin() {
        let (a, ap) = airy_ai(0.0);
        assert_abs_diff_eq!(a, AI0, epsilon = 1e-16);
        assert_abs_diff_eq!(ap, -AIP0, epsilon = 1e-16);
    }

    #[test]
    fn known_values() {
        // Ai(1), Ai'(1), Ai(-1), Ai(-2)
        assert_abs_diff_eq!(ai(1.0), 0.135_292_416_312_881_4, epsilon = 1e-14);
        assert_abs_diff_eq!(ai_prime(1.0), -0.159_147_441_296_793_2, epsilon = 1e-14);
        assert_abs_diff_eq!(ai(-1.0), 0.535_560_883_292_352_1, epsilon = 1e-14);
        assert_abs_diff_eq!(ai(-2.0), 0.227_407_428_201_685_6, epsilon = 1e-14);
    }

    #[test]
    fn representations_agree_at_switchovers() {
        // Taylor continuation and asymptotic expansion overlap beyond -10
        for &x in &[-10.0, -10.5, -11.0, -12.0] {
            let start = maclaurin(-SERIES_LIMIT);
            let (a, ap) = taylor_continue(-SERIES_LIMIT, start, x);
            let (b, bp) = asymptotic_neg(-x);
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            assert_abs_diff_eq!(ap, bp, epsilon = 1e-12);
        }
        // Maclaurin and continuation on the interior side
        for &x in &[-4.0, -3.0] {
            let (a, ap) = maclaurin(x);
            let (b, bp) = taylor_continue(-SERIES_LIMIT, maclaurin(-SERIES_LIMIT), x);
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            assert_abs_diff_eq!(ap, bp, epsilon = 1e-12);
        }
    }

    #[test]
    fn positive_axis_is_continuous() {
        let (a, _) = maclaurin(5.0);
        let (b, _) = asymptotic_pos(5.0);
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn first_zeros() {
        let z = |kind, k| airy_zero(AiryZeroIndex::new(kind, k).unwrap()).unwrap();
        assert_abs_diff_eq!(z(AiryZeroKind::ZeroOfAi, 1), 2.338_107_410_459_767, epsilon = 1e-10);
        assert_abs_diff_eq!(z(AiryZeroKind::ZeroOfAi, 2), 4.087_949_444_130_97, epsilon = 1e-10);
        assert_abs_diff_eq!(z(AiryZeroKind::ZeroOfAiPrime, 1), 1.018_792_971_647_471, epsilon = 1e-10);
        assert_abs_diff_eq!(z(AiryZeroKind::ZeroOfAiPrime, 2), 3.248_197_582_179_837, epsilon = 1e-10);
    }

    #[test]
    fn zeros_increase_and_vanish() {
        for kind in [AiryZeroKind::ZeroOfAi, AiryZeroKind::ZeroOfAiPrime] {
            let mut prev = 0.0;
            for k in 1..=DEFAULT_MAX_ZERO_INDEX {
                let r = airy_zero(AiryZeroIndex { kind, k }).unwrap();
                assert!(r > prev, "{kind:?} {k}");
                prev = r;
                let (a, ap) = airy_ai(-r);
                let v = if kind == AiryZeroKind::ZeroOfAi { a } else { ap };
                let tol = if kind == AiryZeroKind::ZeroOfAi { 1e-9 } else { 1e-9 * r.sqrt() };
                assert!(v.abs() <= tol, "{kind:?} {k}: {v}");
            }
        }
    }

    #[test]
    fn index_limits() {
        assert!(AiryZeroIndex::new(AiryZeroKind::ZeroOfAi, 0).is_err());
        let idx = AiryZeroIndex { kind: AiryZeroKind::ZeroOfAi, k: 51 };
        assert!(matches!(airy_zero(idx), Err(Error::IndexOutOfRange { .. })));
        assert!(airy_zero_with_limit(idx, 60).is_ok());
    }
}
