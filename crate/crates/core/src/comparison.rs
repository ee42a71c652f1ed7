//! Comparison machinery for potentials that cross.
//!
//! The standard comparison theorem orders eigenvalues of pointwise-ordered
//! potentials. The generalized form used here only needs the weighted
//! integral `k(r) = ∫_0^r [V1 - V2] ψ t^{N-1} dt` to keep one sign, and a
//! sufficient condition for that is: the potentials cross exactly twice, at
//! `r1 < r2`, and `∫_0^{r2} [V1 - V2] t^{N-1} dt = 0`. The crossing
//! construction picks the shift and scale of `A + B sgn(p) r^p` so that it
//! meets this condition against `sgn(q) r^q`, which turns the known
//! eigenvalue at `p` into an upper bound at `q`.
//!
//! Exponent `0` stands for `ln r` throughout.

use serde::{Deserialize, Serialize};

use crate::minimize::{golden_section, minimize_log_scan};
use crate::potential::Potential;
use crate::prep::{g, z_factor};
use crate::quadrature::{cumulative_uniform, gauss_panels};
use crate::radial::EigenResult;
use crate::{Error, Result};

/// Scan points used by [`find_crossings`].
pub const CROSSING_SCAN_POINTS: usize = 2000;
/// The scan starts at `r_max` times this factor.
pub const CROSSING_SCAN_DEPTH: f64 = 1e-10;
/// Relative tolerance on the area condition, against `∫_0^{r2} |V1 - V2| t^{N-1} dt`.
pub const AREA_TOLERANCE: f64 = 1e-8;
/// Radius used by [`theorem3_verdict`].
pub const VERDICT_RADIUS: f64 = 1e4;

/// Where and how `V1 - V2` changes sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    /// Strictly increasing sign-change radii.
    pub crossings: Vec<f64>,
    /// Sign of `V1 - V2` just above the origin; `None` when the potentials coincide.
    pub initial_sign: Option<i8>,
    /// `∫_0^{r2} [V1 - V2] t^{N-1} dt`, present when there are at least two crossings.
    pub area_residual: Option<f64>,
    /// `∫_0^{r2} |V1 - V2| t^{N-1} dt`, the scale for `area_residual`.
    pub area_scale: Option<f64>,
    /// Radii where `|V1 - V2|` touches zero without changing sign.
    pub tangencies: Vec<f64>,
}

impl CrossingReport {
    pub fn is_degenerate(&self) -> bool {
        self.initial_sign.is_none()
    }

    /// Area condition met to [`AREA_TOLERANCE`].
    pub fn area_balanced(&self) -> bool {
        match (self.area_residual, self.area_scale) {
            (Some(res), Some(scale)) => res.abs() <= AREA_TOLERANCE * scale,
            _ => false,
        }
    }
}

/// Locates the sign changes of `V1 - V2` on `(0, r_max]`.
///
/// The difference is scanned at [`CROSSING_SCAN_POINTS`] log-spaced radii from
/// `r_max · 1e-10`, and each sign change is bisected to `1e-10` relative.
pub fn find_crossings<P1, P2>(v1: &P1, v2: &P2, dim: u32, r_max: f64) -> Result<CrossingReport>
where
    P1: Potential + ?Sized,
    P2: Potential + ?Sized,
{
    if !(r_max > 0.0) || !r_max.is_finite() {
        return Err(Error::Domain(format!("r_max must be positive, got {r_max}")));
    }
    if dim < 1 {
        return Err(Error::Domain("dimension must be >= 1".into()));
    }
    let diff = |r: f64| v1.eval(r) - v2.eval(r);
    let lo = r_max * CROSSING_SCAN_DEPTH;
    let n = CROSSING_SCAN_POINTS;
    let step = (r_max / lo).ln() / (n - 1) as f64;
    let radii: Vec<f64> = (0..n).map(|i| lo * (step * i as f64).exp()).collect();
    let values: Vec<f64> = radii.iter().map(|&r| diff(r)).collect();
    let scale: Vec<f64> = radii.iter().map(|&r| v1.eval(r).abs() + v2.eval(r).abs()).collect();
    let negligible = |i: usize| values[i].abs() <= 1e-14 * scale[i].max(1e-300);

    let initial_sign = (0..n).find(|&i| !negligible(i)).map(|i| values[i].signum() as i8);
    let mut crossings = Vec::new();
    let mut tangencies = Vec::new();
    let mut last: Option<usize> = None;
    for i in 0..n {
        if negligible(i) {
            continue;
        }
        if let Some(j) = last {
            if values[i].signum() != values[j].signum() {
                crossings.push(bisect_sign_change(&diff, radii[j], radii[i]));
            }
        }
        last = Some(i);
    }
    // near-touches: a local minimum of |V1 - V2| that keeps its sign but
    // reaches zero to rounding once polished
    for i in 1..n - 1 {
        let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
        if negligible(i) || a.signum() != b.signum() || b.signum() != c.signum() {
            continue;
        }
        if b.abs() < a.abs() && b.abs() < c.abs() {
            let (x, m) = golden_section(|x: f64| diff(x.exp()).abs(), radii[i - 1].ln(), radii[i + 1].ln(), 1e-14);
            let r = x.exp();
            let local = v1.eval(r).abs() + v2.eval(r).abs() + a.abs() + c.abs();
            if m <= 1e-9 * local {
                tangencies.push(r);
            }
        }
    }
    let (area_residual, area_scale) = if initial_sign.is_some() && crossings.len() >= 2 {
        let (res, abs) = weighted_area(&diff, dim, &crossings[..2]);
        (Some(res), Some(abs))
    } else {
        (None, None)
    };
    Ok(CrossingReport { crossings, initial_sign, area_residual, area_scale, tangencies })
}

fn bisect_sign_change<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    while b - a > 1e-10 * b.max(1e-300) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Signed and absolute `∫_0^{r2} d(t) t^{N-1} dt`, split at the crossings.
fn weighted_area<F: Fn(f64) -> f64>(diff: &F, dim: u32, crossings: &[f64]) -> (f64, f64) {
    let r2 = crossings[crossings.len() - 1];
    let nexp = dim as f64;
    // in s = ln t the measure t^{N-1} dt becomes e^{sN} ds
    let signed = |s: f64| diff(s.exp()) * (s * nexp).exp();
    let mut cuts = vec![(1e-40 * r2).ln()];
    cuts.extend(crossings.iter().map(|c| c.ln()));
    let (mut res, mut abs) = (0.0, 0.0);
    for w in cuts.windows(2) {
        // lobes are smooth in ln t between crossings
        let panels = ((w[1] - w[0]) / AREA_PANEL).ceil().max(8.0) as usize;
        let piece = gauss_panels(&signed, w[0], w[1], panels, 16);
        res += piece;
        abs += piece.abs();
    }
    (res, abs)
}

/// Widest Gauss-Legendre panel, in `ln t`, for the area integral.
const AREA_PANEL: f64 = 0.25;

/// Outcome of the two-crossing sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `E[V1] < E[V2]`.
    E1BelowE2,
    /// `E[V2] < E[V1]`.
    E2BelowE1,
    /// The condition does not apply; no ordering is claimed.
    Inconclusive,
}

/// Applies the two-crossing condition with crossings searched up to [`VERDICT_RADIUS`].
pub fn theorem3_verdict<P1, P2>(v1: &P1, v2: &P2, dim: u32) -> Result<Verdict>
where
    P1: Potential + ?Sized,
    P2: Potential + ?Sized,
{
    theorem3_verdict_within(v1, v2, dim, VERDICT_RADIUS)
}

/// As [`theorem3_verdict`], scanning `(0, r_max]`.
pub fn theorem3_verdict_within<P1, P2>(v1: &P1, v2: &P2, dim: u32, r_max: f64) -> Result<Verdict>
where
    P1: Potential + ?Sized,
    P2: Potential + ?Sized,
{
    let report = find_crossings(v1, v2, dim, r_max)?;
    Ok(verdict_from(&report))
}

pub fn verdict_from(report: &CrossingReport) -> Verdict {
    if report.crossings.len() != 2 || !report.tangencies.is_empty() || !report.area_balanced() {
        return Verdict::Inconclusive;
    }
    match report.initial_sign {
        Some(-1) => Verdict::E1BelowE2,
        Some(1) => Verdict::E2BelowE1,
        _ => Verdict::Inconclusive,
    }
}

fn require_ground(psi: &EigenResult) -> Result<()> {
    if psi.label.n != 1 {
        return Err(Error::Domain(format!("comparison theorems apply to ground states only, got n = {}", psi.label.n)));
    }
    Ok(())
}

/// `k(r)` on every sample of a ground state's grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KProfile {
    pub r: Vec<f64>,
    pub k: Vec<f64>,
    /// Largest change in `k` when the grid is halved, a quadrature error estimate.
    pub halving_error: f64,
}

impl KProfile {
    pub fn max(&self) -> f64 {
        self.k.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `k(r) = ∫_0^r [V1 - V2] ψ t^{N-1} dt` at every grid point of `psi`, with
/// `ψ = u / t^{(N-1)/2}` the full radial factor.
///
/// Cumulative Simpson in `ln t`; the piece below the first sample is closed
/// with the local power law of the integrand.
pub fn k_profile<P1, P2>(v1: &P1, v2: &P2, psi: &EigenResult, dim: u32) -> Result<KProfile>
where
    P1: Potential + ?Sized,
    P2: Potential + ?Sized,
{
    require_ground(psi)?;
    if psi.label.dim != dim {
        return Err(Error::Domain(format!(
            "wavefunction is for N = {}, comparison asked for N = {dim}",
            psi.label.dim
        )));
    }
    let half = (dim as f64 - 1.0) / 2.0;
    // integrand in x = ln t: (V1 - V2) u t^{(N-1)/2} t
    let y: Vec<f64> =
        psi.r_grid.iter().zip(&psi.u_values).map(|(&t, &u)| (v1.eval(t) - v2.eval(t)) * u * t.powf(half) * t).collect();
    let h = psi.log_step;
    let head = origin_piece(&y, h);
    let k: Vec<f64> = cumulative_uniform(&y, h).into_iter().map(|c| c + head).collect();

    let coarse: Vec<f64> = y.iter().step_by(2).copied().collect();
    let coarse_head = origin_piece(&coarse, 2.0 * h);
    let k_coarse = cumulative_uniform(&coarse, 2.0 * h);
    let halving_error =
        k_coarse.iter().enumerate().map(|(i, c)| (c + coarse_head - k[2 * i]).abs()).fold(0.0, f64::max);
    Ok(KProfile { r: psi.r_grid.clone(), k, halving_error })
}

/// `∫_{-∞}^{x_0} y dx` assuming `y ∝ e^{κx}` below the grid.
fn origin_piece(y: &[f64], h: f64) -> f64 {
    if y.len() < 2 || y[0] == 0.0 {
        return 0.0;
    }
    let ratio = y[1] / y[0];
    if ratio > 1.0 {
        y[0] * h / ratio.ln()
    } else {
        0.0
    }
}

/// `k(r)` at a single radius inside the sampled range.
pub fn k_function<P1, P2>(v1: &P1, v2: &P2, psi: &EigenResult, dim: u32, r: f64) -> Result<f64>
where
    P1: Potential + ?Sized,
    P2: Potential + ?Sized,
{
    let lo = psi.r_grid[0];
    let hi = *psi.r_grid.last().unwrap();
    if !(r >= lo && r <= hi) {
        return Err(Error::OutOfSampledRange { r, lo, hi });
    }
    let profile = k_profile(v1, v2, psi, dim)?;
    let x = (r / lo).ln() / psi.log_step;
    let i = (x.floor() as usize).min(profile.k.len() - 2);
    let frac = x - i as f64;
    // integrand is smooth on the mesh scale; linear interpolation of the running integral
    Ok(profile.k[i] + frac * (profile.k[i + 1] - profile.k[i]))
}

/// One member of the power/log family, `sgn(s) r^s` or `ln r` for `s = 0`.
#[derive(Debug, Clone, Copy)]
struct Term {
    s: f64,
}

impl Term {
    fn value(self, r: f64) -> f64 {
        if self.s == 0.0 {
            r.ln()
        } else {
            self.s.signum() * r.powf(self.s)
        }
    }

    /// `∫_0^R V t^{N-1} dt - V(R) R^N / N`, always negative.
    fn defect(self, big_r: f64, n: f64) -> f64 {
        if self.s == 0.0 {
            -big_r.powf(n) / (n * n)
        } else {
            -self.s.abs() * big_r.powf(self.s + n) / (n * (self.s + n))
        }
    }

    /// Lowest eigenvalue of `A + B V` given the unit-coupling value `e`.
    fn scaled(self, a: f64, b: f64, e: f64) -> f64 {
        if self.s == 0.0 {
            a + b * e - 0.5 * b * b.ln()
        } else {
            a + b.powf(2.0 / (self.s + 2.0)) * e
        }
    }
}

/// Shift and scale solving the crossing at `R` and the area condition up to `R`.
fn shift_scale(p: Term, q: Term, big_r: f64, n: f64) -> (f64, f64) {
    let b = q.defect(big_r, n) / p.defect(big_r, n);
    let a = q.value(big_r) - b * p.value(big_r);
    (a, b)
}

/// Which route produced a [`ConstructionResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionPath {
    /// `p, q > 0`: closed-form critical point in `t = R^{p/q}`.
    ClosedForm,
    /// Any other pair: golden-section over the second crossing `R`.
    Numeric,
}

/// Optimized upper bound on `E(q)` from the eigenvalue at `p > q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub p: f64,
    pub q: f64,
    pub dim: u32,
    pub path: ConstructionPath,
    /// Optimal parameter: `t = R^{p/q}` on the closed-form path, `R` itself otherwise.
    pub t_hat: f64,
    /// Second crossing radius at the optimum.
    pub r_hat: f64,
    pub a_hat: f64,
    pub b_hat: f64,
    pub f_hat: f64,
    /// `F(t) = a1 t^{n_exp} + b1 t^{-m_exp}`.
    pub n_exp: f64,
    pub m_exp: f64,
    pub a1: f64,
    pub b1: f64,
}

impl ConstructionResult {
    /// `F` at parameter `t` (same convention as `t_hat`).
    pub fn f_at(&self, t: f64) -> f64 {
        self.a1 * t.powf(self.n_exp) + self.b1 * t.powf(-self.m_exp)
    }

    /// The comparison potential `A + B sgn(p) r^p` (or `A + B ln r`).
    pub fn comparison_potential(&self) -> impl Fn(f64) -> f64 + Sync + Copy {
        let (a, b, p) = (self.a_hat, self.b_hat, self.p);
        move |r: f64| a + b * Term { s: p }.value(r)
    }
}

fn check_pair(p: f64, q: f64, dim: u32) -> Result<()> {
    if dim < 1 {
        return Err(Error::Domain("dimension must be >= 1".into()));
    }
    let floor = if dim == 1 { -1.0 } else { -2.0 };
    for (name, x) in [("p", p), ("q", q)] {
        if !(x > floor) || !x.is_finite() {
            return Err(Error::Domain(format!("{name} = {x} outside the domain q > {floor} for N = {dim}")));
        }
    }
    if !(p > q) {
        return Err(Error::Domain(format!("crossing construction needs p > q, got p = {p}, q = {q}")));
    }
    Ok(())
}

/// Chooses `A, B` so that `A + B sgn(p) r^p` crosses `sgn(q) r^q` twice with
/// balanced area, and minimizes the resulting upper bound
/// `A + B^{2/(p+2)} E_p` on `E(q)` over the second crossing.
///
/// `e_p` is the unit-coupling ground-state eigenvalue (of its angular
/// momentum sector) at exponent `p`.
pub fn crossing_construction(p: f64, q: f64, dim: u32, e_p: f64) -> Result<ConstructionResult> {
    check_pair(p, q, dim)?;
    if !e_p.is_finite() {
        return Err(Error::Domain(format!("E_p must be finite, got {e_p}")));
    }
    let n = dim as f64;
    if p > 0.0 && q > 0.0 {
        let n_exp = q * q / p;
        let m_exp = q / p * (p - q) * (2.0 / (2.0 + p));
        let a1 = n * (p - q) / (p * (q + n));
        let b1 = (q * (p + n) / (p * (n + q))).powf(2.0 / (2.0 + p)) * e_p;
        if !(b1 > 0.0) {
            return Err(Error::Domain(format!("E_p must be positive for p > 0, got {e_p}")));
        }
        let t_hat = (b1 * m_exp / (a1 * n_exp)).powf(1.0 / (n_exp + m_exp));
        let r_hat = t_hat.powf(q / p);
        let (a_hat, b_hat) = shift_scale(Term { s: p }, Term { s: q }, r_hat, n);
        let f_hat = a1 * t_hat.powf(n_exp) + b1 * t_hat.powf(-m_exp);
        return Ok(ConstructionResult {
            p,
            q,
            dim,
            path: ConstructionPath::ClosedForm,
            t_hat,
            r_hat,
            a_hat,
            b_hat,
            f_hat,
            n_exp,
            m_exp,
            a1,
            b1,
        });
    }

    let (tp, tq) = (Term { s: p }, Term { s: q });
    let bound = |big_r: f64| {
        let (a, b) = shift_scale(tp, tq, big_r, n);
        let f = tp.scaled(a, b, e_p);
        if f.is_finite() {
            f
        } else {
            f64::INFINITY
        }
    };
    let (r_hat, f_hat) = minimize_log_scan(bound, 1e-8, 1e8);
    let (a_hat, b_hat) = shift_scale(tp, tq, r_hat, n);
    // F(R) = a1 R^q + b1 R^{-μ} for powers; a log end has no such form
    let (n_exp, m_exp, a1, b1) = if p != 0.0 && q != 0.0 {
        let mu = 2.0 * (p - q) / (p + 2.0);
        let a1 = q.signum() * n * (p - q) / (p * (q + n));
        let beta = q.abs() * (p + n) / (p.abs() * (q + n));
        (q, mu, a1, beta.powf(2.0 / (p + 2.0)) * e_p)
    } else {
        (f64::NAN, f64::NAN, f64::NAN, f64::NAN)
    };
    Ok(ConstructionResult {
        p,
        q,
        dim,
        path: ConstructionPath::Numeric,
        t_hat: r_hat,
        r_hat,
        a_hat,
        b_hat,
        f_hat,
        n_exp,
        m_exp,
        a1,
        b1,
    })
}

/// Both sides of the `Q`-monotonicity argument for one pair `p > q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QMonotoneCheck {
    pub p: f64,
    pub q: f64,
    pub dim: u32,
    /// `F̂ - E(q)`, positive when the constructed bound holds.
    pub bound_margin: f64,
    /// `Q(p) - Q(q)`.
    pub margin: f64,
    pub pass: bool,
}

/// Checks `F̂ > E(q)` (with `E_p = g(P_p, p)`, `E_q = g(P_q, q)`) and `Q(p) > Q(q)`.
pub fn verify_q_monotone(p: f64, q: f64, dim: u32, p_p: f64, p_q: f64) -> Result<QMonotoneCheck> {
    check_pair(p, q, dim)?;
    let e_p = g(p_p, p)?;
    let e_q = g(p_q, q)?;
    let c = crossing_construction(p, q, dim, e_p)?;
    let bound_margin = c.f_hat - e_q;
    let margin = z_factor(p, dim)? * p_p - z_factor(q, dim)? * p_q;
    Ok(QMonotoneCheck { p, q, dim, bound_margin, margin, pass: bound_margin > 0.0 && margin > 0.0 })
}
