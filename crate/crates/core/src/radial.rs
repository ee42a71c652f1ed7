//! Radial eigensolver for `H = -Δ + V(r)` in `N` dimensions.
//!
//! The reduced radial function `u(r)` satisfies
//! `-u'' + [L(L+1)/r^2 + V(r)] u = E u` with `L = ell + (N-3)/2`. With
//! `r = e^x` and `u = e^{x/2} w(x)` this becomes
//! `w'' = [(L+1/2)^2 + r^2 (V(r) - E)] w`, which is integrated with Numerov's
//! method on a uniform `x` mesh. The log mesh resolves the singular `r^q`,
//! `q < 0`, and `ln r` behaviour at the origin and keeps the centrifugal term
//! constant.
//!
//! Eigenvalues are located by Sturm node counting: the number of sign
//! changes of the outward solution on `[r_min, r_max]` equals the number of
//! Dirichlet eigenvalues below the trial energy. Bisection on that count
//! brackets the `n`-th level, and `r_max` is placed far enough into the
//! classically forbidden region that the Dirichlet wall is invisible. The
//! mesh is doubled until the eigenvalue settles.
//!
//! One dimension is handled as the full line `-∞ < x < ∞` with an even
//! potential: even levels use `L = -1` (`u'(0) = 0`), odd levels `L = 0`
//! (`u(0) = 0`), and the level index `n` interleaves the two parities.

use serde::{Deserialize, Serialize};

use crate::exact::StateLabel;
use crate::minimize::minimize_log_scan;
use crate::potential::{Potential, PotentialKind, PotentialSpec, PotentialTerms};
use crate::quadrature::simpson_uniform;
use crate::{Error, Result};

/// `L = ell + (N - 3)/2`; the centrifugal term is `L(L+1)/r^2`.
pub fn effective_lambda(dim: u32, ell: u32) -> f64 {
    ell as f64 + (dim as f64 - 3.0) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Mesh points on the first pass.
    pub initial_points: usize,
    /// Mesh doublings allowed before giving up.
    pub max_doublings: usize,
    /// WKB exponent `∫ sqrt(V_eff - E) dr` required beyond the outer turning point.
    pub decay_target: f64,
    /// `r_min` as a fraction of the semiclassical radius `r*`.
    pub origin_fraction: f64,
    /// `r_min` as a fraction of `r*/max(P, 1)` for even one-dimensional states
    /// (`L = -1`), where the wanted solution decays outward and start-value
    /// error grows as `r/r_min`.
    pub origin_fraction_even: f64,
    /// As `origin_fraction_even`, for mixtures, whose origin series is first order.
    pub origin_fraction_even_mixed: f64,
    pub max_bracket_expansions: usize,
    pub max_bisections: usize,
    /// Report the Richardson-extrapolated energy of the last two meshes.
    pub richardson: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            initial_points: 8000,
            max_doublings: 5,
            decay_target: 20.0,
            origin_fraction: 1e-6,
            origin_fraction_even: 0.1,
            origin_fraction_even_mixed: 1e-3,
            max_bracket_expansions: 80,
            max_bisections: 300,
            richardson: true,
        }
    }
}

/// A converged eigenvalue with diagnostics and the sampled reduced radial function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub energy: f64,
    pub label: StateLabel,
    /// Radial nodes (full-line nodes in one dimension).
    pub node_count: u32,
    pub r_grid: Vec<f64>,
    /// `u(r)`, normalized so that `∫ u^2 dr = 1` over the half line.
    pub u_values: Vec<f64>,
    /// Spacing of the grid in `ln r`.
    pub log_step: f64,
    pub converged: bool,
    /// Width of the final bisection bracket.
    pub residual: f64,
    /// Eigenvalue change over the last mesh doubling.
    pub mesh_change: f64,
    pub mesh_points: usize,
}

impl EigenResult {
    /// Full radial factor `ψ(r) = u(r) / r^{(N-1)/2}` at every grid point.
    pub fn full_radial(&self) -> Vec<f64> {
        let p = (self.label.dim as f64 - 1.0) / 2.0;
        self.r_grid.iter().zip(&self.u_values).map(|(r, u)| u / r.powf(p)).collect()
    }

    /// `∫ u^2 dr` on the stored samples.
    pub fn norm(&self) -> f64 {
        let y: Vec<f64> = self.r_grid.iter().zip(&self.u_values).map(|(r, u)| r * u * u).collect();
        simpson_uniform(&y, self.log_step)
    }
}

/// Solves for the eigenvalue of `pot` in state `s` with relative tolerance `tol`.
pub fn solve_eigenvalue(pot: &PotentialSpec, s: StateLabel, tol: f64) -> Result<EigenResult> {
    RadialSolver::default().solve(pot, s, tol)
}

/// Node-free ground state of the `ell` sector.
pub fn ground_wavefunction(pot: &PotentialSpec, dim: u32, ell: u32, tol: f64) -> Result<EigenResult> {
    let s = StateLabel::new(dim, 1, ell)?;
    RadialSolver::default().solve(pot, s, tol)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RadialSolver {
    pub config: SolverConfig,
}

/// The half-line problem a state reduces to.
#[derive(Debug, Clone, Copy)]
struct Sector {
    lambda: f64,
    /// 1-based index of the level within the sector.
    index: u32,
    /// Full-line node offset in one dimension (odd parity adds the node at 0).
    extra_nodes: u32,
    full_line: bool,
}

impl Sector {
    fn of(s: StateLabel) -> Self {
        if s.dim == 1 {
            if s.n % 2 == 1 {
                Self { lambda: -1.0, index: s.n.div_ceil(2), extra_nodes: 0, full_line: true }
            } else {
                Self { lambda: 0.0, index: s.n / 2, extra_nodes: 1, full_line: true }
            }
        } else {
            Self { lambda: effective_lambda(s.dim, s.ell), index: s.n, extra_nodes: 0, full_line: false }
        }
    }

    fn nodes(&self, half_line_nodes: u32) -> u32 {
        if self.full_line {
            2 * half_line_nodes + self.extra_nodes
        } else {
            half_line_nodes
        }
    }
}

struct Mesh {
    h: f64,
    r: Vec<f64>,
    /// `(L+1/2)^2 + r^2 V(r)`
    a: Vec<f64>,
}

impl Mesh {
    fn new(terms: &PotentialTerms, lambda: f64, r_min: f64, r_max: f64, points: usize) -> Self {
        let x0 = r_min.ln();
        let h = (r_max.ln() - x0) / (points - 1) as f64;
        let l2 = (lambda + 0.5) * (lambda + 0.5);
        // r_min e^{ih} keeps ln(r_1/r_0) = h to rounding; an error there seeds the
        // unwanted mode when L < -1/2
        let r: Vec<f64> = (0..points).map(|i| r_min * (h * i as f64).exp()).collect();
        let a = r.iter().map(|&ri| l2 + ri * ri * terms.eval(ri)).collect();
        Self { h, r, a }
    }

    fn len(&self) -> usize {
        self.r.len()
    }

    /// `h^2 f_i / 12` at energy `e`.
    fn t(&self, i: usize, e: f64) -> f64 {
        self.h * self.h / 12.0 * (self.a[i] - e * self.r[i] * self.r[i])
    }

    fn stiffness(&self, e: f64) -> f64 {
        let h2 = self.h * self.h;
        self.r.iter().zip(&self.a).map(|(r, a)| (h2 * (a - e * r * r) / 12.0).abs()).fold(0.0, f64::max)
    }
}

struct Problem<'a> {
    terms: &'a PotentialTerms,
    sector: Sector,
    r_star: f64,
    e_scale: f64,
    r_min: f64,
}

impl Problem<'_> {
    fn v_eff(&self, r: f64) -> f64 {
        let l = self.sector.lambda;
        l * (l + 1.0) / (r * r) + self.terms.eval(r)
    }

    /// Regular solution `u(r)` near the origin.
    fn series_u(&self, r: f64, e: f64) -> f64 {
        let l = self.sector.lambda;
        let lead = r.powf(l + 1.0);
        let denom = |alpha: f64| alpha * (alpha + 2.0 * l + 1.0);
        if self.terms.is_single_power() {
            let (q, c) = self.terms.powers[0];
            let de = e - self.terms.shift;
            const J: usize = 24;
            const K: usize = 24;
            let mut coef = [[0.0f64; K]; J];
            let mut sum = 0.0;
            for j in 0..J {
                for k in 0..K {
                    if j == 0 && k == 0 {
                        coef[0][0] = 1.0;
                        sum += 1.0;
                        continue;
                    }
                    let alpha = j as f64 * (q + 2.0) + 2.0 * k as f64;
                    let from_v = if j > 0 { c * coef[j - 1][k] } else { 0.0 };
                    let from_e = if k > 0 { -de * coef[j][k - 1] } else { 0.0 };
                    coef[j][k] = (from_v + from_e) / denom(alpha);
                    sum += coef[j][k] * r.powf(alpha);
                }
            }
            lead * sum
        } else if self.terms.powers.is_empty() && self.terms.log_coef != 0.0 {
            // u = r^{L+1} sum_k r^{2k} P_k(ln r), deg P_k = k
            const K: usize = 30;
            let b = self.terms.log_coef;
            let de = self.terms.shift - e;
            let ell = r.ln();
            let mut prev = vec![1.0f64];
            let mut sum = 1.0;
            let r2 = r * r;
            let mut r2k = 1.0;
            for k in 1..K {
                let kf = k as f64;
                let d = 2.0 * kf * (2.0 * kf + 2.0 * l + 1.0);
                let beta = 2.0 * (l + 1.0 + 2.0 * kf) - 1.0;
                // right side (A - E) P_{k-1} + B ln r P_{k-1}
                let mut rhs = vec![0.0f64; k + 1];
                for (m, &c) in prev.iter().enumerate() {
                    rhs[m] += de * c;
                    rhs[m + 1] += b * c;
                }
                let mut cur = vec![0.0f64; k + 1];
                for m in (0..=k).rev() {
                    let mut v = rhs[m];
                    if m < k {
                        v -= beta * (m + 1) as f64 * cur[m + 1];
                    }
                    if m + 2 <= k {
                        v -= ((m + 2) * (m + 1)) as f64 * cur[m + 2];
                    }
                    cur[m] = v / d;
                }
                r2k *= r2;
                let poly = cur.iter().rev().fold(0.0, |acc, c| acc * ell + c);
                sum += r2k * poly;
                prev = cur;
            }
            lead * sum
        } else {
            let mut corr = 0.0;
            for &(q, c) in &self.terms.powers {
                let alpha = q + 2.0;
                corr += c / denom(alpha) * r.powf(alpha);
            }
            let d = 4.0 * l + 6.0;
            corr += (self.terms.shift - e) / d * r * r;
            if self.terms.log_coef != 0.0 {
                let a = self.terms.log_coef / d;
                corr += r * r * (a * r.ln() - (2.0 * l + 5.0) * a / d);
            }
            lead * (1.0 + corr)
        }
    }

    /// Outer radius where the WKB exponent beyond the last allowed point reaches the target.
    fn r_max_for(&self, e: f64, decay_target: f64) -> f64 {
        let cap = self.r_star * 1e4;
        let step = 1.01f64;
        let mut r = self.r_min;
        let mut acc = 0.0;
        let mut min_d = f64::INFINITY;
        while r < cap {
            let r_next = r * step;
            let d = self.v_eff(r_next) - e;
            if d <= 0.0 || d < min_d {
                min_d = min_d.min(d);
                acc = 0.0;
            } else {
                acc += d.sqrt() * (r_next - r);
            }
            r = r_next;
            if acc >= decay_target && r > self.r_star {
                break;
            }
        }
        r.min(cap)
    }

    fn start_values(&self, mesh: &Mesh, e: f64) -> (f64, f64) {
        let w = |r: f64| self.series_u(r, e) / r.sqrt();
        (w(mesh.r[0]), w(mesh.r[1]))
    }

    /// Sign changes of the outward solution over the whole mesh.
    fn count_nodes(&self, mesh: &Mesh, e: f64) -> u32 {
        let (w0, w1) = self.start_values(mesh, e);
        let mut step = Numerov::new(mesh.t(0, e), w0, mesh.t(1, e), w1);
        let mut nodes = 0;
        let mut last_sign = if w1 != 0.0 { w1.signum() } else { w0.signum() };
        for i in 2..mesh.len() {
            let w = step.advance(mesh.t(i, e));
            step.renormalize();
            if w != 0.0 && w.signum() != last_sign {
                nodes += 1;
                last_sign = w.signum();
            }
        }
        nodes
    }

    /// Matched outward/inward solution at energy `e`, as `u` samples.
    fn wavefunction(&self, mesh: &Mesh, e: f64) -> Vec<f64> {
        let n = mesh.len();
        let t: Vec<f64> = (0..n).map(|i| mesh.t(i, e)).collect();
        let lo = n / 10;
        let hi = n - n / 10;
        // last point inside the allowed region, where f = 12 t / h^2 < 1/4
        let allowed = 0.25 * mesh.h * mesh.h / 12.0;
        let matching = (lo..hi).rev().find(|&i| t[i] < allowed).unwrap_or(n / 2);

        let (w0, w1) = self.start_values(mesh, e);
        let mut w = vec![0.0; n];
        w[0] = w0;
        w[1] = w1;
        let mut step = Numerov::new(t[0], w0, t[1], w1);
        for i in 2..=matching {
            w[i] = step.advance(t[i]);
            if let Some(big) = step.renormalize() {
                for v in &mut w[..=i] {
                    *v /= big;
                }
            }
        }
        let mut step = Numerov::new(t[n - 1], 0.0, t[n - 2], 1e-200);
        let mut inner = vec![0.0; n];
        inner[n - 2] = 1e-200;
        for i in (matching..n - 2).rev() {
            inner[i] = step.advance(t[i]);
            if let Some(big) = step.renormalize() {
                for v in &mut inner[i..] {
                    *v /= big;
                }
            }
        }
        let ratio = w[matching] / inner[matching];
        for i in matching + 1..n {
            w[i] = inner[i] * ratio;
        }
        // u = sqrt(r) w, normalized on ∫ u^2 dr = ∫ r^2 w^2 dx
        let dens: Vec<f64> = (0..n).map(|i| mesh.r[i] * mesh.r[i] * w[i] * w[i]).collect();
        let norm = simpson_uniform(&dens, mesh.h).sqrt();
        let sign = if w.iter().find(|v| v.abs() > 0.0).copied().unwrap_or(1.0) < 0.0 { -1.0 } else { 1.0 };
        (0..n).map(|i| sign * mesh.r[i].sqrt() * w[i] / norm).collect()
    }
}

/// Numerov recurrence for `w'' = f w` in summed form.
///
/// With `t = h^2 f / 12` and `y = (1 - t) w`, the scheme is
/// `y_{i+1} - 2 y_i + y_{i-1} = 12 t_i w_i`. Carrying the first difference
/// `d = y_{i+1} - y_i` keeps rounding at `O(N eps)` instead of `O(N^2 eps)`.
struct Numerov {
    y: f64,
    d: f64,
    w: f64,
    t: f64,
}

impl Numerov {
    fn new(t0: f64, w0: f64, t1: f64, w1: f64) -> Self {
        let y0 = w0 - t0 * w0;
        let y1 = w1 - t1 * w1;
        Self { y: y1, d: y1 - y0, w: w1, t: t1 }
    }

    fn advance(&mut self, t_next: f64) -> f64 {
        self.d += 12.0 * self.t * self.w;
        self.y += self.d;
        self.w = self.y + self.y * t_next / (1.0 - t_next);
        self.t = t_next;
        self.w
    }

    /// Rescales the state when it grows past `1e150`; returns the divisor.
    fn renormalize(&mut self) -> Option<f64> {
        let big = self.w.abs().max(self.y.abs());
        if big > 1e150 {
            self.y /= big;
            self.d /= big;
            self.w /= big;
            Some(big)
        } else {
            None
        }
    }
}

/// Sign changes in a sampled function, skipping samples negligible relative to its peak.
pub fn count_sign_changes(values: &[f64]) -> u32 {
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-12 * peak;
    let mut last = 0.0f64;
    let mut count = 0;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        if last != 0.0 && v.signum() != last {
            count += 1;
        }
        last = v.signum();
    }
    count
}

/// Starting `P` for the energy window: linear in `q` through the exact
/// Coulomb (`q = -1`) and oscillator (`q = 2`) values of the sector.
fn p_guess(q: f64, index: u32, lambda: f64) -> f64 {
    let k = index as f64;
    let p_coulomb = k + lambda;
    let p_osc = 2.0 * k + lambda - 0.5;
    let p = p_coulomb + (q + 1.0) * (p_osc - p_coulomb) / 3.0;
    p.max(0.2 * k)
}

struct Solution {
    energy: f64,
    width: f64,
    mesh: Mesh,
}

impl RadialSolver {
    pub fn new(config: SolverConfig) -> Self {
        Self { config }
    }

    pub fn solve(&self, pot: &PotentialSpec, s: StateLabel, tol: f64) -> Result<EigenResult> {
        let s = StateLabel::new(s.dim, s.n, s.ell)?;
        if pot.kind == PotentialKind::Power && s.dim == 1 && pot.q <= -1.0 {
            return Err(Error::Domain(format!("one-dimensional problems need q > -1, got {}", pot.q)));
        }
        self.solve_terms(&pot.terms(), pot.exponent(), s, tol)
    }

    /// Solves a general sum of terms. `q_hint` seeds the energy window.
    pub fn solve_terms(&self, terms: &PotentialTerms, q_hint: f64, s: StateLabel, tol: f64) -> Result<EigenResult> {
        let s = StateLabel::new(s.dim, s.n, s.ell)?;
        if !(1e-12..=1e-3).contains(&tol) {
            return Err(Error::Domain(format!("tolerance must lie in [1e-12, 1e-3], got {tol}")));
        }
        let lead = terms.leading_exponent();
        let floor = if s.dim == 1 { -1.0 } else { -2.0 };
        if lead <= floor {
            return Err(Error::Domain(format!(
                "potential too singular at the origin (exponent {lead}) for N = {}",
                s.dim
            )));
        }
        let sector = Sector::of(s);
        let p0 = p_guess(q_hint, sector.index, sector.lambda);
        let (r_star, e_guess) = minimize_log_scan(|r| p0 * p0 / (r * r) + terms.eval(r), 1e-10, 1e10);
        let e_scale = (p0 * p0 / (r_star * r_star)).max(1e-300);
        let r_min = if sector.lambda >= -0.5 {
            self.config.origin_fraction * r_star
        } else {
            // kept inside the first node: the local wavelength is ~ r_star / P
            let fraction = if terms.is_single_power() || terms.powers.is_empty() {
                self.config.origin_fraction_even
            } else {
                self.config.origin_fraction_even_mixed
            };
            fraction * r_star / p0.max(1.0)
        };
        let problem = Problem { terms, sector, r_star, e_scale, r_min };

        let mut points = self.config.initial_points.max(64);
        // e_scale tracks the level spacing; |E| can be much larger when q is near 0
        let first = self.locate(&problem, points, e_guess, 0.5 * e_scale, None)?;
        let r_max = *first.mesh.r.last().unwrap();
        let mut prev = first;
        let mut mesh_change = f64::INFINITY;
        let mut converged = false;
        let mut energy = prev.energy;
        for _ in 0..self.config.max_doublings {
            points = 2 * points - 1;
            let width = 1e-4 * e_scale + 1e-6 * prev.energy.abs();
            let next = self.locate(&problem, points, prev.energy, width, Some(r_max))?;
            mesh_change = (next.energy - prev.energy).abs();
            energy =
                if self.config.richardson { next.energy + (next.energy - prev.energy) / 15.0 } else { next.energy };
            let scale = next.energy.abs().max(1e-3 * e_scale);
            prev = next;
            if mesh_change <= 0.25 * tol * scale {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NotConverged {
                iterations: self.config.max_doublings,
                last_change: mesh_change,
                context: format!("mesh refinement for state {s}"),
            });
        }

        let mesh = &prev.mesh;
        let w = problem.wavefunction(mesh, prev.energy);
        let half_nodes = count_sign_changes(&w);
        let node_count = sector.nodes(half_nodes);
        if node_count != s.n - 1 {
            return Err(Error::NotConverged {
                iterations: 0,
                last_change: mesh_change,
                context: format!("wavefunction for {s} has {node_count} nodes, expected {}", s.n - 1),
            });
        }
        Ok(EigenResult {
            energy,
            label: s,
            node_count,
            r_grid: mesh.r.clone(),
            u_values: w,
            log_step: mesh.h,
            converged,
            residual: prev.width,
            mesh_change,
            mesh_points: mesh.len(),
        })
    }

    /// Brackets the sector's `index`-th level by node counting and bisects it.
    fn locate(
        &self,
        p: &Problem<'_>,
        points: usize,
        guess: f64,
        width: f64,
        fixed_r_max: Option<f64>,
    ) -> Result<Solution> {
        let target = p.sector.index;
        let threshold = p.terms.threshold();
        let mut lo = guess - width;
        let mut hi = guess + width;
        if let Some(t) = threshold {
            if hi >= t {
                hi = t - 0.5 * (t - guess).max(1e-12 * p.e_scale);
            }
            if lo >= hi {
                lo = hi - width;
            }
        }
        let (mut w_lo, mut w_hi) = (width, width);
        let mut expansions = 0;
        let mut mesh;
        loop {
            let r_max = fixed_r_max.unwrap_or_else(|| p.r_max_for(hi, self.config.decay_target));
            let mut pts = points;
            mesh = Mesh::new(p.terms, p.sector.lambda, p.r_min, r_max, pts);
            while mesh.stiffness(lo.min(hi)) > 0.05 && pts < 64 * points {
                pts = 2 * pts - 1;
                mesh = Mesh::new(p.terms, p.sector.lambda, p.r_min, r_max, pts);
            }
            let n_lo = p.count_nodes(&mesh, lo);
            let n_hi = p.count_nodes(&mesh, hi);
            if n_lo < target && n_hi >= target {
                break;
            }
            expansions += 1;
            if expansions > self.config.max_bracket_expansions {
                return Err(Error::NotBracketed(format!(
                    "level {target} (L = {}) not found in [{lo:.6e}, {hi:.6e}]: node counts {n_lo}, {n_hi}",
                    p.sector.lambda
                )));
            }
            if n_lo >= target {
                hi = lo;
                lo -= w_lo;
                w_lo *= 2.0;
            } else {
                let next = hi + w_hi;
                w_hi *= 2.0;
                hi = match threshold {
                    Some(t) if next >= t => t - 0.25 * (t - hi),
                    _ => next,
                };
            }
        }
        let mut iterations = 0;
        while hi - lo > 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1e-300) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if p.count_nodes(&mesh, mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
            iterations += 1;
            if iterations > self.config.max_bisections {
                return Err(Error::NotConverged {
                    iterations,
                    last_change: hi - lo,
                    context: "node-count bisection".into(),
                });
            }
        }
        Ok(Solution { energy: 0.5 * (lo + hi), width: hi - lo, mesh })
    }
}
