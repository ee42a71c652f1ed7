//! Eigenvalue bounds for power-law potentials from P-values at neighbouring
//! exponents.
//!
//! For `q1 < q2`, `P` increasing gives the envelope bounds
//! `E(q1) <= g(P(q2), q1)` and `E(q2) >= g(P(q1), q2)`. `Q = Z P` increasing
//! and `Z` decreasing sharpen both: `P(q2) > Q(q2)/Z(q1) >= P(q1)`.
//!
//! All bounds here are for the bottom of an angular-momentum sector
//! (`n = 1`); nothing is claimed for excited radial states.

use serde::{Deserialize, Serialize};

use crate::exact::{hydrogen_energy, linear_energy_exact, oscillator_energy, StateLabel};
use crate::minimize::minimize_log_scan;
use crate::potential::{PotentialSpec, PotentialTerms};
use crate::prep::{g, p_from_energy, z_factor};
use crate::radial::solve_eigenvalue;
use crate::sweep::map_cells;
use crate::{Error, Result};

/// Where a P-value came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "source")]
pub enum PSource {
    /// Closed-form spectrum (hydrogenic, oscillator or Airy zero).
    Exact,
    /// Radial solver followed by inversion of `g`; `mesh_change` is the
    /// eigenvalue shift over the last mesh doubling.
    Solver { mesh_change: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PValue {
    pub q: f64,
    pub value: f64,
    pub provenance: PSource,
}

/// `P` for state `s` at exponent `q` (0 = log), exact when a closed form exists.
pub fn p_value(q: f64, s: StateLabel, tol: f64) -> Result<PValue> {
    let exact = if q == -1.0 && s.dim >= 2 {
        Some(hydrogen_energy(s)?)
    } else if q == 2.0 {
        Some(oscillator_energy(s)?)
    } else if q == 1.0 && s.dim == 3 && s.ell == 0 {
        Some(linear_energy_exact(s, 1.0)?)
    } else if q == 1.0 && s.dim == 1 && s.n % 2 == 1 {
        // closed form covers the even-parity levels only
        Some(linear_energy_exact(StateLabel::new(1, s.n.div_ceil(2), 0)?, 1.0)?)
    } else {
        None
    };
    if let Some(e) = exact {
        return Ok(PValue { q, value: p_from_energy(e, q)?, provenance: PSource::Exact });
    }
    let r = solve_eigenvalue(&PotentialSpec::from_exponent(q, 1.0)?, s, tol)?;
    Ok(PValue { q, value: p_from_energy(r.energy, q)?, provenance: PSource::Solver { mesh_change: r.mesh_change } })
}

/// The four bounds from one comparison pair `q1 < q2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem5Bounds {
    pub q1: f64,
    pub q2: f64,
    pub dim: u32,
    /// `g(P(q2), q1) >= E(q1)`.
    pub upper: f64,
    /// `g(P(q1), q2) <= E(q2)`.
    pub lower: f64,
    /// `g(Q(q2)/Z(q1), q1)`, below `upper`.
    pub improved_upper: f64,
    /// `g(Q(q1)/Z(q2), q2)`, above `lower`.
    pub improved_lower: f64,
}

pub fn theorem5_bounds(q1: f64, q2: f64, p1: f64, p2: f64, dim: u32) -> Result<Theorem5Bounds> {
    if !(q1 < q2) {
        return Err(Error::Domain(format!("need q1 < q2, got q1 = {q1}, q2 = {q2}")));
    }
    let z1 = z_factor(q1, dim)?;
    let z2 = z_factor(q2, dim)?;
    Ok(Theorem5Bounds {
        q1,
        q2,
        dim,
        upper: g(p2, q1)?,
        lower: g(p1, q2)?,
        improved_upper: g(z2 * p2 / z1, q1)?,
        improved_lower: g(z1 * p1 / z2, q2)?,
    })
}

/// Envelope (`P`) and sharpened (`Q`) bounds around one target exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSet {
    pub q_target: f64,
    pub dim: u32,
    pub elp: f64,
    pub elq: f64,
    pub euq: f64,
    pub eup: f64,
    /// Solver eigenvalue, when computed.
    pub reference: Option<f64>,
}

impl BoundSet {
    /// Lower pair from `(q_lo, q_target)` and upper pair from `(q_target, q_hi)`.
    pub fn around(q_target: f64, lower_from: PValue, upper_from: PValue, dim: u32) -> Result<Self> {
        let lo = theorem5_bounds(lower_from.q, q_target, lower_from.value, 1.0, dim)?;
        let hi = theorem5_bounds(q_target, upper_from.q, 1.0, upper_from.value, dim)?;
        Ok(Self {
            q_target,
            dim,
            elp: lo.lower,
            elq: lo.improved_lower,
            euq: hi.improved_upper,
            eup: hi.upper,
            reference: None,
        })
    }

    /// All four bounds times `factor` (coupling scaling, `factor > 0`).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            elp: self.elp * factor,
            elq: self.elq * factor,
            euq: self.euq * factor,
            eup: self.eup * factor,
            reference: self.reference.map(|e| e * factor),
            ..*self
        }
    }

    /// Smallest gap in `ELP < ELQ < [EX <] EUQ < EUP`.
    pub fn sandwich_margin(&self) -> f64 {
        let mut chain = vec![self.elp, self.elq];
        chain.extend(self.reference);
        chain.extend([self.euq, self.eup]);
        chain.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }
}

/// `g(Q(0)/Z(q), q)`, a lower bound on `E(q)` for `q > 0` from the log-potential `Q(0)`.
pub fn log_lower_bound(q: f64, q0: f64, dim: u32) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!("log lower bound needs q > 0, got {q}")));
    }
    if !(q0 > 0.0) {
        return Err(Error::Domain(format!("Q(0) must be positive, got {q0}")));
    }
    g(q0 / z_factor(q, dim)?, q)
}

/// `V(r) = Σ a(q) sgn(q) r^q + a(0) ln r` with non-negative weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerMixture {
    pub terms: Vec<(f64, f64)>,
    pub log_weight: f64,
}

impl PowerMixture {
    pub fn new(terms: Vec<(f64, f64)>, log_weight: f64) -> Result<Self> {
        for &(q, a) in &terms {
            if q == 0.0 || !(q > -2.0) {
                return Err(Error::Domain(format!("mixture exponent {q} must be nonzero and > -2")));
            }
            if !(a >= 0.0) || !a.is_finite() {
                return Err(Error::Domain(format!("mixture weight {a} must be non-negative")));
            }
        }
        if !(log_weight >= 0.0) || !log_weight.is_finite() {
            return Err(Error::Domain(format!("log weight {log_weight} must be non-negative")));
        }
        if log_weight == 0.0 && terms.iter().all(|&(_, a)| a == 0.0) {
            return Err(Error::Domain("mixture has no positive weight".into()));
        }
        Ok(Self { terms, log_weight })
    }

    pub fn potential(&self) -> PotentialTerms {
        PotentialTerms {
            shift: 0.0,
            powers: self.terms.iter().filter(|t| t.1 > 0.0).map(|&(q, a)| (q, a * q.signum())).collect(),
            log_coef: self.log_weight,
        }
    }
}

/// `min_r { 1/r^2 + Σ a(q) sgn(q) (P(q) r)^q + a(0) ln(P(0) r) }`, a lower
/// bound on the bottom of the sector whose P-values are supplied.
///
/// `p_values` holds `(q, P(q))` pairs; `p_log` is `P(0)`, needed when the log weight is positive.
pub fn sum_of_powers_lower_bound(
    mix: &PowerMixture,
    p_values: &[(f64, f64)],
    p_log: Option<f64>,
    dim: u32,
) -> Result<f64> {
    if dim < 2 {
        return Err(Error::Domain("sum-of-powers bound needs N >= 2".into()));
    }
    let mix = PowerMixture::new(mix.terms.clone(), mix.log_weight)?;
    let mut active = Vec::new();
    for &(q, a) in &mix.terms {
        if a == 0.0 {
            continue;
        }
        let p = p_values.iter().find(|(k, _)| *k == q).map(|&(_, p)| p).ok_or(Error::MissingPValue(q))?;
        if !(p > 0.0) {
            return Err(Error::Domain(format!("P({q}) must be positive, got {p}")));
        }
        active.push((q, a, p));
    }
    let log = if mix.log_weight > 0.0 {
        let p0 = p_log.ok_or(Error::MissingPValue(0.0))?;
        Some((mix.log_weight, p0))
    } else {
        None
    };
    let objective = |r: f64| {
        let mut v = 1.0 / (r * r);
        for &(q, a, p) in &active {
            v += a * q.signum() * (p * r).powf(q);
        }
        if let Some((a0, p0)) = log {
            v += a0 * (p0 * r).ln();
        }
        v
    };
    Ok(minimize_log_scan(objective, 1e-10, 1e10).1)
}

/// One `(N, v)` cell of the `r^{3/2}` bound comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Figure5Row {
    pub dim: u32,
    pub v: f64,
    pub elp: f64,
    pub elq: f64,
    pub ex: f64,
    pub euq: f64,
    pub eup: f64,
    pub p_linear: f64,
    pub p_linear_source: PSource,
    pub p_oscillator: f64,
}

impl Figure5Row {
    pub fn bounds(&self) -> BoundSet {
        BoundSet {
            q_target: 1.5,
            dim: self.dim,
            elp: self.elp,
            elq: self.elq,
            euq: self.euq,
            eup: self.eup,
            reference: Some(self.ex),
        }
    }
}

/// Target exponent of the bound comparison.
pub const FIG5_TARGET: f64 = 1.5;

/// Ground-state bounds on `-Δ + v r^{3/2}` from linear (`q = 1`) and
/// oscillator (`q = 2`) P-values, with the solver eigenvalue between them.
/// Per-dimension work runs concurrently; couplings enter through `v^{4/7}`.
pub fn figure5_dataset(dims: &[u32], couplings: &[f64], tol: f64) -> Result<Vec<Figure5Row>> {
    for &v in couplings {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!("coupling must be positive, got {v}")));
        }
    }
    let per_dim = map_cells(dims, |&dim| -> Result<(BoundSet, PValue, PValue)> {
        let s = StateLabel::ground(dim);
        let lin = p_value(1.0, s, tol)?;
        let osc = p_value(2.0, s, tol)?;
        let mut set = BoundSet::around(FIG5_TARGET, lin, osc, dim)?;
        let ex = solve_eigenvalue(&PotentialSpec::power(FIG5_TARGET, 1.0)?, s, tol)?;
        set.reference = Some(ex.energy);
        Ok((set, lin, osc))
    });
    let mut rows = Vec::with_capacity(dims.len() * couplings.len());
    for cell in per_dim {
        let (set, lin, osc) = cell?;
        for &v in couplings {
            let b = set.scaled(v.powf(2.0 / (FIG5_TARGET + 2.0)));
            rows.push(Figure5Row {
                dim: set.dim,
                v,
                elp: b.elp,
                elq: b.elq,
                ex: b.reference.unwrap_or(f64::NAN),
                euq: b.euq,
                eup: b.eup,
                p_linear: lin.value,
                p_linear_source: lin.provenance,
                p_oscillator: osc.value,
            });
        }
    }
    Ok(rows)
}

/// Default coupling grid: 12 log-spaced values on `[0.5, 10]` merged with `{0.5, 1, 2, 5, 10}`.
pub fn default_fig5_couplings() -> Vec<f64> {
    let (lo, hi) = (0.5f64, 10.0f64);
    let mut v: Vec<f64> = (0..12).map(|i| lo * (hi / lo).powf(i as f64 / 11.0)).collect();
    v.extend([0.5, 1.0, 2.0, 5.0, 10.0]);
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::RadialSolver;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pair_bound_examples() {
        let b = theorem5_bounds(1.0, 1.5, 1.3761, 1.0, 3).unwrap();
        // 1.75 (2 P^2 / 1.5)^{3/7}
        let oracle = 1.75 * (2.0f64 * 1.3761 * 1.3761 / 1.5).powf(3.0 / 7.0);
        assert_abs_diff_eq!(b.lower, oracle, epsilon = 1e-14);
        assert_abs_diff_eq!(b.lower, 2.6023, epsilon = 1e-3);
        let b = theorem5_bounds(1.5, 2.0, 1.0, 1.5, 3).unwrap();
        assert_abs_diff_eq!(b.upper, 1.75 * 3f64.powf(3.0 / 7.0), epsilon = 1e-14);
        assert_abs_diff_eq!(b.upper, 2.8020, epsilon = 1e-3);
        assert_abs_diff_eq!(b.improved_upper, 2.7673, epsilon = 1e-3);
        assert!(b.improved_upper < b.upper);
        let z = z_factor(2.0, 3).unwrap() * 1.5 / z_factor(1.5, 3).unwrap();
        assert_abs_diff_eq!(z, 1.477_82, epsilon = 1e-5);
        assert!(theorem5_bounds(2.0, 1.0, 1.0, 1.0, 3).is_err());
    }

    #[test]
    fn improvements_hold_on_grid() {
        let grid = [-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
        let s = StateLabel::ground(3);
        let ps: Vec<PValue> = grid.iter().map(|&q| p_value(q, s, 1e-10).unwrap()).collect();
        for i in 0..grid.len() {
            for j in i + 1..grid.len() {
                let b = theorem5_bounds(grid[i], grid[j], ps[i].value, ps[j].value, 3).unwrap();
                assert!(b.improved_lower > b.lower, "{:?}", b);
                assert!(b.improved_upper < b.upper, "{:?}", b);
                let e1 = g(ps[i].value, grid[i]).unwrap();
                let e2 = g(ps[j].value, grid[j]).unwrap();
                assert!(b.improved_upper > e1 && b.improved_lower < e2, "{:?}", b);
            }
        }
    }

    #[test]
    fn bounds_close_in_when_exponents_merge() {
        let s = StateLabel::ground(3);
        let (qa, qb) = (1.49, 1.5);
        let pa = p_value(qa, s, 1e-10).unwrap().value;
        let pb = p_value(qb, s, 1e-10).unwrap().value;
        let b = theorem5_bounds(qa, qb, pa, pb, 3).unwrap();
        let ex = g(pb, qb).unwrap();
        assert!((ex - b.lower) / ex < 0.02);
        assert!((b.improved_lower - ex).abs() / ex < 0.02);
    }

    #[test]
    fn log_bound() {
        let s = StateLabel::ground(3);
        let p0 = p_value(0.0, s, 1e-10).unwrap().value;
        let q0 = z_factor(0.0, 3).unwrap() * p0;
        assert!(log_lower_bound(2.0, q0, 3).unwrap() < 3.0);
        assert!(log_lower_bound(1.0, q0, 3).unwrap() < 2.338_107_41);
        assert!(log_lower_bound(0.0, q0, 3).is_err());
        // exact when Q(0)/Z(q) equals P(q)
        let p1 = 1.376_083_5;
        let q = z_factor(1.0, 3).unwrap() * p1;
        assert_abs_diff_eq!(log_lower_bound(1.0, q, 3).unwrap(), g(p1, 1.0).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn sum_of_powers_single_terms_are_exact() {
        let m = PowerMixture::new(vec![(2.0, 1.0)], 0.0).unwrap();
        assert_abs_diff_eq!(sum_of_powers_lower_bound(&m, &[(2.0, 1.5)], None, 3).unwrap(), 3.0, epsilon = 1e-10);
        let m = PowerMixture::new(vec![(-1.0, 1.0)], 0.0).unwrap();
        assert_abs_diff_eq!(sum_of_powers_lower_bound(&m, &[(-1.0, 1.0)], None, 3).unwrap(), -0.25, epsilon = 1e-10);
        let m = PowerMixture::new(vec![], 1.0).unwrap();
        assert_abs_diff_eq!(
            sum_of_powers_lower_bound(&m, &[], Some(1.2), 3).unwrap(),
            g(1.2, 0.0).unwrap(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn sum_of_powers_errors() {
        let m = PowerMixture::new(vec![(2.0, 1.0), (1.0, 0.5)], 0.0).unwrap();
        assert_eq!(sum_of_powers_lower_bound(&m, &[(2.0, 1.5)], None, 3), Err(Error::MissingPValue(1.0)));
        assert!(PowerMixture::new(vec![(2.0, 0.0)], 0.0).is_err());
        assert!(PowerMixture::new(vec![(2.0, -1.0)], 0.0).is_err());
        let m = PowerMixture::new(vec![], 1.0).unwrap();
        assert!(sum_of_powers_lower_bound(&m, &[], None, 3).is_err());
    }

    #[test]
    fn sum_of_powers_bounds_the_mixture() {
        let m = PowerMixture::new(vec![(-1.0, 1.0), (1.0, 1.0)], 0.0).unwrap();
        let s = StateLabel::ground(3);
        let bound = sum_of_powers_lower_bound(&m, &[(-1.0, 1.0), (1.0, 1.376_083_543)], None, 3).unwrap();
        let exact = RadialSolver::default().solve_terms(&m.potential(), 1.0, s, 1e-10).unwrap().energy;
        assert!(bound <= exact, "{bound} > {exact}");
        assert!(exact - bound < 0.5);
    }

    #[test]
    fn fig5_spot_values_and_scaling() {
        let rows = figure5_dataset(&[3], &[1.0, 8.0], 1e-10).unwrap();
        let r1 = rows[0];
        assert_abs_diff_eq!(r1.elp, 2.6023, epsilon = 1e-3);
        assert_abs_diff_eq!(r1.eup, 2.8020, epsilon = 1e-3);
        assert!(r1.bounds().sandwich_margin() > 1e-6);
        assert_eq!(r1.p_linear_source, PSource::Exact);
        let r8 = rows[1];
        let f = 8f64.powf(4.0 / 7.0);
        assert_abs_diff_eq!(r8.elp, f * r1.elp, epsilon = 1e-12);
        assert_abs_diff_eq!(r8.ex, f * r1.ex, epsilon = 1e-12);
    }

    #[test]
    fn coupling_grid() {
        let v = default_fig5_couplings();
        assert!(v.windows(2).all(|w| w[1] > w[0]));
        for x in [0.5, 1.0, 2.0, 5.0, 10.0] {
            assert!(v.iter().any(|y| (y - x).abs() < 1e-12));
        }
        assert_eq!(v[0], 0.5);
    }
}
