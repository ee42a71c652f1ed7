//! Batch sweeps: the linear-potential reference table, P/Z/Q curves, and the
//! verification grids. Independent cells run through [`map_cells`]; output
//! order is fixed by the input grid.

use serde::{Deserialize, Serialize};

use crate::bounds::{p_value, PSource, PValue};
use crate::comparison::{verify_q_monotone, QMonotoneCheck};
use crate::exact::StateLabel;
use crate::potential::PotentialSpec;
use crate::prep::{g, p_from_energy, z_factor};
use crate::radial::solve_eigenvalue;
use crate::sweep::map_cells;
use crate::Result;

/// Published `P(1)` ground and excited values, rows `N = 2..=12`, columns `n = 1..=4`.
pub const REFERENCE_P_LINEAR: [[f64; 4]; 11] = [
    [0.9348, 2.8063, 4.6249, 6.4416],
    [1.3761, 3.1813, 4.9926, 6.8051],
    [1.8735, 3.6657, 5.4700, 7.2783],
    [2.3719, 4.1550, 5.9530, 7.7570],
    [2.8709, 4.6472, 6.4398, 8.2396],
    [3.3702, 5.1413, 6.9291, 8.7251],
    [3.8696, 5.6367, 7.4204, 9.2129],
    [4.3692, 6.1330, 7.9130, 9.7024],
    [4.8689, 6.6299, 8.4068, 10.1932],
    [5.3686, 7.1274, 8.9053, 10.7453],
    [5.8684, 7.6253, 9.4045, 11.2744],
];

/// Allowed `|computed - reference|` for a table entry.
pub const TABLE1_TOLERANCE: f64 = 5e-4;

pub fn reference_p_linear(dim: u32, n: u32) -> Option<f64> {
    let row = REFERENCE_P_LINEAR.get((dim as usize).checked_sub(2)?)?;
    row.get((n as usize).checked_sub(1)?).copied()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub dim: u32,
    pub n: u32,
    pub p: f64,
    pub reference: f64,
    pub deviation: f64,
    pub mesh_change: f64,
}

impl Table1Row {
    pub fn within_tolerance(&self) -> bool {
        self.deviation.abs() <= TABLE1_TOLERANCE
    }
}

/// The 44 `(N, n)` cells, row-major.
pub fn table1_cells() -> Vec<StateLabel> {
    (2..=12).flat_map(|dim| (1..=4).map(move |n| StateLabel { dim, n, ell: 0 })).collect()
}

pub fn table1_cell(s: StateLabel, tol: f64) -> Result<Table1Row> {
    let r = solve_eigenvalue(&PotentialSpec::power(1.0, 1.0)?, s, tol)?;
    let p = p_from_energy(r.energy, 1.0)?;
    let reference = reference_p_linear(s.dim, s.n).unwrap_or(f64::NAN);
    Ok(Table1Row { dim: s.dim, n: s.n, p, reference, deviation: p - reference, mesh_change: r.mesh_change })
}

pub fn table1(tol: f64) -> Result<Vec<Table1Row>> {
    map_cells(&table1_cells(), |&s| table1_cell(s, tol)).into_iter().collect()
}

/// Exponents of the default P/Q grid, with `0` standing for the log potential.
pub const DEFAULT_Q_GRID: [f64; 11] = [-1.5, -1.0, -0.5, -1e-3, 0.0, 1e-3, 0.5, 1.0, 1.5, 2.0, 3.0];

/// Exponents for which `P(q)` exists in dimension `dim`.
pub fn q_grid_for(dim: u32) -> Vec<f64> {
    let floor = if dim == 1 { -1.0 } else { -2.0 };
    DEFAULT_Q_GRID.iter().copied().filter(|&q| q > floor).collect()
}

/// One point of the `P(q)`, `Z(q)`, `Q(q)` curves. Failed cells keep the
/// error text and leave the numeric columns empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PfunRow {
    pub q: f64,
    pub energy: Option<f64>,
    pub p: Option<f64>,
    pub z: Option<f64>,
    pub q_value: Option<f64>,
    pub source: Option<PSource>,
    pub error: Option<String>,
}

pub fn pfun(grid: &[f64], s: StateLabel, tol: f64) -> Vec<PfunRow> {
    map_cells(grid, |&q| {
        let mut row = PfunRow { q, energy: None, p: None, z: None, q_value: None, source: None, error: None };
        let point = p_value(q, s, tol).and_then(|pv| Ok((pv, g(pv.value, q)?)));
        match point {
            Ok((pv, e)) => {
                row.energy = Some(e);
                row.p = Some(pv.value);
                row.source = Some(pv.provenance);
                match z_factor(q, s.dim) {
                    Ok(z) => {
                        row.z = Some(z);
                        row.q_value = Some(z * pv.value);
                    }
                    Err(err) => row.error = Some(err.to_string()),
                }
            }
            Err(err) => row.error = Some(err.to_string()),
        }
        row
    })
}

/// Dimensions covered by the monotonicity suite.
pub const MONOTONE_DIMS: [u32; 5] = [1, 2, 3, 5, 10];

/// Adjacent-pair comparison of `P`, `Z` and `Q` on the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotoneCase {
    pub dim: u32,
    pub q_lo: f64,
    pub q_hi: f64,
    /// `P(q_hi) - P(q_lo)`, positive when `P` increases.
    pub dp: f64,
    /// `Z(q_lo) - Z(q_hi)`, positive when `Z` decreases.
    pub dz: f64,
    /// `Q(q_hi) - Q(q_lo)`, positive when `Q` increases.
    pub dq: f64,
}

impl MonotoneCase {
    pub fn pass(&self) -> bool {
        self.dp > 0.0 && self.dz > 0.0 && self.dq > 0.0
    }

    pub fn margin(&self) -> f64 {
        self.dp.min(self.dz).min(self.dq)
    }
}

pub fn q_monotone_suite(dims: &[u32], tol: f64) -> Result<Vec<MonotoneCase>> {
    let cells: Vec<(u32, f64)> = dims.iter().flat_map(|&d| q_grid_for(d).into_iter().map(move |q| (d, q))).collect();
    let values: Vec<PValue> =
        map_cells(&cells, |&(d, q)| p_value(q, StateLabel::ground(d), tol)).into_iter().collect::<Result<_>>()?;
    let mut cases = Vec::new();
    for (i, w) in cells.windows(2).enumerate() {
        let ((d, q_lo), (d_hi, q_hi)) = (w[0], w[1]);
        if d != d_hi {
            continue;
        }
        let (p_lo, p_hi) = (values[i].value, values[i + 1].value);
        let (z_lo, z_hi) = (z_factor(q_lo, d)?, z_factor(q_hi, d)?);
        cases.push(MonotoneCase {
            dim: d,
            q_lo,
            q_hi,
            dp: p_hi - p_lo,
            dz: z_lo - z_hi,
            dq: z_hi * p_hi - z_lo * p_lo,
        });
    }
    Ok(cases)
}

/// Exponents of the constructed-bound suite.
pub const COMPARISON_EXPONENTS: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];

/// `F̂ > E(q)` and `Q(p) > Q(q)` for every pair `p > q` of `exponents` in dimension `dim`.
pub fn comparison_suite(exponents: &[f64], dim: u32, tol: f64) -> Result<Vec<QMonotoneCheck>> {
    let values: Vec<PValue> =
        map_cells(exponents, |&q| p_value(q, StateLabel::ground(dim), tol)).into_iter().collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for hi in &values {
        for lo in &values {
            if hi.q > lo.q {
                pairs.push((*hi, *lo));
            }
        }
    }
    map_cells(&pairs, |(hi, lo)| verify_q_monotone(hi.q, lo.q, dim, hi.value, lo.value)).into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub cases: usize,
    pub max_relative_error: f64,
    pub worst_p: f64,
    pub worst_q: f64,
}

/// `P -> g(P, q) -> P` over log-spaced `P` in `[1e-3, 1e3]` and a fixed exponent grid.
pub fn roundtrip_suite() -> Result<RoundtripReport> {
    let qs = [-1.9, -1.5, -1.0, -0.5, -1e-3, 0.0, 1e-3, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0];
    let mut report = RoundtripReport { cases: 0, max_relative_error: 0.0, worst_p: f64::NAN, worst_q: f64::NAN };
    for &q in &qs {
        for i in 0..=120 {
            let p = 10f64.powf(-3.0 + 6.0 * i as f64 / 120.0);
            let back = p_from_energy(g(p, q)?, q)?;
            let err = (back - p).abs() / p;
            report.cases += 1;
            if err > report.max_relative_error {
                report.max_relative_error = err;
                report.worst_p = p;
                report.worst_q = q;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reference_lookup() {
        assert_eq!(reference_p_linear(3, 1), Some(1.3761));
        assert_eq!(reference_p_linear(12, 4), Some(11.2744));
        assert_eq!(reference_p_linear(1, 1), None);
        assert_eq!(reference_p_linear(13, 1), None);
        assert_eq!(reference_p_linear(2, 5), None);
        assert_eq!(table1_cells().len(), 44);
    }

    #[test]
    fn table1_spot() {
        let row = table1_cell(StateLabel::ground(3), 1e-10).unwrap();
        assert!(row.within_tolerance(), "{row:?}");
        assert_abs_diff_eq!(row.p, 1.376_083_5, epsilon = 1e-6);
    }

    #[test]
    fn pfun_spots() {
        let rows = pfun(&[-1.0, 0.0, 1.0, 2.0], StateLabel::ground(3), 1e-10);
        assert_abs_diff_eq!(rows[0].p.unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rows[0].q_value.unwrap(), 1.5, epsilon = 1e-12);
        assert!(rows[1].error.is_none() && rows[1].p.unwrap() > 1.0);
        assert_abs_diff_eq!(rows[2].p.unwrap(), 1.3761, epsilon = 5e-5);
        assert_abs_diff_eq!(rows[3].p.unwrap(), 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rows[3].q_value.unwrap(), 1.936_491_67, epsilon = 1e-8);
    }

    #[test]
    fn pfun_keeps_going_after_errors() {
        let rows = pfun(&[-1.5, 1.0], StateLabel::ground(1), 1e-8);
        assert!(rows[0].error.is_some());
        assert!(rows[1].error.is_none());
    }

    #[test]
    fn grid_respects_domain() {
        assert!(q_grid_for(1).iter().all(|&q| q > -1.0));
        assert_eq!(q_grid_for(3).len(), DEFAULT_Q_GRID.len());
    }

    #[test]
    fn roundtrip_is_tight() {
        let r = roundtrip_suite().unwrap();
        assert!(r.max_relative_error <= 1e-12, "{r:?}");
    }
}
