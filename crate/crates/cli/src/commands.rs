//! Subcommand bodies. Each produces a table plus a pass/fail verdict; writing
//! and exit codes are handled by the caller.

use anyhow::{bail, Result};
use serde_json::{json, Value};

use pspectra::bounds::{default_fig5_couplings, figure5_dataset, PSource};
use pspectra::datasets::{
    comparison_suite, pfun, q_grid_for, q_monotone_suite, roundtrip_suite, table1, COMPARISON_EXPONENTS, MONOTONE_DIMS,
};
use pspectra::prep::p_from_energy;
use pspectra::radial::solve_eigenvalue;
use pspectra::{PotentialSpec, StateLabel};

use crate::output::{Cell, Table};

/// Smallest accepted gap in the bound ordering.
pub const SANDWICH_MARGIN: f64 = 1e-6;

/// Largest accepted round-trip relative error.
pub const ROUNDTRIP_LIMIT: f64 = 1e-12;

pub struct Outcome {
    pub table: Table,
    pub params: Value,
    /// Problems that make the run fail; empty on success.
    pub failures: Vec<String>,
}

fn source_label(s: PSource) -> &'static str {
    match s {
        PSource::Exact => "exact",
        PSource::Solver { .. } => "solver",
    }
}

pub fn eigen(q: Option<f64>, log: bool, v: f64, s: StateLabel, tol: f64) -> Result<Outcome> {
    let pot = match (q, log) {
        (_, true) => PotentialSpec::log(v)?,
        (Some(q), false) => PotentialSpec::power(q, v)?,
        (None, false) => bail!("give an exponent with --q or choose --log"),
    };
    let r = solve_eigenvalue(&pot, s, tol)?;
    let exponent = pot.exponent();
    // P is defined at unit coupling: undo the scaling before inverting
    let unit =
        if exponent == 0.0 { (r.energy + 0.5 * v * v.ln()) / v } else { r.energy / v.powf(2.0 / (exponent + 2.0)) };
    let p = p_from_energy(unit, exponent).ok();
    let mut t = Table::new(&[
        "q",
        "v",
        "N",
        "n",
        "l",
        "energy",
        "P",
        "nodes",
        "mesh_points",
        "mesh_change",
        "residual",
        "converged",
    ]);
    t.push(vec![
        if log { Cell::Text("log".into()) } else { exponent.into() },
        v.into(),
        s.dim.into(),
        s.n.into(),
        s.ell.into(),
        r.energy.into(),
        p.into(),
        r.node_count.into(),
        r.mesh_points.into(),
        r.mesh_change.into(),
        r.residual.into(),
        r.converged.into(),
    ]);
    let failures =
        if r.converged { vec![] } else { vec![format!("{s}: not converged, mesh change {}", r.mesh_change)] };
    Ok(Outcome { table: t, params: json!({ "q": q, "log": log, "v": v, "N": s.dim, "n": s.n, "l": s.ell }), failures })
}

pub fn pfun_cmd(grid: Option<Vec<f64>>, s: StateLabel, tol: f64) -> Result<Outcome> {
    let grid = grid.unwrap_or_else(|| q_grid_for(s.dim));
    let rows = pfun(&grid, s, tol);
    let mut t = Table::new(&["q", "E", "P", "Z", "Q", "source", "error"]);
    let mut failures = Vec::new();
    for r in &rows {
        if let Some(e) = &r.error {
            failures.push(format!("q = {}: {e}", r.q));
        }
        t.push(vec![
            r.q.into(),
            r.energy.into(),
            r.p.into(),
            r.z.into(),
            r.q_value.into(),
            r.source.map(source_label).into(),
            r.error.clone().into(),
        ]);
    }
    Ok(Outcome { table: t, params: json!({ "q_grid": grid, "N": s.dim, "n": s.n, "l": s.ell }), failures })
}

pub fn table1_cmd(tol: f64) -> Result<Outcome> {
    let rows = table1(tol)?;
    let mut t = Table::new(&["N", "n", "P", "reference", "deviation", "within_tolerance"]);
    let mut failures = Vec::new();
    for r in &rows {
        if !r.within_tolerance() {
            failures.push(format!("N={} n={}: computed {:.6}, reference {:.4}", r.dim, r.n, r.p, r.reference));
        }
        t.push(vec![
            r.dim.into(),
            r.n.into(),
            r.p.into(),
            r.reference.into(),
            r.deviation.into(),
            r.within_tolerance().into(),
        ]);
    }
    Ok(Outcome { table: t, params: json!({ "q": 1.0, "l": 0 }), failures })
}

pub fn fig5_cmd(dims: Option<Vec<u32>>, couplings: Option<Vec<f64>>, tol: f64) -> Result<Outcome> {
    let dims = dims.unwrap_or_else(|| (3..=10).collect());
    let couplings = couplings.unwrap_or_else(default_fig5_couplings);
    let rows = figure5_dataset(&dims, &couplings, tol)?;
    let mut t = Table::new(&["N", "v", "ELP", "ELQ", "EX", "EUQ", "EUP"]);
    let mut failures = Vec::new();
    for r in &rows {
        let m = r.bounds().sandwich_margin();
        if !(m > SANDWICH_MARGIN) {
            failures.push(format!("N={} v={}: ordering margin {m:.3e}", r.dim, r.v));
        }
        t.push(vec![r.dim.into(), r.v.into(), r.elp.into(), r.elq.into(), r.ex.into(), r.euq.into(), r.eup.into()]);
    }
    let sources: Vec<Value> = dims
        .iter()
        .zip(rows.iter().step_by(couplings.len().max(1)))
        .map(|(d, r)| {
            json!({ "N": d, "P_linear": r.p_linear, "P_linear_source": source_label(r.p_linear_source),
                    "P_oscillator": r.p_oscillator })
        })
        .collect();
    Ok(Outcome {
        table: t,
        params: json!({ "N": dims, "v": couplings, "target_q": 1.5, "p_values": sources }),
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Suite {
    QMonotone,
    Comparison,
    Roundtrip,
    All,
}

pub fn verify_cmd(suite: Suite, tol: f64) -> Result<Outcome> {
    let mut t = Table::new(&["suite", "case", "margin", "pass"]);
    let mut failures = Vec::new();
    let mut record = |t: &mut Table, suite: &str, case: String, margin: f64, pass: bool| {
        if !pass {
            failures.push(format!("{suite} {case}: margin {margin:.3e}"));
        }
        t.push(vec![suite.into(), case.into(), margin.into(), pass.into()]);
    };
    if matches!(suite, Suite::QMonotone | Suite::All) {
        for c in q_monotone_suite(&MONOTONE_DIMS, tol)? {
            record(&mut t, "q_monotone", format!("N={} q={}..{}", c.dim, c.q_lo, c.q_hi), c.margin(), c.pass());
        }
    }
    if matches!(suite, Suite::Comparison | Suite::All) {
        for c in comparison_suite(&COMPARISON_EXPONENTS, 3, tol)? {
            let case = format!("N={} p={} q={}", c.dim, c.p, c.q);
            record(&mut t, "comparison", case, c.bound_margin, c.bound_margin > 0.0);
        }
    }
    if matches!(suite, Suite::Roundtrip | Suite::All) {
        let r = roundtrip_suite()?;
        let case = format!("{} points, worst at P={:.4e} q={}", r.cases, r.worst_p, r.worst_q);
        record(&mut t, "roundtrip", case, r.max_relative_error, r.max_relative_error <= ROUNDTRIP_LIMIT);
    }
    Ok(Outcome { table: t, params: json!({ "suite": format!("{suite:?}") }), failures })
}
