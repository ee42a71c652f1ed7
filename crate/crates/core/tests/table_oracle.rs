//! Rayleigh-Ritz check of the linear-potential table with even-tempered
//! Gaussians `exp(-a r^2)` in `N` dimensions. Ritz values are upper bounds on
//! the corresponding eigenvalues, so a published entry whose energy exceeds
//! its Ritz value is too large.

use nalgebra::{DMatrix, SymmetricEigen};

use pspectra::datasets::{reference_p_linear, table1_cell};
use pspectra::prep::g;
use pspectra::StateLabel;

/// `Γ((N+1)/2) / Γ(N/2)` by the two-step recurrence.
fn gamma_ratio(dim: u32) -> f64 {
    let (mut r, start) =
        if dim % 2 == 1 { (1.0 / std::f64::consts::PI.sqrt(), 1) } else { (0.5 * std::f64::consts::PI.sqrt(), 2) };
    let mut n = start;
    while n < dim {
        r *= (n as f64 + 1.0) / n as f64;
        n += 2;
    }
    r
}

/// Ritz values of `-Δ + r` on the `ell = 0` sector, ascending.
fn ritz_values(dim: u32) -> Vec<f64> {
    let half = dim as f64 / 2.0;
    // neighbour overlap held near 0.9 whatever the dimension
    let c = 0.98f64.powf(1.0 / half);
    let beta = {
        let x = (1.0 + (1.0 - c * c).sqrt()) / c;
        x * x
    };
    let (lo, hi): (f64, f64) = (2e-3, 2e2);
    let m = ((hi / lo).ln() / beta.ln()).ceil() as usize + 1;
    let alpha: Vec<f64> = (0..m).map(|k| lo * beta.powi(k as i32)).collect();
    let gr = gamma_ratio(dim);
    let mut s = DMatrix::zeros(m, m);
    let mut h = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let (ai, aj) = (alpha[i], alpha[j]);
            let a = ai + aj;
            let sij = (2.0 * (ai * aj).sqrt() / a).powf(half);
            s[(i, j)] = sij;
            h[(i, j)] = sij * (2.0 * dim as f64 * ai * aj / a + gr / a.sqrt());
        }
    }
    // canonical orthogonalization: drop near-null overlap directions
    let se = SymmetricEigen::new(s);
    let top = se.eigenvalues.max();
    let keep: Vec<usize> = (0..m).filter(|&k| se.eigenvalues[k] > 1e-11 * top).collect();
    let mut x = DMatrix::zeros(m, keep.len());
    for (c, &k) in keep.iter().enumerate() {
        x.set_column(c, &(se.eigenvectors.column(k) / se.eigenvalues[k].sqrt()));
    }
    let reduced = x.transpose() * h * &x;
    let mut e: Vec<f64> = SymmetricEigen::new(reduced).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

#[test]
fn gamma_ratio_values() {
    assert!((gamma_ratio(1) - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
    assert!((gamma_ratio(3) - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
    assert!((gamma_ratio(2) - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-15);
}

#[test]
fn ritz_reproduces_airy_ground_state() {
    let e = ritz_values(3);
    assert!(e[0] >= 2.338_107_410_459_767 - 1e-12);
    assert!(e[0] - 2.338_107_410_459_767 < 1e-5, "{}", e[0]);
}

#[test]
fn ritz_bounds_agree_with_solver_and_expose_table_misprints() {
    for dim in 2..=12u32 {
        let ritz = ritz_values(dim);
        for n in 1..=4u32 {
            let solved = table1_cell(StateLabel { dim, n, ell: 0 }, 1e-10).unwrap();
            let e_solver = g(solved.p, 1.0).unwrap();
            let e_ritz = ritz[n as usize - 1];
            assert!(e_ritz >= e_solver - 1e-9 * e_solver, "N={dim} n={n}: ritz {e_ritz} below solver {e_solver}");
            assert!(e_ritz - e_solver < 1e-5 * e_solver, "N={dim} n={n}: ritz {e_ritz} vs solver {e_solver}");
            let e_published = g(reference_p_linear(dim, n).unwrap(), 1.0).unwrap();
            if !solved.within_tolerance() {
                assert!(e_published > e_ritz, "N={dim} n={n}: published {e_published} not above bound {e_ritz}");
            }
            println!("N={dim} n={n} solver {e_solver:.8} ritz {e_ritz:.8} published {e_published:.6}");
        }
    }
}
