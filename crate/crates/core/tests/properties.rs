use proptest::prelude::*;

use pspectra::bounds::theorem5_bounds;
use pspectra::minimize::minimize_log_scan;
use pspectra::prep::{g, g_derivative, p_from_energy, scaled_energy, shifted_family_energy, z_factor};
use pspectra::radial::solve_eigenvalue;
use pspectra::{PotentialSpec, StateLabel};

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), -1.9f64..8.0]
}

fn positive_p() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn inversion_roundtrip(p in positive_p(), q in exponent()) {
        let back = p_from_energy(g(p, q).unwrap(), q).unwrap();
        prop_assert!((back - p).abs() <= 1e-12 * p);
    }

    #[test]
    fn g_is_the_minimum(p in positive_p(), q in exponent()) {
        let f = |r: f64| p * p / (r * r) + if q == 0.0 { r.ln() } else { q.signum() * r.powf(q) };
        let r0 = p.powf(2.0 / (q + 2.0));
        let (_, m) = minimize_log_scan(f, r0 * 1e-6, r0 * 1e6);
        prop_assert!((m - g(p, q).unwrap()).abs() <= 1e-8 * (1.0 + m.abs()));
    }

    #[test]
    fn derivative_matches_differences(p in positive_p(), q in exponent()) {
        let h = 1e-6 * p;
        let fd = (g(p + h, q).unwrap() - g(p - h, q).unwrap()) / (2.0 * h);
        let d = g_derivative(p, q).unwrap();
        prop_assert!(d > 0.0);
        prop_assert!((fd - d).abs() <= 1e-6 * d);
    }

    #[test]
    fn g_increases_in_p(p in positive_p(), dp in 1e-6f64..1.0, q in exponent()) {
        prop_assert!(g(p + dp, q).unwrap() > g(p, q).unwrap());
    }

    #[test]
    fn z_decreases(q in -1.9f64..8.0, dq in 0.01f64..2.0, dim in 2u32..12) {
        prop_assert!(z_factor(q + dq, dim).unwrap() < z_factor(q, dim).unwrap());
    }

    #[test]
    fn unit_scale_is_plain_g(p in positive_p(), q in exponent(), a in -5.0f64..5.0) {
        let s = scaled_energy(p, a, 1.0, q).unwrap();
        prop_assert!((s - a - g(p, q).unwrap()).abs() <= 1e-12 * (1.0 + s.abs()));
    }

    #[test]
    fn shifted_family_is_continuous(p in positive_p(), q in -1e-7f64..1e-7) {
        let d = shifted_family_energy(p, q).unwrap() - shifted_family_energy(p, 0.0).unwrap();
        prop_assert!(d.abs() <= 1e-5);
    }

    #[test]
    fn envelope_bounds_order(
        q1 in -1.5f64..3.0,
        gap in 0.05f64..2.0,
        p1 in 0.5f64..3.0,
        rise in 0.0f64..1.0,
        dim in 2u32..8,
    ) {
        let q2 = q1 + gap;
        let b = theorem5_bounds(q1, q2, p1, p1 + rise + 1e-3, dim).unwrap();
        prop_assert!(b.improved_upper < b.upper);
        prop_assert!(b.improved_lower > b.lower);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn coupling_scaling(q in -1.5f64..4.0, v in 0.1f64..10.0, dim in 2u32..6) {
        prop_assume!(q.abs() > 0.05);
        let s = StateLabel::ground(dim);
        let e1 = solve_eigenvalue(&PotentialSpec::power(q, 1.0).unwrap(), s, 1e-9).unwrap().energy;
        let ev = solve_eigenvalue(&PotentialSpec::power(q, v).unwrap(), s, 1e-9).unwrap().energy;
        let want = v.powf(2.0 / (q + 2.0)) * e1;
        prop_assert!((ev - want).abs() <= 1e-5 * want.abs());
    }

    #[test]
    fn dimension_shift(q in -1.0f64..3.0, dim in 2u32..6, ell in 1u32..4, n in 1u32..3) {
        prop_assume!(q.abs() > 0.05);
        let pot = PotentialSpec::power(q, 1.0).unwrap();
        let a = solve_eigenvalue(&pot, StateLabel::new(dim, n, ell).unwrap(), 1e-9).unwrap().energy;
        let b = solve_eigenvalue(&pot, StateLabel::new(dim + 2 * ell, n, 0).unwrap(), 1e-9).unwrap().energy;
        prop_assert!((a - b).abs() <= 1e-6 * a.abs());
    }

    #[test]
    fn energies_rise_with_n(q in -0.9f64..3.0, dim in 1u32..6) {
        prop_assume!(q.abs() > 0.05);
        let pot = PotentialSpec::power(q, 1.0).unwrap();
        let e: Vec<f64> = (1..=3)
            .map(|n| solve_eigenvalue(&pot, StateLabel::new(dim, n, 0).unwrap(), 1e-8).unwrap().energy)
            .collect();
        prop_assert!(e[0] < e[1] && e[1] < e[2]);
    }
}
