//! One-dimensional minimization: geometric scan to bracket, golden-section to polish.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
/// Returns `(x, f(x))`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, rel_tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..500 {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Points per decade used by [`minimize_log_scan`] to bracket the minimum.
pub const SCAN_POINTS_PER_DECADE: usize = 60;

/// Minimizes `f(r)` over `r in [r_lo, r_hi]`: log-spaced scan, then
/// golden-section in `ln r` around the best scan point. Returns `(r, f(r))`.
pub fn minimize_log_scan<F: Fn(f64) -> f64>(f: F, r_lo: f64, r_hi: f64) -> (f64, f64) {
    let (l0, l1) = (r_lo.ln(), r_hi.ln());
    let decades = (r_hi / r_lo).log10().max(1.0);
    let n = (decades * SCAN_POINTS_PER_DECADE as f64).ceil() as usize;
    let step = (l1 - l0) / n as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=n {
        let v = f((l0 + step * i as f64).exp());
        if v < best.1 {
            best = (i, v);
        }
    }
    let lo = l0 + step * best.0.saturating_sub(1) as f64;
    let hi = l0 + step * (best.0 + 1).min(n) as f64;
    let (x, v) = golden_section(|x| f(x.exp()), lo, hi, 1e-12);
    if v <= best.1 {
        (x.exp(), v)
    } else {
        ((l0 + step * best.0 as f64).exp(), best.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parabola() {
        let (x, v) = golden_section(|x| (x - 1.3) * (x - 1.3) + 0.5, -4.0, 7.0, 1e-12);
        assert_abs_diff_eq!(x, 1.3, epsilon = 1e-7);
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn coulomb_kinetic_potential() {
        // min 1/r^2 - 1/r = -1/4 at r = 2
        let (r, v) = minimize_log_scan(|r| 1.0 / (r * r) - 1.0 / r, 1e-6, 1e6);
        assert_abs_diff_eq!(r, 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(v, -0.25, epsilon = 1e-14);
    }
}
