//! Quadrature on sampled and analytic integrands.

/// Composite Simpson rule on a uniform grid of spacing `h`. An even number
/// of samples closes with Simpson's 3/8 rule on the last three intervals.
pub fn simpson_uniform(y: &[f64], h: f64) -> f64 {
    match y.len() {
        0 | 1 => 0.0,
        2 => 0.5 * h * (y[0] + y[1]),
        3 => h / 3.0 * (y[0] + 4.0 * y[1] + y[2]),
        4 => 3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]),
        n => {
            // odd count: plain Simpson; even count: Simpson then a 3/8 rule on the last 4 points
            let m = if n % 2 == 1 { n } else { n - 3 };
            let mut s = y[0] + y[m - 1];
            for (i, v) in y[1..m - 1].iter().enumerate() {
                s += if i % 2 == 0 { 4.0 * v } else { 2.0 * v };
            }
            let mut total = s * h / 3.0;
            if m != n {
                total += 3.0 * h / 8.0 * (y[n - 4] + 3.0 * y[n - 3] + 3.0 * y[n - 2] + y[n - 1]);
            }
            total
        }
    }
}

/// Running integral `∫_{x_0}^{x_i} y` at every grid point of a uniform grid.
///
/// Even points use Simpson pairs; odd points add the 3-point partial-interval rule.
pub fn cumulative_uniform(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * h * (y[0] + y[1]);
        return out;
    }
    let mut i = 0;
    while i + 2 < n {
        let base = out[i];
        out[i + 1] = base + h / 12.0 * (5.0 * y[i] + 8.0 * y[i + 1] - y[i + 2]);
        out[i + 2] = base + h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        out[i + 1] = out[i] + h / 12.0 * (-y[i - 1] + 8.0 * y[i] + 5.0 * y[i + 1]);
    }
    out
}

/// Simpson estimate on every other sample, for a Richardson-style error check.
pub fn simpson_uniform_halved(y: &[f64], h: f64) -> f64 {
    let coarse: Vec<f64> = y.iter().step_by(2).copied().collect();
    let mut total = simpson_uniform(&coarse, 2.0 * h);
    if y.len().is_multiple_of(2) && y.len() >= 2 {
        // the last fine interval is not covered by the coarse grid
        let n = y.len();
        total += 0.5 * h * (y[n - 2] + y[n - 1]);
    }
    total
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(z) and P_{n-1}(z) by recurrence
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite Gauss-Legendre: `panels` equal panels of `order` nodes each.
pub fn gauss_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + h * (k as f64 + 0.5);
        total += 0.5 * h * x.iter().zip(&w).map(|(xi, wi)| wi * f(mid + 0.5 * h * xi)).sum::<f64>();
    }
    total
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // below rounding level further splits only chase noise
    let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= (15.0 * tol).max(floor) {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
