//! Quadrature over sampled data.

/// Composite Simpson rule on a possibly non-uniform grid.
///
/// Each point pair is integrated with the quadratic through three
/// neighbouring samples; a trailing odd interval falls back to the same
/// local fit. Reduces to classical Simpson on uniform grids.
pub fn simpson_nonuniform(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
    }
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 < n {
        total += simpson_cell(x[i], x[i + 1], x[i + 2], y[i], y[i + 1], y[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        // One interval left: integrate it under the quadratic through the
        // last three points.
        let (x0, x1, x2) = (x[n - 3], x[n - 2], x[n - 1]);
        let (y0, y1, y2) = (y[n - 3], y[n - 2], y[n - 1]);
        total += quad_through_three(x0, x1, x2, y0, y1, y2, x1, x2);
    }
    total
}

/// Integral of the interpolating quadratic over both subintervals.
fn simpson_cell(x0: f64, x1: f64, x2: f64, y0: f64, y1: f64, y2: f64) -> f64 {
    quad_through_three(x0, x1, x2, y0, y1, y2, x0, x2)
}

/// Integrate the quadratic through (x0,y0),(x1,y1),(x2,y2) over [a, b].
#[allow(clippy::too_many_arguments)]
fn quad_through_three(x0: f64, x1: f64, x2: f64, y0: f64, y1: f64, y2: f64, a: f64, b: f64) -> f64 {
    // Newton divided differences.
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let d012 = (d12 - d01) / (x2 - x0);
    // p(x) = y0 + d01 (x-x0) + d012 (x-x0)(x-x1)
    let int = |t: f64| {
        let u = t - x0;
        y0 * t + d01 * 0.5 * u * u + d012 * (u * u * u / 3.0 - 0.5 * (x1 - x0) * u * u)
    };
    int(b) - int(a)
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, x);
            dp = d;
            let dx = -p / d;
            x += dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// ∫ f over [a, b] with a fixed 24-point Gauss-Legendre rule.
pub fn gauss_panel(f: impl Fn(f64) -> f64, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (&x, &w) in nodes.iter().zip(weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}
