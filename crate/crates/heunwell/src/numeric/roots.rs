//! Bracketing and refinement of roots of scalar functions.

/// Scan [lo, hi] with the given step and collect sign-change brackets.
///
/// Exact zeros at a sample point are returned as degenerate brackets.
pub fn bracket_scan(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, step: f64) -> Vec<(f64, f64)> {
    let mut brackets = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    let n = ((hi - lo) / step).ceil() as usize;
    for i in 1..=n {
        let x = (lo + i as f64 * step).min(hi);
        let fx = f(x);
        if f_prev == 0.0 {
            brackets.push((x_prev, x_prev));
        } else if f_prev.signum() != fx.signum() && fx.is_finite() && f_prev.is_finite() {
            brackets.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
        if x >= hi {
            break;
        }
    }
    brackets
}

/// Refine a sign-change bracket by bisection, then polish with a few secant
/// steps. Returns the root once the interval (or the secant update) is
/// below `xtol`.
pub fn refine_bracket(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, xtol: f64) -> f64 {
    if a == b {
        return a;
    }
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    debug_assert!(
        flo.signum() != fhi.signum(),
        "refine_bracket needs a sign change"
    );
    // Bisection down to a short interval.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= xtol || mid == lo || mid == hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    // Secant polish inside the final bracket.
    let mut x0 = lo;
    let mut x1 = hi;
    let mut f0 = f(x0);
    let mut f1 = f(x1);
    for _ in 0..8 {
        if (f1 - f0).abs() == 0.0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() || x2 < lo.min(hi) || x2 > lo.max(hi) {
            break;
        }
        if (x2 - x1).abs() <= 0.01 * xtol {
            return x2;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        if f1 == 0.0 {
            return x1;
        }
    }
    0.5 * (lo + hi)
}
