//! Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4)).

/// Integration failed because the step size underflowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepUnderflow {
    _private: (),
}

impl std::fmt::Display for StepUnderflow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "adaptive step size underflowed")
    }
}

impl std::error::Error for StepUnderflow {}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// 5th-order weights coincide with the last A row; E is (b5 - b4).
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate y' = f(t, y) from `t0` to `t1`, recording the state at every
/// time in `out_times` (which must be increasing and inside [t0, t1]).
///
/// Local error per step is kept at or below `tol` (mixed absolute/relative).
pub fn integrate<const N: usize>(
    mut f: impl FnMut(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    t1: f64,
    y0: [f64; N],
    tol: f64,
    out_times: &[f64],
) -> Result<Vec<(f64, [f64; N])>, StepUnderflow> {
    let span = t1 - t0;
    assert!(span > 0.0, "integration span must be positive");
    let mut out = Vec::with_capacity(out_times.len());
    let mut out_iter = out_times.iter().copied().peekable();

    let mut t = t0;
    let mut y = y0;
    let mut k0 = f(t, &y);
    let mut h = (span * 1e-3).min(span);

    if let Some(&tn) = out_iter.peek() {
        if tn <= t {
            out.push((t, y));
            out_iter.next();
        }
    }

    let h_min = span * 1e-14;
    while t < t1 {
        // Land exactly on the next requested output time.
        let mut h_step = h.min(t1 - t);
        let mut hit_output = false;
        if let Some(&tn) = out_iter.peek() {
            if t + h_step >= tn - 1e-15 * span {
                h_step = tn - t;
                hit_output = true;
            }
        }
        if h_step <= h_min {
            return Err(StepUnderflow { _private: () });
        }

        let mut k = [[0.0; N]; 7];
        k[0] = k0;
        for stage in 0..6 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage + 1) {
                let a = A[stage][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h_step * a * kj[i];
                    }
                }
            }
            k[stage + 1] = f(t + C[stage] * h_step, &ys);
        }
        // 5th-order solution is the stage-6 state; FSAL.
        let mut y_new = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            let b = A[5][j];
            if b != 0.0 {
                for i in 0..N {
                    y_new[i] += h_step * b * kj[i];
                }
            }
        }
        // Error norm.
        let mut err_sq = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h_step;
            let scale = tol * (1.0 + y[i].abs().max(y_new[i].abs()));
            err_sq += (e / scale) * (e / scale);
        }
        let err = (err_sq / N as f64).sqrt();

        if err <= 1.0 {
            t += h_step;
            y = y_new;
            k0 = k[6];
            if hit_output {
                out.push((t, y));
                out_iter.next();
            }
        }
        let factor = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
        h = h_step * factor.clamp(0.2, 5.0);
    }
    Ok(out)
}
