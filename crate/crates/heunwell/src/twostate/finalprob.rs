//! Final transition probability: cubic model and its high-intensity
//! asymptote.

use crate::numeric::golden_min;

use super::{simulate_linear, simulate_nonlinear, PulseConfig, TwoStateAmplitudes, TwoStateError};

/// Physically appropriate root of the cubic model
///
/// ```text
/// p∞² - 2p∞³ = (a₀/U₀²)(p∞ - p_L∞/2),
/// ```
///
/// i.e. the largest real root in [0, 1/2], from the closed-form solution
/// of 2p³ - p² + r p - r q = 0 with r = a₀/U₀², q = p_L∞/2.
pub fn final_probability_cubic(a0_fit: f64, u0: f64, pl_inf: f64) -> Result<f64, TwoStateError> {
    if !(a0_fit > 0.0) || !(u0 > 0.0) {
        return Err(TwoStateError::Domain(format!(
            "need a0 > 0 and u0 > 0, got a0 = {a0_fit}, u0 = {u0}"
        )));
    }
    if !(0.0..=1.0).contains(&pl_inf) {
        return Err(TwoStateError::Domain(format!(
            "pl_inf must be in [0, 1], got {pl_inf}"
        )));
    }
    let r = a0_fit / (u0 * u0);
    let q = pl_inf / 2.0;
    let roots = cubic_real_roots(2.0, -1.0, r, -r * q);
    let best = roots
        .into_iter()
        .filter(|p| (-1e-12..=0.5 + 1e-9).contains(p))
        .fold(f64::NEG_INFINITY, f64::max);
    if best.is_finite() {
        Ok(best.clamp(0.0, 0.5))
    } else {
        Err(TwoStateError::NoPhysicalRoot { r, q })
    }
}

/// High-intensity approximation p∞ ≈ 1/2 - ((2 - p_L∞)/4) √(2a₀/U₀²).
pub fn final_probability_asymptotic(a0_fit: f64, u0: f64, pl_inf: f64) -> f64 {
    0.5 - (2.0 - pl_inf) / 4.0 * (2.0 * a0_fit / (u0 * u0)).sqrt()
}

/// Real roots of ax³ + bx² + cx + d (a ≠ 0) by the trigonometric/Cardano
/// closed form.
fn cubic_real_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    // Depress: x = t - b/(3a);  t³ + pt + q = 0.
    let shift = -b / (3.0 * a);
    let p = (3.0 * a * c - b * b) / (3.0 * a * a);
    let q = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
    let disc = -(4.0 * p * p * p + 27.0 * q * q);
    let mut roots = Vec::with_capacity(3);
    if disc > 0.0 {
        // Three distinct real roots.
        let m = 2.0 * (-p / 3.0).sqrt();
        // Clamp against fp dust at a degenerate (double-root) boundary.
        let theta = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
        for k in 0..3 {
            roots.push(m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift);
        }
    } else {
        // One real root (counting the degenerate case approximately).
        let half_q = q / 2.0;
        let rad = (half_q * half_q + p * p * p / 27.0).sqrt();
        let u = (-half_q + rad).cbrt();
        let v = (-half_q - rad).cbrt();
        roots.push(u + v + shift);
    }
    // Newton polish clears the last few ulps of the closed form.
    for root in &mut roots {
        for _ in 0..3 {
            let f = ((a * *root + b) * *root + c) * *root + d;
            let df = (3.0 * a * *root + 2.0 * b) * *root + c;
            if df != 0.0 {
                *root -= f / df;
            }
        }
    }
    roots
}

/// One point of a saturation sweep over λ = U₀².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub lambda: f64,
    /// Final molecular probability of the full nonlinear run.
    pub p_inf_numeric: f64,
    /// Final probability of the linear counterpart.
    pub p_l_inf: f64,
}

/// Run nonlinear and linear simulations for each λ with the pulse shape
/// of `base` (its u0 is replaced by √λ).
pub fn saturation_sweep(
    base: &PulseConfig,
    lambdas: &[f64],
    tol: f64,
) -> Result<Vec<SweepPoint>, TwoStateError> {
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        if !(lambda > 0.0) {
            return Err(TwoStateError::Domain(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        let pulse = PulseConfig {
            u0: lambda.sqrt(),
            ..*base
        };
        let span = pulse.suggested_span();
        let nonlinear = simulate_nonlinear(&pulse, span, TwoStateAmplitudes::ground(), tol)?;
        let linear = simulate_linear(&pulse, span, tol)?;
        out.push(SweepPoint {
            lambda,
            p_inf_numeric: nonlinear.final_p(),
            p_l_inf: linear.final_p(),
        });
    }
    Ok(out)
}

/// Least-squares fit of the constant a₀ in the cubic model against a
/// numeric sweep (golden-section search on ln a₀).
pub fn fit_a0(sweep: &[SweepPoint]) -> Result<f64, TwoStateError> {
    if sweep.is_empty() {
        return Err(TwoStateError::Domain(
            "cannot fit a0 to an empty sweep".into(),
        ));
    }
    let sse = |ln_a0: f64| -> f64 {
        let a0 = ln_a0.exp();
        let mut acc = 0.0;
        for pt in sweep {
            match final_probability_cubic(a0, pt.lambda.sqrt(), pt.p_l_inf.clamp(0.0, 1.0)) {
                Ok(root) => acc += (root - pt.p_inf_numeric).powi(2),
                Err(_) => acc += 1.0,
            }
        }
        acc
    };
    let best = golden_min(sse, (1e-4_f64).ln(), (1e4_f64).ln(), 1e-10);
    Ok(best.exp())
}
