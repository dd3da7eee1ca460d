//! Kummer confluent hypergeometric function ₁F₁(a; b; z).

use num_complex::Complex64;

use super::{distance_to_nonpositive_integer, EvalResult, SpecFunError};

/// Maximum number of Taylor terms before giving up.
pub(crate) const TERM_BUDGET: usize = 500;
/// Relative truncation target for the running-term bound.
const REL_TARGET: f64 = 1e-13;

/// ₁F₁(a; b; z) by Taylor series with a running-term error bound.
///
/// For Re z < 0 the Kummer transformation ₁F₁(a;b;z) = e^z ₁F₁(b-a;b;-z)
/// is applied first, so the series is always summed on the
/// cancellation-free side. Converges for |z| ≤ 100 with |a|, |b| ≤ 50.
pub fn kummer_1f1(a: Complex64, b: Complex64, z: Complex64) -> Result<EvalResult, SpecFunError> {
    if distance_to_nonpositive_integer(b) < 1e-14 {
        return Err(SpecFunError::DegenerateB { re: b.re, im: b.im });
    }
    if z.re < 0.0 {
        let transformed = taylor_series(b - a, b, -z)?;
        let factor = z.exp();
        return Ok(EvalResult {
            value: factor * transformed.value,
            abs_error_estimate: factor.norm() * transformed.abs_error_estimate,
            terms_used: transformed.terms_used,
        });
    }
    taylor_series(a, b, z)
}

/// Plain Taylor sum Σ (a)_k / (b)_k z^k / k! with tail bound.
fn taylor_series(a: Complex64, b: Complex64, z: Complex64) -> Result<EvalResult, SpecFunError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut max_mag = 1.0_f64;
    for k in 0..TERM_BUDGET {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        max_mag = max_mag.max(term.norm());
        if term.norm() == 0.0 {
            // Terminating (polynomial) case.
            return Ok(EvalResult {
                value: sum,
                abs_error_estimate: rounding_floor(max_mag, k),
                terms_used: k + 2,
            });
        }
        // Bound the remaining tail by a geometric series once the term
        // ratio has dropped below one.
        let ratio = ((a + kf + 1.0) / (b + kf + 1.0) * z).norm() / (kf + 2.0);
        if ratio < 0.5 {
            let tail = term.norm() * ratio / (1.0 - ratio);
            let scale = sum.norm().max(1e-300);
            if tail <= REL_TARGET * scale {
                return Ok(EvalResult {
                    value: sum,
                    abs_error_estimate: tail + rounding_floor(max_mag, k),
                    terms_used: k + 2,
                });
            }
        }
    }
    Err(SpecFunError::NoConvergence {
        terms: TERM_BUDGET,
        estimate: term.norm(),
    })
}

/// Accumulated f64 rounding over the summation, included in the estimate.
fn rounding_floor(max_mag: f64, terms: usize) -> f64 {
    max_mag * f64::EPSILON * (terms as f64 + 1.0)
}
