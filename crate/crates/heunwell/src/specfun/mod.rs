//! Special functions: complex Gamma, Kummer ₁F₁ and non-integer-order
//! Hermite functions.
//!
//! All evaluations return an [`EvalResult`] carrying the value together
//! with a truncation-error bound and the number of series terms consumed.
//! Everything here is pure and re-entrant.

mod gamma;
mod hermite;
mod kummer;

pub use gamma::{gamma, recip_gamma};
pub use hermite::{hermite_nu, hermite_nu_derivative};
pub use kummer::kummer_1f1;

use num_complex::Complex64;
use thiserror::Error;

/// Value of a special-function evaluation plus error diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    /// Upper bound on the truncation error of the chosen series branch.
    pub abs_error_estimate: f64,
    pub terms_used: usize,
}

impl EvalResult {
    pub(crate) fn exact(value: Complex64) -> Self {
        EvalResult {
            value,
            abs_error_estimate: 0.0,
            terms_used: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    /// Gamma evaluated at (or within 1e-14 of) a non-positive integer.
    #[error("gamma pole at non-positive integer near z = {re} + {im}i")]
    Pole { re: f64, im: f64 },
    /// ₁F₁ with b a non-positive integer: the series is undefined.
    #[error("degenerate Kummer parameter b near non-positive integer ({re} + {im}i)")]
    DegenerateB { re: f64, im: f64 },
    /// The series did not meet its error target within the term budget.
    #[error("no convergence after {terms} terms (error estimate {estimate:.3e})")]
    NoConvergence { terms: usize, estimate: f64 },
}

/// Distance from `z` to the nearest non-positive integer.
pub(crate) fn distance_to_nonpositive_integer(z: Complex64) -> f64 {
    if z.re > 0.5 {
        return f64::INFINITY;
    }
    let nearest = z.re.round().min(0.0);
    ((z.re - nearest).powi(2) + z.im.powi(2)).sqrt()
}
