//! Independent numerical verification.
//!
//! Nothing here shares code with the closed-form pipeline: the eigensolver
//! discretizes the Schrödinger equation directly (Numerov shooting with
//! node counting and a matching determinant), and the ₁F₁ reference is a
//! plain Taylor partial sum. Both exist so the analytic machinery can be
//! checked against something that cannot inherit its mistakes.

mod numerov;

pub use numerov::{
    numerov_eigenfunction, numerov_eigenvalues, shooting_eigenvalues, ShootingProblem,
};

use num_complex::Complex64;
use thiserror::Error;

use crate::specfun::EvalResult;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("eigenvalue {index} not converged: grid doubling moved it by {drift:.3e} (relative)")]
    NotConverged { index: usize, drift: f64 },
    #[error("series tail bound {bound:.3e} exceeds 1e-12 relative after {terms} terms")]
    TailNotSmall { terms: usize, bound: f64 },
    #[error("failed to bracket eigenvalue {index}")]
    BracketFailed { index: usize },
}

/// Grid and boundary setup for the shooting solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n_grid: usize,
    pub boundary: Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    DirichletBoth,
}

impl OracleConfig {
    /// Domain sized for the first `n_max` levels of the given problem:
    /// at least 1.6 times the classical turning point of the highest
    /// requested level, extended until the WKB decay integral
    /// ∫κ dx past the turning point reaches ~7.5 (wall-truncation error
    /// ~e^(-15), safely inside the 1e-6 eigenvalue budget even for low
    /// levels whose turning points sit close in).
    pub fn auto_for(p: &crate::potential::PhysicalParams, n_max: usize) -> Self {
        let e_top = crate::spectrum::approx_level(p, n_max.max(1)).unwrap_or(p.v0 + 1.0);
        let x_max = crate::potential::decay_endpoint(p, e_top, 7.5)
            .max(1.6 * crate::potential::outer_turning_point(p, e_top));
        OracleConfig {
            x_min: 1e-4,
            x_max,
            n_grid: 4001,
            boundary: Boundary::DirichletBoth,
        }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.x_min > 0.0) || !(self.x_max > self.x_min) {
            return Err(OracleError::Domain(format!(
                "need 0 < x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.n_grid < 2000 {
            return Err(OracleError::Domain(format!(
                "n_grid must be >= 2000, got {}",
                self.n_grid
            )));
        }
        Ok(())
    }
}

/// Plain Taylor partial sum for ₁F₁(a; b; z) with a geometric tail bound.
///
/// Test-side reference only; no transforms, no cleverness.
pub fn kummer_series_reference(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    terms: usize,
) -> Result<EvalResult, OracleError> {
    if terms > 2000 {
        return Err(OracleError::Domain(format!(
            "term budget {terms} exceeds 2000"
        )));
    }
    let b_dist = {
        let nearest = b.re.round().min(0.0);
        if b.re > 0.5 {
            f64::INFINITY
        } else {
            ((b.re - nearest).powi(2) + b.im.powi(2)).sqrt()
        }
    };
    if b_dist < 1e-14 {
        return Err(OracleError::Domain(format!(
            "b = {b} is a non-positive integer"
        )));
    }

    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut used = 1;
    for k in 0..terms {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        used = k + 2;
        if term.norm() == 0.0 {
            return Ok(EvalResult {
                value: sum,
                abs_error_estimate: 0.0,
                terms_used: used,
            });
        }
    }
    let kf = terms as f64;
    let ratio = ((a + kf) / (b + kf) * z).norm() / (kf + 1.0);
    if ratio >= 1.0 {
        return Err(OracleError::TailNotSmall {
            terms,
            bound: f64::INFINITY,
        });
    }
    let bound = term.norm() * ratio / (1.0 - ratio);
    if bound > 1e-12 * sum.norm().max(1e-300) {
        return Err(OracleError::TailNotSmall { terms, bound });
    }
    Ok(EvalResult {
        value: sum,
        abs_error_estimate: bound,
        terms_used: used,
    })
}
