//! The conditionally integrable potential and its spectral parameter maps.
//!
//! ```text
//! V(x) = V_cf / x² + V₀ + V₁ x^(2/3),    V_cf = 91 ħ² / (72 m),
//! ```
//!
//! defined on x > 0. The centrifugal strength is pinned to 91/72: that is
//! the integrability condition, giving effective angular momentum l = 7/6
//! (l(l+1) = 91/36) and Maslov index (2l-1)/4 = 1/3.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational centrifugal coefficient 91/72, converted once.
pub const CENTRIFUGAL_NUM: f64 = 91.0;
pub const CENTRIFUGAL_DEN: f64 = 72.0;

/// Effective angular momentum l with l(l+1) = 91/36.
pub const EFFECTIVE_L: f64 = 7.0 / 6.0;

/// Maslov correction index (2l - 1)/4.
pub const MASLOV_INDEX: f64 = 1.0 / 3.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// One problem instance: particle mass, ħ and the potential strengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub m: f64,
    pub hbar: f64,
    pub v0: f64,
    pub v1: f64,
}

impl PhysicalParams {
    /// The reference preset m = ħ = 1, V₀ = 0, V₁ = 1 used throughout the
    /// documentation and tests.
    pub fn preset_paper() -> Self {
        PhysicalParams {
            m: 1.0,
            hbar: 1.0,
            v0: 0.0,
            v1: 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        if !(self.m > 0.0) || !self.m.is_finite() {
            return Err(PotentialError::Domain(format!(
                "mass must be positive, got {}",
                self.m
            )));
        }
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return Err(PotentialError::Domain(format!(
                "hbar must be positive, got {}",
                self.hbar
            )));
        }
        if !self.v0.is_finite() || !self.v1.is_finite() {
            return Err(PotentialError::Domain(
                "potential strengths must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Additionally require a confining well (V₁ > 0), as every
    /// bound-state operation does.
    pub fn validate_confining(&self) -> Result<(), PotentialError> {
        self.validate()?;
        if !(self.v1 > 0.0) {
            return Err(PotentialError::Domain(format!(
                "bound states need v1 > 0, got {}",
                self.v1
            )));
        }
        Ok(())
    }

    /// Centrifugal strength V_cf = 91 ħ² / (72 m).
    pub fn centrifugal_strength(&self) -> f64 {
        CENTRIFUGAL_NUM / CENTRIFUGAL_DEN * self.hbar * self.hbar / self.m
    }

    /// The Schrödinger coefficient 2m/ħ².
    pub fn two_m_over_hbar2(&self) -> f64 {
        2.0 * self.m / (self.hbar * self.hbar)
    }
}

/// The derived pair (ε, a) linking energy to the special-function
/// arguments: ε = √(mV₁ / 2ħ²), a = 3m²(E-V₀)² / (32 ħ⁴ ε³).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub epsilon: f64,
    pub a: f64,
}

/// V(x) for x > 0.
pub fn potential_value(p: &PhysicalParams, x: f64) -> Result<f64, PotentialError> {
    p.validate()?;
    if !(x > 0.0) {
        return Err(PotentialError::Domain(format!(
            "potential needs x > 0, got {x}"
        )));
    }
    Ok(p.centrifugal_strength() / (x * x) + p.v0 + p.v1 * x.powf(2.0 / 3.0))
}

/// Map an energy to (ε, a).
pub fn spectral_params(p: &PhysicalParams, e: f64) -> Result<SpectralParams, PotentialError> {
    p.validate_confining()?;
    let epsilon = (p.m * p.v1 / (2.0 * p.hbar * p.hbar)).sqrt();
    let de = e - p.v0;
    let a = 3.0 * p.m * p.m * de * de / (32.0 * p.hbar.powi(4) * epsilon.powi(3));
    Ok(SpectralParams { epsilon, a })
}

/// Classical outer turning point of the well (centrifugal term ignored)
/// at energy `e`.
pub fn outer_turning_point(p: &PhysicalParams, e: f64) -> f64 {
    ((e - p.v0) / p.v1).max(1.0).powf(1.5)
}

/// The x beyond the outer turning point at which the WKB decay integral
/// ∫κ dx reaches `target`, κ = √(2m(V-E))/ħ. The wavefunction density
/// there is down by ~e^(-2·target), which is what domain-truncation and
/// normalization-tail bounds care about.
pub fn decay_endpoint(p: &PhysicalParams, e: f64, target: f64) -> f64 {
    let x_turn = outer_turning_point(p, e);
    let c2 = p.two_m_over_hbar2();
    let kappa = |x: f64| {
        let v = p.centrifugal_strength() / (x * x) + p.v0 + p.v1 * x.powf(2.0 / 3.0);
        (c2 * (v - e)).max(0.0).sqrt()
    };
    let mut x_max = 1.1 * x_turn;
    for _ in 0..120 {
        let n = 256;
        let h = (x_max - x_turn) / n as f64;
        let mut integral = 0.0;
        for i in 0..n {
            integral += kappa(x_turn + (i as f64 + 0.5) * h) * h;
        }
        if integral >= target {
            break;
        }
        x_max *= 1.08;
    }
    x_max
}

/// Invert a → E on the E > V₀ branch: E = V₀ + √(32 ħ⁴ ε³ a / 3m²).
pub fn energy_from_a(p: &PhysicalParams, a: f64) -> Result<f64, PotentialError> {
    p.validate_confining()?;
    if a < 0.0 {
        return Err(PotentialError::Domain(format!(
            "energy_from_a needs a >= 0, got {a}"
        )));
    }
    let epsilon = (p.m * p.v1 / (2.0 * p.hbar * p.hbar)).sqrt();
    Ok(p.v0 + (32.0 * p.hbar.powi(4) * epsilon.powi(3) * a / (3.0 * p.m * p.m)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::golden_min;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn direct_substitution_values() {
        let p = PhysicalParams::preset_paper();
        let v = potential_value(&p, 1.0).unwrap();
        assert!(close(v, 91.0 / 72.0 + 1.0, 1e-15), "{v}");

        let p2 = PhysicalParams {
            m: 1.0,
            hbar: 1.0,
            v0: 5.0,
            v1: 0.0,
        };
        let v = potential_value(&p2, 2.0).unwrap();
        assert!(close(v, 5.0 + 91.0 / 288.0, 1e-15), "{v}");
    }

    #[test]
    fn argmin_matches_stationarity_condition() {
        // dV/dx = 0 at x^(8/3) = (91/72)·2·(3/2) = 91/24, so
        // x_min = (91/24)^(3/8). Cross-check with 1-D golden search.
        let p = PhysicalParams::preset_paper();
        let x_analytic = (91.0_f64 / 24.0).powf(3.0 / 8.0);
        let x_numeric = golden_min(|x| potential_value(&p, x).unwrap(), 0.1, 10.0, 1e-10);
        assert!(
            close(x_numeric, x_analytic, 1e-7),
            "{x_numeric} vs {x_analytic}"
        );
    }

    #[test]
    fn spectral_map_examples() {
        let p = PhysicalParams::preset_paper();
        let s = spectral_params(&p, 2.0).unwrap();
        assert!(close(s.epsilon, (0.5_f64).sqrt(), 1e-15));
        assert!(
            close(s.a, 12.0 / (32.0 * 0.5_f64.sqrt().powi(3)), 1e-14),
            "a = {}",
            s.a
        );
        // Explicit value from the parameter map.
        assert!(close(s.a, 1.0606602, 1e-7), "a = {}", s.a);

        let s0 = spectral_params(&p, p.v0).unwrap();
        assert_eq!(s0.a, 0.0);
    }

    #[test]
    fn energy_inverse() {
        let p = PhysicalParams {
            m: 2.0,
            hbar: 0.7,
            v0: -1.0,
            v1: 3.0,
        };
        assert_eq!(energy_from_a(&p, 0.0).unwrap(), p.v0);
        let e = energy_from_a(&p, 1.0606602).unwrap();
        let back = spectral_params(&p, e).unwrap().a;
        assert!(close(back, 1.0606602, 1e-12));

        let paper = PhysicalParams::preset_paper();
        let e = energy_from_a(&paper, 1.0606602).unwrap();
        assert!(close(e, 2.0, 1e-7), "E = {e}");
    }

    #[test]
    fn domain_errors() {
        let p = PhysicalParams::preset_paper();
        assert!(potential_value(&p, 0.0).is_err());
        assert!(potential_value(&p, -1.0).is_err());
        assert!(energy_from_a(&p, -0.5).is_err());
        let flat = PhysicalParams { v1: 0.0, ..p };
        assert!(spectral_params(&flat, 1.0).is_err());
    }

    #[test]
    fn angular_momentum_and_maslov_identities() {
        assert!((EFFECTIVE_L * (EFFECTIVE_L + 1.0) - 91.0 / 36.0).abs() < 1e-15);
        assert!(((2.0 * EFFECTIVE_L - 1.0) / 4.0 - MASLOV_INDEX).abs() < 1e-16);
    }

    #[test]
    fn confinement_at_both_ends() {
        let p = PhysicalParams::preset_paper();
        assert!(potential_value(&p, 1e-8).unwrap() > 1e10);
        assert!(potential_value(&p, 1e9).unwrap() > 1e5);
    }

    #[test]
    fn a_is_monotone_in_energy_above_v0() {
        let p = PhysicalParams {
            m: 1.3,
            hbar: 0.9,
            v0: 2.0,
            v1: 0.8,
        };
        let mut prev = spectral_params(&p, p.v0).unwrap().a;
        for i in 1..200 {
            let e = p.v0 + 0.05 * i as f64;
            let a = spectral_params(&p, e).unwrap().a;
            assert!(a > prev, "a must increase with E");
            prev = a;
        }
    }
}
