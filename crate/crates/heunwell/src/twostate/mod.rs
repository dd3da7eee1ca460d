//! Nonlinear two-state photo-association dynamics.
//!
//! The semiclassical amplitudes of the atomic and molecular states obey
//!
//! ```text
//! i a₁' = U(t) e^(-iδ(t)) a₁* a₂,
//! i a₂' = (U(t)/2) e^(+iδ(t)) a₁ a₁,
//! ```
//!
//! conserving |a₁|² + 2|a₂|² = 1. The module integrates this system and
//! its linear counterpart, checks the equivalent second-order form and the
//! exact integral identity along trajectories, maps detuning profiles to
//! effective complex potentials (and back), and evaluates the cubic and
//! asymptotic models for the final conversion probability.

mod detuning;
mod finalprob;
mod sim;

pub use detuning::{
    default_seed, invert_detuning, potential_of_detuning, riccati_invert, DetuningPotential,
};
pub use finalprob::{
    final_probability_asymptotic, final_probability_cubic, fit_a0, saturation_sweep, SweepPoint,
};
pub use sim::{
    integral_identity_residual, second_order_residual, simulate_linear, simulate_nonlinear,
};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwoStateError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integration step failure: {0}")]
    StepFailure(String),
    #[error("Riccati detuning inversion escaped |δ_z| > 1e6 near z = {z}")]
    BlowUp { z: f64 },
    #[error("cubic has no real root in [0, 1/2] (r = {r}, q = {q})")]
    NoPhysicalRoot { r: f64, q: f64 },
}

/// Pair of probability amplitudes (atomic, molecular).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStateAmplitudes {
    pub a1: Complex64,
    pub a2: Complex64,
}

impl TwoStateAmplitudes {
    pub fn ground() -> Self {
        TwoStateAmplitudes {
            a1: Complex64::new(1.0, 0.0),
            a2: Complex64::new(0.0, 0.0),
        }
    }

    /// The conserved combination |a₁|² + 2|a₂|².
    pub fn norm_invariant(&self) -> f64 {
        self.a1.norm_sqr() + 2.0 * self.a2.norm_sqr()
    }
}

/// Analytic pulse family. The Rabi envelope is always non-negative and the
/// detuning phase continuously differentiable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseShape {
    /// U = U₀, δ_t = δ₀ (a constant detuning slope; δ₀ = 0 is exact
    /// resonance).
    Constant,
    /// U = U₀ sech(t/τ) with δ_t = δ₀ tanh(t/τ): a finite pulse sweeping
    /// through resonance at t = 0. δ₀ sets the detuning limits δ_t(±∞).
    SechTanh { tau: f64 },
}

/// Peak Rabi frequency, detuning parameter and envelope family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseConfig {
    pub u0: f64,
    pub delta0: f64,
    pub shape: PulseShape,
}

impl PulseConfig {
    pub fn validate(&self) -> Result<(), TwoStateError> {
        if !(self.u0 > 0.0) || !self.u0.is_finite() {
            return Err(TwoStateError::Domain(format!(
                "peak Rabi frequency must be positive, got {}",
                self.u0
            )));
        }
        if !self.delta0.is_finite() {
            return Err(TwoStateError::Domain("delta0 must be finite".into()));
        }
        if let PulseShape::SechTanh { tau } = self.shape {
            if !(tau > 0.0) {
                return Err(TwoStateError::Domain(format!(
                    "pulse width must be positive: {tau}"
                )));
            }
        }
        Ok(())
    }

    /// Rabi frequency U(t).
    pub fn rabi(&self, t: f64) -> f64 {
        match self.shape {
            PulseShape::Constant => self.u0,
            PulseShape::SechTanh { tau } => self.u0 / (t / tau).cosh(),
        }
    }

    /// dU/dt.
    pub fn rabi_dt(&self, t: f64) -> f64 {
        match self.shape {
            PulseShape::Constant => 0.0,
            PulseShape::SechTanh { tau } => {
                let s = t / tau;
                -self.u0 * s.tanh() / (s.cosh() * tau)
            }
        }
    }

    /// Detuning phase δ(t) with δ(0) = 0.
    pub fn detuning_phase(&self, t: f64) -> f64 {
        match self.shape {
            PulseShape::Constant => self.delta0 * t,
            PulseShape::SechTanh { tau } => {
                // ∫ δ₀ tanh(t/τ) dt = δ₀ τ ln cosh(t/τ); written through
                // |t| to stay finite for large arguments.
                let s = t / tau;
                self.delta0 * tau * (s.abs() + (1.0 + (-2.0 * s.abs()).exp()).ln() - 2f64.ln())
            }
        }
    }

    /// Instantaneous detuning δ_t(t).
    pub fn detuning_rate(&self, t: f64) -> f64 {
        match self.shape {
            PulseShape::Constant => self.delta0,
            PulseShape::SechTanh { tau } => self.delta0 * (t / tau).tanh(),
        }
    }

    /// A span on which a finite pulse is numerically supported.
    pub fn suggested_span(&self) -> (f64, f64) {
        match self.shape {
            PulseShape::Constant => (0.0, 10.0 / self.u0),
            PulseShape::SechTanh { tau } => (-14.0 * tau, 14.0 * tau),
        }
    }
}

/// Time series of the amplitudes with conserved-quantity diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStateTrajectory {
    pub t: Vec<f64>,
    pub state: Vec<TwoStateAmplitudes>,
    /// Molecular probability p = |a₂|².
    pub p: Vec<f64>,
    /// The conserved combination at each sample (|a₁|² + 2|a₂|² for the
    /// nonlinear system, |c₁|² + |c₂|² for the linear counterpart).
    pub norm: Vec<f64>,
}

impl TwoStateTrajectory {
    /// Largest deviation of the conserved combination from its initial
    /// value.
    pub fn norm_drift(&self) -> f64 {
        let first = self.norm[0];
        self.norm
            .iter()
            .fold(0.0_f64, |m, &v| m.max((v - first).abs()))
    }

    pub fn final_p(&self) -> f64 {
        *self.p.last().expect("trajectory is never empty")
    }
}
