//! Bound states of the conditionally integrable Schrödinger potential
//!
//! ```text
//! V(x) = 91 ħ² / (72 m x²) + V₀ + V₁ x^(2/3),      x > 0,
//! ```
//!
//! solved in closed form through non-integer-order Hermite functions.
//! The crate provides
//!
//! - [`specfun`] — complex Gamma, Kummer ₁F₁ and Hermite functions H_ν of
//!   arbitrary (complex) order,
//! - [`potential`] — the potential itself and the energy ↔ (ε, a) maps,
//! - [`closedform`] — the two fundamental solutions, their analytic
//!   derivatives and a direct-substitution residual check,
//! - [`spectrum`] — the exact bound-state condition, its transcendental
//!   approximations and normalized wavefunctions,
//! - [`oracle`] — an independent Numerov shooting eigensolver and a
//!   brute-force ₁F₁ series reference,
//! - [`twostate`] — the nonlinear two-state photo-association system the
//!   potential maps onto, with final-probability models.

// Validations use `!(x > 0.0)` on purpose: unlike `x <= 0.0` it also
// rejects NaN. Series and quadrature constants keep their full published
// digit strings.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod closedform;
pub mod numeric;
pub mod oracle;
pub mod potential;
pub mod specfun;
pub mod spectrum;
pub mod twostate;

pub use num_complex::Complex64;
