//! Bound-state spectrum: the exact transcendental condition, its
//! approximations, and normalized wavefunctions.
//!
//! Bound states require the wavefunction to vanish at both ends of the
//! half-line. Vanishing at the origin fixes C₂/C₁; vanishing at infinity
//! then demands
//!
//! ```text
//! √(2a) H_{a+1/2}(-√(2a)) + H_{a+3/2}(-√(2a)) = 0,
//! ```
//!
//! whose roots a₁ < a₂ < ... map to energies through E = V₀ + √(32ħ⁴ε³a/3m²).
//! The smallest root a = 1/2 is excluded: its matched wavefunction is
//! identically zero. An equivalent form of the condition, obtained with
//! the recurrence H_{ν+1} = 2z H_ν - 2ν H_{ν-1}, trades H_{a+3/2} for
//! H_{a-1/2}; an auxiliary function F built from that form admits a
//! sine-ratio approximation whose constant B₀ = Γ(1/3)/(6·∛3·Γ(2/3)) the
//! original analysis rounds to 1/5. Both variants are kept.

use num_complex::Complex64;
use thiserror::Error;

use crate::closedform::{
    boundary_coefficient_ratio, Branch, ClosedFormError, GeneralSolution, SolutionContext,
};
use crate::numeric::{quad::simpson_nonuniform, roots};
use crate::potential::{energy_from_a, PhysicalParams, PotentialError};
use crate::specfun::{gamma, hermite_nu, SpecFunError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error("failed to bracket root {index} in [{lo}, {hi}]")]
    RootNotFound { index: usize, lo: f64, hi: f64 },
    #[error("auxiliary function denominator vanished at a = {0}")]
    DenominatorZero(f64),
    #[error("sine-ratio approximation evaluated at a pole (a = {0})")]
    ApproxPole(f64),
    #[error("normalization tail estimate {tail:.3e} exceeds 1e-6 of the total {total:.3e}")]
    Normalization { tail: f64, total: f64 },
}

impl From<PotentialError> for SpectrumError {
    fn from(e: PotentialError) -> Self {
        SpectrumError::Domain(e.to_string())
    }
}

/// One bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub n: usize,
    pub a_exact: f64,
    pub e_exact: f64,
    pub e_approx14: f64,
    pub e_semiclassical: f64,
}

/// Sampled normalized wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionTable {
    pub x: Vec<f64>,
    pub psi: Vec<f64>,
    /// Quadrature re-estimate of ∫ψ² dx after normalization.
    pub norm: f64,
}

impl WavefunctionTable {
    /// Interior sign changes, ignoring samples below 1e-8 of the peak.
    pub fn interior_nodes(&self) -> usize {
        let max = self.psi.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
        let mut nodes = 0;
        let mut prev = 0.0_f64;
        for &v in &self.psi {
            if v.abs() > 1e-8 * max {
                if prev != 0.0 && v.signum() != prev.signum() {
                    nodes += 1;
                }
                prev = v;
            }
        }
        nodes
    }
}

fn hermite_real(order: f64, z: f64) -> Result<f64, SpecFunError> {
    Ok(
        hermite_nu(Complex64::new(order, 0.0), Complex64::new(z, 0.0))?
            .value
            .re,
    )
}

/// Left-hand side of the exact spectrum condition
/// √(2a) H_{a+1/2}(-√(2a)) + H_{a+3/2}(-√(2a)).
pub fn spectrum_fn_exact(a: f64) -> Result<f64, SpectrumError> {
    if !(a > 0.0) {
        return Err(SpectrumError::Domain(format!(
            "spectrum function needs a > 0, got {a}"
        )));
    }
    let s = (2.0 * a).sqrt();
    Ok(s * hermite_real(a + 0.5, -s)? + hermite_real(a + 1.5, -s)?)
}

/// The recurrence-rewritten equivalent form
/// (1+2a) H_{a-1/2}(-√(2a)) + √(2a) H_{a+1/2}(-√(2a)).
pub fn spectrum_fn_equivalent(a: f64) -> Result<f64, SpectrumError> {
    if !(a > 0.0) {
        return Err(SpectrumError::Domain(format!(
            "spectrum function needs a > 0, got {a}"
        )));
    }
    let s = (2.0 * a).sqrt();
    Ok((1.0 + 2.0 * a) * hermite_real(a - 0.5, -s)? + s * hermite_real(a + 0.5, -s)?)
}

/// Auxiliary function F(a) = 1 + √(2a) H_{a+1/2}(-√(2a))
/// / ((1+2a) H_{a-1/2}(-√(2a))); zero exactly at spectrum roots.
pub fn auxiliary_f(a: f64) -> Result<f64, SpectrumError> {
    if !(a > 0.0) {
        return Err(SpectrumError::Domain(format!(
            "auxiliary F needs a > 0, got {a}"
        )));
    }
    let s = (2.0 * a).sqrt();
    let num = s * hermite_real(a + 0.5, -s)?;
    let den = (1.0 + 2.0 * a) * hermite_real(a - 0.5, -s)?;
    if den.abs() < 1e-12 * num.abs().max(1.0) {
        return Err(SpectrumError::DenominatorZero(a));
    }
    Ok(1.0 + num / den)
}

/// Which value of the constant B₀ to use in the sine-ratio approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum B0Variant {
    /// B₀ = Γ(1/3) / (6 ∛3 Γ(2/3)) ≈ 0.22862.
    Exact,
    /// The rounded 1/5 that the original analysis carries into its
    /// transcendental form (3/5 in the numerator there).
    PaperRounded,
}

impl B0Variant {
    pub fn value(self) -> f64 {
        match self {
            B0Variant::Exact => b0_exact(),
            B0Variant::PaperRounded => 0.2,
        }
    }
}

/// B₀ = Γ(1/3) / (6 ∛3 Γ(2/3)).
pub fn b0_exact() -> f64 {
    let g13 = gamma(Complex64::new(1.0 / 3.0, 0.0))
        .expect("1/3 is not a pole")
        .value
        .re;
    let g23 = gamma(Complex64::new(2.0 / 3.0, 0.0))
        .expect("2/3 is not a pole")
        .value
        .re;
    g13 / (6.0 * 3.0_f64.cbrt() * g23)
}

/// Sine-ratio approximation of F:
/// (a^(2/3) / (3(1+2a)B₀)) (3B₀/a^(2/3) - sin(πa - π/3)/sin(πa + π/3)).
pub fn approx_f(a: f64, variant: B0Variant) -> Result<f64, SpectrumError> {
    if !(a > 0.0) {
        return Err(SpectrumError::Domain(format!(
            "approximate F needs a > 0, got {a}"
        )));
    }
    let pi = std::f64::consts::PI;
    let den = (pi * a + pi / 3.0).sin();
    if den.abs() < 1e-8 {
        return Err(SpectrumError::ApproxPole(a));
    }
    let b0 = variant.value();
    let a23 = a.powf(2.0 / 3.0);
    let ratio = (pi * a - pi / 3.0).sin() / den;
    Ok(a23 / (3.0 * (1.0 + 2.0 * a) * b0) * (3.0 * b0 / a23 - ratio))
}

/// Closed-form approximate level
/// E_n ≈ (128 ħ² V₁³ / 9m)^(1/4) (n + 1/3 + (1/6)/(n+1/3)^(2/3)
///        - (1/20)/(n+1/3)^(4/3))^(1/2) + V₀.
pub fn approx_level(p: &PhysicalParams, n: usize) -> Result<f64, SpectrumError> {
    p.validate_confining()?;
    if n == 0 {
        return Err(SpectrumError::Domain("level index starts at n = 1".into()));
    }
    let t = n as f64 + 1.0 / 3.0;
    let inner = t + (1.0 / 6.0) / t.powf(2.0 / 3.0) - (1.0 / 20.0) / t.powf(4.0 / 3.0);
    Ok(p.v0 + spectrum_prefactor(p) * inner.sqrt())
}

/// Semiclassical level: the same with both correction terms dropped,
/// E_n ~ (n + 1/3)^(1/2) with Maslov index 1/3.
pub fn semiclassical_level(p: &PhysicalParams, n: usize) -> Result<f64, SpectrumError> {
    p.validate_confining()?;
    if n == 0 {
        return Err(SpectrumError::Domain("level index starts at n = 1".into()));
    }
    Ok(p.v0 + spectrum_prefactor(p) * (n as f64 + 1.0 / 3.0).sqrt())
}

/// (128 ħ² V₁³ / 9m)^(1/4).
fn spectrum_prefactor(p: &PhysicalParams) -> f64 {
    (128.0 * p.hbar * p.hbar * p.v1.powi(3) / (9.0 * p.m)).powf(0.25)
}

/// Step used by the bracketing scan over a.
const SCAN_STEP: f64 = 0.05;
/// Roots are refined to this absolute accuracy in a.
const ROOT_TOL: f64 = 1e-12;

/// Roots of the exact spectrum condition on (0.6, hi].
fn scan_roots(hi: f64) -> Result<Vec<f64>, SpectrumError> {
    let mut first_err: Option<SpectrumError> = None;
    let mut eval = |a: f64| match spectrum_fn_exact(a) {
        Ok(v) => v,
        Err(e) => {
            first_err.get_or_insert(e);
            f64::NAN
        }
    };
    let brackets = roots::bracket_scan(&mut eval, 0.6, hi, SCAN_STEP);
    if let Some(e) = first_err {
        return Err(e);
    }
    let mut out = Vec::with_capacity(brackets.len());
    for (lo, hi) in brackets {
        let root = roots::refine_bracket(
            |a| spectrum_fn_exact(a).unwrap_or(f64::NAN),
            lo,
            hi,
            ROOT_TOL,
        );
        // a = 1/2 is a true root of the condition but not a bound state;
        // the scan starts above it, so anything this close is spurious.
        if (root - 0.5).abs() > 1e-6 {
            out.push(root);
        }
    }
    Ok(out)
}

/// The first `n_max` bound states: roots of the exact condition above
/// a = 0.6, refined to |Δa| ≤ 1e-12 and mapped to energies.
pub fn solve_levels_exact(
    p: &PhysicalParams,
    n_max: usize,
) -> Result<Vec<EnergyLevel>, SpectrumError> {
    p.validate_confining()?;
    if n_max == 0 {
        return Err(SpectrumError::Domain("n_max must be at least 1".into()));
    }
    let mut roots_found = scan_roots(n_max as f64 + 1.0)?;
    if roots_found.len() < n_max {
        // One expansion of the scan window before giving up.
        roots_found = scan_roots(n_max as f64 + 2.0)?;
    }
    if roots_found.len() < n_max {
        return Err(SpectrumError::RootNotFound {
            index: roots_found.len() + 1,
            lo: 0.6,
            hi: n_max as f64 + 2.0,
        });
    }
    roots_found.truncate(n_max);
    let mut levels = Vec::with_capacity(n_max);
    for (i, &a) in roots_found.iter().enumerate() {
        let n = i + 1;
        levels.push(EnergyLevel {
            n,
            a_exact: a,
            e_exact: energy_from_a(p, a)?,
            e_approx14: approx_level(p, n)?,
            e_semiclassical: semiclassical_level(p, n)?,
        });
    }
    Ok(levels)
}

/// Matched, phase-rotated, normalized bound-state wavefunction sampled on
/// `grid`. Normalization is grid quadrature plus analytic head/tail
/// bounds; the head uses the x^(13/6) origin behaviour and the tail the
/// local log-derivative at the last grid point.
pub fn bound_state_wavefunction(
    p: &PhysicalParams,
    level: &EnergyLevel,
    grid: &[f64],
) -> Result<WavefunctionTable, SpectrumError> {
    p.validate_confining()?;
    if grid.len() < 8 {
        return Err(SpectrumError::Domain(
            "wavefunction grid needs at least 8 points".into(),
        ));
    }
    if grid.windows(2).any(|w| !(w[0] > 0.0) || w[1] <= w[0]) {
        return Err(SpectrumError::Domain(
            "grid must be positive and strictly increasing".into(),
        ));
    }
    let ctx = SolutionContext::new(*p, level.e_exact, Branch::Principal)?;
    let ratio = boundary_coefficient_ratio(&ctx)?;
    let g = GeneralSolution::new(*p, level.e_exact, Complex64::new(1.0, 0.0), ratio)?;

    let values: Vec<Complex64> = grid.iter().map(|&x| g.value(x)).collect::<Result<_, _>>()?;
    // Rotate the global phase so the table is real.
    let mid = values[grid.len() / 2];
    let phase = if mid.norm() > 0.0 {
        mid / mid.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let psi: Vec<f64> = values.iter().map(|v| (v / phase).re).collect();

    let density: Vec<f64> = psi.iter().map(|&v| v * v).collect();
    let body = simpson_nonuniform(grid, &density);
    // Head: ψ ~ ψ(x₀) (x/x₀)^(13/6) below the grid.
    let head = density[0] * grid[0] * 3.0 / 16.0;
    // Tail: WKB decay rate κ = √(2m(V-E))/ħ at the last point. The grid
    // must reach past the classical turning point for this (and for the
    // table to make sense at all).
    let x_end = *grid.last().unwrap();
    let v_end = crate::potential::potential_value(p, x_end)?;
    if v_end <= level.e_exact {
        return Err(SpectrumError::Domain(format!(
            "grid ends at x = {x_end} inside the classically allowed region (V = {v_end} <= E)"
        )));
    }
    let kappa = (p.two_m_over_hbar2() * (v_end - level.e_exact)).sqrt();
    let tail = density[grid.len() - 1] / (2.0 * kappa);
    let total = body + head + tail;
    if head + tail > 1e-6 * total {
        return Err(SpectrumError::Normalization {
            tail: head + tail,
            total,
        });
    }
    let inv = 1.0 / total.sqrt();
    let psi: Vec<f64> = psi.iter().map(|&v| v * inv).collect();
    let check: Vec<f64> = psi.iter().map(|&v| v * v).collect();
    let norm = simpson_nonuniform(grid, &check) + (head + tail) * inv * inv;
    Ok(WavefunctionTable {
        x: grid.to_vec(),
        psi,
        norm,
    })
}
