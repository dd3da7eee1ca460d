//! Closed-form solutions of the Schrödinger equation for the well.
//!
//! A fundamental solution is
//!
//! ```text
//! ψ_F(x) = x^(-7/6) e^(-(√(2a)-z)²/2) u(x),        z = √(3ε) x^(2/3),
//! u(x)   = (√(2a)(1-2z²) - z(3-2z²)) H_{a+1/2}(√(2a)-z)
//!          - (1-z²) H_{a+3/2}(√(2a)-z),
//! ```
//!
//! and the second, independent solution is the same expression after
//! ε → -ε, a → -a with all square roots on the principal branch (the
//! mirror branch). Derivatives are taken analytically through
//! H'_ν = 2ν H_{ν-1} and the chain rule in z(x), so the residual check
//! below measures formula error, not finite-difference truncation.

use num_complex::Complex64;
use thiserror::Error;

use crate::potential::{potential_value, spectral_params, PhysicalParams, SpectralParams};
use crate::specfun::{hermite_nu, kummer_1f1, recip_gamma, SpecFunError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("boundary-ratio denominator vanished (|den| < 1e-14); degenerate or spurious a")]
    DenominatorZero,
}

impl From<crate::potential::PotentialError> for ClosedFormError {
    fn from(e: crate::potential::PotentialError) -> Self {
        ClosedFormError::Domain(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Principal,
    /// ε → -ε, a → -a applied throughout.
    Mirror,
}

/// Everything needed to evaluate one fundamental solution.
#[derive(Debug, Clone, Copy)]
pub struct SolutionContext {
    pub params: PhysicalParams,
    pub energy: f64,
    pub spectral: SpectralParams,
    pub branch: Branch,
}

impl SolutionContext {
    pub fn new(
        params: PhysicalParams,
        energy: f64,
        branch: Branch,
    ) -> Result<SolutionContext, ClosedFormError> {
        if branch == Branch::Principal && !(params.v1 > 0.0 && energy > params.v0) {
            return Err(ClosedFormError::Domain(format!(
                "principal branch needs V1 > 0 and E > V0 (V1 = {}, E = {}, V0 = {})",
                params.v1, energy, params.v0
            )));
        }
        let spectral = spectral_params(&params, energy)?;
        Ok(SolutionContext {
            params,
            energy,
            spectral,
            branch,
        })
    }

    fn sign(&self) -> f64 {
        match self.branch {
            Branch::Principal => 1.0,
            Branch::Mirror => -1.0,
        }
    }

    /// √(3ε) with the branch sign inside the root (principal square root).
    fn sqrt_3eps(&self) -> Complex64 {
        Complex64::new(3.0 * self.sign() * self.spectral.epsilon, 0.0).sqrt()
    }

    /// √(2a) with the branch sign inside the root.
    fn sqrt_2a(&self) -> Complex64 {
        Complex64::new(2.0 * self.sign() * self.spectral.a, 0.0).sqrt()
    }

    /// Signed order parameter ã (= a or -a).
    fn a_signed(&self) -> f64 {
        self.sign() * self.spectral.a
    }

    fn z(&self, x: f64) -> Complex64 {
        self.sqrt_3eps() * x.powf(2.0 / 3.0)
    }
}

/// z = √(3ε) x^(2/3) on the principal branch.
pub fn z_of_x(s: &SpectralParams, x: f64) -> Result<f64, ClosedFormError> {
    if !(x > 0.0) {
        return Err(ClosedFormError::Domain(format!(
            "z_of_x needs x > 0, got {x}"
        )));
    }
    Ok((3.0 * s.epsilon).sqrt() * x.powf(2.0 / 3.0))
}

/// Value of ψ_F and its first two x-derivatives.
#[derive(Debug, Clone, Copy)]
pub struct SolutionValue {
    pub psi: Complex64,
    pub dpsi: Complex64,
    pub d2psi: Complex64,
}

/// ψ_F(x) on the requested branch.
pub fn fundamental_solution(ctx: &SolutionContext, x: f64) -> Result<Complex64, ClosedFormError> {
    Ok(fundamental_solution_with_derivatives(ctx, x)?.psi)
}

/// ψ_F, ψ_F' and ψ_F'' assembled from four Hermite evaluations of orders
/// ã - 3/2 .. ã + 3/2.
pub fn fundamental_solution_with_derivatives(
    ctx: &SolutionContext,
    x: f64,
) -> Result<SolutionValue, ClosedFormError> {
    if !(x > 0.0) {
        return Err(ClosedFormError::Domain(format!(
            "fundamental solution needs x > 0, got {x}"
        )));
    }
    let a = ctx.a_signed();
    let s = ctx.sqrt_2a();
    let z = ctx.z(x);
    let w = s - z;

    let nu1 = Complex64::new(a + 0.5, 0.0);
    let nu2 = Complex64::new(a + 1.5, 0.0);
    // Orders ν₁-2, ν₁-1, ν₁, ν₂ cover every H needed by u, u', u''.
    let h_mm = hermite_nu(nu1 - 2.0, w)?.value;
    let h_m = hermite_nu(nu1 - 1.0, w)?.value;
    let h1 = hermite_nu(nu1, w)?.value;
    let h2 = hermite_nu(nu2, w)?.value;

    // dH_ν/dw = 2ν H_{ν-1}, d²H_ν/dw² = 4ν(ν-1) H_{ν-2}.
    let dh1 = 2.0 * nu1 * h_m;
    let d2h1 = 4.0 * nu1 * (nu1 - 1.0) * h_mm;
    let dh2 = 2.0 * nu2 * h1;
    let d2h2 = 4.0 * nu2 * (nu2 - 1.0) * h_m;

    // Chain-rule pieces through z(x) = √(3ε̃) x^(2/3).
    let zp = 2.0 / 3.0 * z / x;
    let zpp = -(2.0 / 9.0) * z / (x * x);
    let wp = -zp;
    let wpp = -zpp;

    // Polynomial coefficients of u in z, and their z-derivatives.
    let big_a = s * (1.0 - 2.0 * z * z) - z * (3.0 - 2.0 * z * z);
    let big_a_dz = -4.0 * s * z - 3.0 + 6.0 * z * z;
    let big_a_dzz = -4.0 * s + 12.0 * z;
    let big_b = -(1.0 - z * z);
    let big_b_dz = 2.0 * z;
    let big_b_dzz = Complex64::new(2.0, 0.0);

    let u = big_a * h1 + big_b * h2;
    let du = big_a_dz * zp * h1 + big_a * dh1 * wp + big_b_dz * zp * h2 + big_b * dh2 * wp;
    let d2u = big_a_dzz * zp * zp * h1
        + big_a_dz * zpp * h1
        + 2.0 * big_a_dz * zp * dh1 * wp
        + big_a * (d2h1 * wp * wp + dh1 * wpp)
        + big_b_dzz * zp * zp * h2
        + big_b_dz * zpp * h2
        + 2.0 * big_b_dz * zp * dh2 * wp
        + big_b * (d2h2 * wp * wp + dh2 * wpp);

    // Prefactors P = x^(-7/6) and G = e^(-w²/2).
    let p = x.powf(-7.0 / 6.0);
    let dp = -7.0 / 6.0 * p / x;
    let d2p = 91.0 / 36.0 * p / (x * x);
    let g = (-w * w / 2.0).exp();
    let dg = -w * wp * g;
    let d2g = (w * w * wp * wp - wp * wp - w * wpp) * g;

    let psi = p * g * u;
    let dpsi = dp * g * u + p * dg * u + p * g * du;
    let d2psi =
        d2p * g * u + p * d2g * u + p * g * d2u + 2.0 * (dp * dg * u + dp * g * du + p * dg * du);
    Ok(SolutionValue { psi, dpsi, d2psi })
}

/// Same ψ_F, but with every Hermite function expanded into its two-Kummer
/// representation in place. Exists as an independently assembled route for
/// cross-checking the Hermite form.
pub fn fundamental_solution_kummer_form(
    ctx: &SolutionContext,
    x: f64,
) -> Result<Complex64, ClosedFormError> {
    if !(x > 0.0) {
        return Err(ClosedFormError::Domain(format!(
            "fundamental solution needs x > 0, got {x}"
        )));
    }
    let a = ctx.a_signed();
    let s = ctx.sqrt_2a();
    let z = ctx.z(x);
    let w = s - z;

    let hermite_via_kummer = |nu: f64| -> Result<Complex64, ClosedFormError> {
        let nu = Complex64::new(nu, 0.0);
        let w2 = w * w;
        let rg_even = recip_gamma((1.0 - nu) / 2.0);
        let rg_odd = recip_gamma(-nu / 2.0);
        let even = if rg_even.norm() != 0.0 {
            rg_even * kummer_1f1(-nu / 2.0, Complex64::new(0.5, 0.0), w2)?.value
        } else {
            Complex64::new(0.0, 0.0)
        };
        let odd = if rg_odd.norm() != 0.0 {
            2.0 * w * rg_odd * kummer_1f1((1.0 - nu) / 2.0, Complex64::new(1.5, 0.0), w2)?.value
        } else {
            Complex64::new(0.0, 0.0)
        };
        Ok(std::f64::consts::PI.sqrt() * (nu * std::f64::consts::LN_2).exp() * (even - odd))
    };

    let h1 = hermite_via_kummer(a + 0.5)?;
    let h2 = hermite_via_kummer(a + 1.5)?;
    let u = (s * (1.0 - 2.0 * z * z) - z * (3.0 - 2.0 * z * z)) * h1 - (1.0 - z * z) * h2;
    Ok(x.powf(-7.0 / 6.0) * (-w * w / 2.0).exp() * u)
}

/// A linear combination C₁ ψ_F + C₂ ψ_F|mirror at fixed energy.
#[derive(Debug, Clone, Copy)]
pub struct GeneralSolution {
    pub c1: Complex64,
    pub c2: Complex64,
    pub principal: SolutionContext,
    pub mirror: SolutionContext,
}

impl GeneralSolution {
    pub fn new(
        params: PhysicalParams,
        energy: f64,
        c1: Complex64,
        c2: Complex64,
    ) -> Result<GeneralSolution, ClosedFormError> {
        Ok(GeneralSolution {
            c1,
            c2,
            principal: SolutionContext::new(params, energy, Branch::Principal)?,
            mirror: SolutionContext::new(params, energy, Branch::Mirror)?,
        })
    }

    pub fn value(&self, x: f64) -> Result<Complex64, ClosedFormError> {
        Ok(self.with_derivatives(x)?.psi)
    }

    pub fn with_derivatives(&self, x: f64) -> Result<SolutionValue, ClosedFormError> {
        let p = fundamental_solution_with_derivatives(&self.principal, x)?;
        let m = fundamental_solution_with_derivatives(&self.mirror, x)?;
        Ok(SolutionValue {
            psi: self.c1 * p.psi + self.c2 * m.psi,
            dpsi: self.c1 * p.dpsi + self.c2 * m.dpsi,
            d2psi: self.c1 * p.d2psi + self.c2 * m.d2psi,
        })
    }
}

/// General solution ψ(x) = C₁ ψ_F + C₂ ψ_F|mirror.
pub fn general_solution(g: &GeneralSolution, x: f64) -> Result<Complex64, ClosedFormError> {
    g.value(x)
}

/// The coefficient ratio C₂/C₁ that makes the combination vanish at the
/// origin:
///
/// ```text
/// C₂/C₁ = -e^(-2a) [√(2a) H_{a+1/2}(√(2a)) - H_{a+3/2}(√(2a))]
///                / [√(-2a) H_{-a+1/2}(√(-2a)) - H_{-a+3/2}(√(-2a))]
/// ```
pub fn boundary_coefficient_ratio(ctx: &SolutionContext) -> Result<Complex64, ClosedFormError> {
    let a = ctx.spectral.a;
    if !(a > 0.0) {
        return Err(ClosedFormError::Domain(format!(
            "boundary ratio needs a > 0, got {a}"
        )));
    }
    let s = Complex64::new(2.0 * a, 0.0).sqrt();
    let sm = Complex64::new(-2.0 * a, 0.0).sqrt();
    let num = s * hermite_nu(Complex64::new(a + 0.5, 0.0), s)?.value
        - hermite_nu(Complex64::new(a + 1.5, 0.0), s)?.value;
    let den = sm * hermite_nu(Complex64::new(-a + 0.5, 0.0), sm)?.value
        - hermite_nu(Complex64::new(-a + 1.5, 0.0), sm)?.value;
    if den.norm() < 1e-14 {
        return Err(ClosedFormError::DenominatorZero);
    }
    Ok(-(-2.0 * a).exp() * num / den)
}

/// Maximum scaled Schrödinger residual |ψ'' + (2m/ħ²)(E - V)ψ| over the
/// grid, with ψ'' from the analytic Hermite derivative identities.
pub fn ode_residual(g: &GeneralSolution, grid: &[f64]) -> Result<f64, ClosedFormError> {
    if grid.len() < 3 {
        return Err(ClosedFormError::Domain(
            "residual grid needs at least 3 points".into(),
        ));
    }
    let p = &g.principal.params;
    let c2 = p.two_m_over_hbar2();
    let e = g.principal.energy;
    let mut worst = 0.0_f64;
    for &x in grid {
        if !(x > 0.0) {
            return Err(ClosedFormError::Domain(format!(
                "residual grid point {x} <= 0"
            )));
        }
        let v = potential_value(p, x)?;
        let sv = g.with_derivatives(x)?;
        let resid = (sv.d2psi + c2 * (e - v) * sv.psi).norm();
        worst = worst.max(resid / sv.psi.norm().max(1.0));
    }
    Ok(worst)
}
