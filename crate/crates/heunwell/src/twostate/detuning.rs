//! Detuning ↔ effective-potential correspondence.
//!
//! In the stretched variable the linearized molecular equation takes the
//! normal form ψ'' + (U₀² + δ_z²/4 + i δ_zz/2)ψ = 0: a Schrödinger
//! equation with U₀² acting as the energy and V(z) = -δ_z²/4 - i δ_zz/2
//! as a (complex) potential. The forward map samples that potential from
//! a detuning profile; the inverse solves the Riccati condition for δ_z
//! given a target potential.

use num_complex::Complex64;

use crate::numeric::rk;
use crate::potential::{potential_value, PhysicalParams};

use super::TwoStateError;

/// Forward-map output: complex potential samples plus a differentiation
/// noise figure.
#[derive(Debug, Clone, PartialEq)]
pub struct DetuningPotential {
    pub v: Vec<Complex64>,
    /// Heuristic bound on the numerical-differentiation error of Im V,
    /// from third differences of the input samples.
    pub differentiation_noise: f64,
}

/// V(z) = -δ_z²/4 - i δ_zz/2 from sampled δ_z.
///
/// δ_zz comes from three-point differentiation on the (possibly
/// non-uniform) grid, one-sided at the ends.
pub fn potential_of_detuning(delta_z: &[Complex64], grid: &[f64]) -> DetuningPotential {
    assert_eq!(delta_z.len(), grid.len(), "samples and grid must align");
    assert!(grid.len() >= 3, "need at least 3 samples to differentiate");
    let n = grid.len();
    let ddz = |i: usize| -> Complex64 {
        if i == 0 {
            three_point_deriv(
                grid[0], grid[1], grid[2], delta_z[0], delta_z[1], delta_z[2], grid[0],
            )
        } else if i == n - 1 {
            three_point_deriv(
                grid[n - 3],
                grid[n - 2],
                grid[n - 1],
                delta_z[n - 3],
                delta_z[n - 2],
                delta_z[n - 1],
                grid[n - 1],
            )
        } else {
            three_point_deriv(
                grid[i - 1],
                grid[i],
                grid[i + 1],
                delta_z[i - 1],
                delta_z[i],
                delta_z[i + 1],
                grid[i],
            )
        }
    };
    let mut v = Vec::with_capacity(n);
    for (i, &dz) in delta_z.iter().enumerate() {
        v.push(-dz * dz / 4.0 - Complex64::i() * ddz(i) / 2.0);
    }
    // Third differences flag how trustworthy the derivative is.
    let mut noise = 0.0_f64;
    for i in 3..n {
        let d3 = (delta_z[i] - 3.0 * delta_z[i - 1] + 3.0 * delta_z[i - 2] - delta_z[i - 3]).norm();
        let h = (grid[i] - grid[i - 3]) / 3.0;
        noise = noise.max(d3 / (6.0 * h) * 0.5);
    }
    DetuningPotential {
        v,
        differentiation_noise: noise,
    }
}

/// Derivative at `at` of the parabola through three samples.
fn three_point_deriv(
    x0: f64,
    x1: f64,
    x2: f64,
    y0: Complex64,
    y1: Complex64,
    y2: Complex64,
    at: f64,
) -> Complex64 {
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let d012 = (d12 - d01) / (x2 - x0);
    d01 + d012 * (2.0 * at - x0 - x1)
}

/// Solve -w²/4 - i w'/2 = target(z) for w(z) = δ_z(z) along `grid`,
/// starting from `seed` at the first grid point.
pub fn riccati_invert(
    target: impl Fn(f64) -> Complex64,
    grid: &[f64],
    seed: Complex64,
) -> Result<Vec<Complex64>, TwoStateError> {
    if grid.len() < 2 || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(TwoStateError::Domain(
            "grid must be strictly increasing".into(),
        ));
    }
    // w' = i (w²/2 + 2 target).
    let rhs = |z: f64, y: &[f64; 2]| {
        let w = Complex64::new(y[0], y[1]);
        let d = Complex64::i() * (w * w / 2.0 + 2.0 * target(z));
        [d.re, d.im]
    };
    let times: Vec<f64> = grid.to_vec();
    let path = rk::integrate(
        rhs,
        grid[0],
        *grid.last().unwrap(),
        [seed.re, seed.im],
        1e-10,
        &times,
    )
    .map_err(|_| TwoStateError::BlowUp {
        z: *grid.last().unwrap(),
    })?;
    let mut out = Vec::with_capacity(grid.len());
    for (z, y) in path {
        let w = Complex64::new(y[0], y[1]);
        if w.norm() > 1e6 {
            return Err(TwoStateError::BlowUp { z });
        }
        out.push(w);
    }
    Ok(out)
}

/// Detuning profile reproducing the x^(2/3) + centrifugal well, with U₀²
/// as the energy shift:
///
/// ```text
/// -δ_z²/4 - i δ_zz/2 = (2m/ħ²) V(z) - U₀².
/// ```
///
/// The real part of the returned profile is the physical detuning
/// candidate; the imaginary part measures how much of the complex
/// condition the real profile cannot absorb.
pub fn invert_detuning(
    p: &PhysicalParams,
    u0: f64,
    grid: &[f64],
    seed: Complex64,
) -> Result<Vec<Complex64>, TwoStateError> {
    p.validate_confining()
        .map_err(|e| TwoStateError::Domain(e.to_string()))?;
    if !(u0 > 0.0) {
        return Err(TwoStateError::Domain(format!(
            "u0 must be positive, got {u0}"
        )));
    }
    if grid.first().map(|&z| z <= 0.0).unwrap_or(true) {
        return Err(TwoStateError::Domain("grid must start at z > 0".into()));
    }
    let c2 = p.two_m_over_hbar2();
    let target = |z: f64| {
        Complex64::new(
            c2 * potential_value(p, z).expect("z > 0 on grid") - u0 * u0,
            0.0,
        )
    };
    riccati_invert(target, grid, seed)
}

/// WKB fixed-point seed 2√(U₀² - (2m/ħ²)V(z₀)) for [`invert_detuning`]
/// (complex square root, principal branch).
pub fn default_seed(p: &PhysicalParams, u0: f64, z0: f64) -> Result<Complex64, TwoStateError> {
    let c2 = p.two_m_over_hbar2();
    let v = potential_value(p, z0).map_err(|e| TwoStateError::Domain(e.to_string()))?;
    Ok(2.0 * Complex64::new(u0 * u0 - c2 * v, 0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn constant_slope_gives_real_constant_potential() {
        // δ_z = 2c → V = -c², purely real.
        let grid = uniform(0.0, 5.0, 101);
        let c = 1.3;
        let samples: Vec<Complex64> = grid.iter().map(|_| Complex64::new(2.0 * c, 0.0)).collect();
        let pot = potential_of_detuning(&samples, &grid);
        for v in &pot.v {
            assert!((v - Complex64::new(-c * c, 0.0)).norm() < 1e-12);
        }
        assert!(pot.differentiation_noise < 1e-12);
    }

    #[test]
    fn quadratic_phase_symbolic_check() {
        // δ = αz² so δ_z = 2αz: V = -α²z² - iα.
        let alpha = 0.7;
        let grid = uniform(-2.0, 2.0, 161);
        let samples: Vec<Complex64> = grid
            .iter()
            .map(|&z| Complex64::new(2.0 * alpha * z, 0.0))
            .collect();
        let pot = potential_of_detuning(&samples, &grid);
        for (z, v) in grid.iter().zip(&pot.v) {
            let expect = Complex64::new(-alpha * alpha * z * z, -alpha);
            assert!((v - expect).norm() < 1e-9, "at z={z}: {v} vs {expect}");
        }
    }

    #[test]
    fn zero_detuning_gives_zero_potential() {
        let grid = uniform(0.0, 1.0, 11);
        let samples = vec![Complex64::new(0.0, 0.0); grid.len()];
        let pot = potential_of_detuning(&samples, &grid);
        assert!(pot.v.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn constant_target_fixed_point() {
        // Target -c² with seed 2c stays exactly at 2c.
        let c = 0.9;
        let grid = uniform(0.0, 6.0, 301);
        let w = riccati_invert(
            |_| Complex64::new(-c * c, 0.0),
            &grid,
            Complex64::new(2.0 * c, 0.0),
        )
        .unwrap();
        for wi in &w {
            assert!((wi - Complex64::new(2.0 * c, 0.0)).norm() < 1e-9, "{wi}");
        }
    }

    #[test]
    fn forward_map_recovers_riccati_target() {
        // Round trip: invert a smooth target, then push the profile back
        // through the forward map.
        let target = |z: f64| Complex64::new(-1.0 - 0.3 * (z * 0.7).sin(), 0.0);
        let grid = uniform(0.0, 8.0, 801);
        let w = riccati_invert(target, &grid, Complex64::new(2.0, 0.0)).unwrap();
        let pot = potential_of_detuning(&w, &grid);
        let mut worst = 0.0_f64;
        for (i, &z) in grid.iter().enumerate().skip(2).take(grid.len() - 4) {
            worst = worst.max((pot.v[i] - target(z)).norm());
        }
        assert!(worst < 1e-4, "round trip error {worst:.3e}");
    }

    #[test]
    fn well_potential_yields_asymmetric_crossing() {
        let p = PhysicalParams::preset_paper();
        let u0 = 3.0;
        let grid = uniform(0.6, 8.5, 791);
        let seed = default_seed(&p, u0, grid[0]).unwrap();
        let w = invert_detuning(&p, u0, &grid, seed).unwrap();
        let re: Vec<f64> = w.iter().map(|v| v.re).collect();
        let max_re = re.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
        let min_re = re.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
        // The profile comes close to resonance (δ_z ≈ 0) inside the
        // window...
        assert!(
            min_re < 0.2 * max_re,
            "no resonance approach: {min_re} vs {max_re}"
        );
        // ...is markedly left-right asymmetric...
        let half = re.len() / 2;
        let left: f64 = re[..half].iter().sum::<f64>() / half as f64;
        let right: f64 = re[half..].iter().sum::<f64>() / (re.len() - half) as f64;
        assert!(
            (left - right).abs() > 0.1 * max_re,
            "profile looks symmetric: {left} vs {right}"
        );
        // ...and carries a nonzero imaginary residue (the complex part of
        // the condition a real detuning cannot absorb).
        let max_im = w.iter().fold(0.0_f64, |m, v| m.max(v.im.abs()));
        assert!(
            max_im > 1e-3,
            "imaginary diagnostic unexpectedly zero: {max_im:.3e}"
        );
    }

    #[test]
    fn blowup_is_reported() {
        // Starting on the negative imaginary axis of a negative constant
        // target, w = -iy obeys y' = y²/2 + 2c² and reaches the pole in
        // finite z.
        let grid = uniform(0.0, 10.0, 201);
        let res = riccati_invert(
            |_| Complex64::new(-1.0, 0.0),
            &grid,
            Complex64::new(0.0, -0.1),
        );
        assert!(matches!(res, Err(TwoStateError::BlowUp { .. })), "{res:?}");
    }
}
