//! Trajectory integration and along-trajectory residual checks.

use num_complex::Complex64;

use crate::numeric::{deriv5, deriv5_2nd, rk};

use super::{PulseConfig, TwoStateAmplitudes, TwoStateError, TwoStateTrajectory};

/// Output samples recorded per trajectory.
const N_OUT: usize = 6001;

fn validate_tol(tol: f64) -> Result<(), TwoStateError> {
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(TwoStateError::Domain(format!(
            "tolerance {tol} outside [1e-12, 1e-6]"
        )));
    }
    Ok(())
}

fn out_times(t_span: (f64, f64)) -> Result<Vec<f64>, TwoStateError> {
    let (t0, t1) = t_span;
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(TwoStateError::Domain(format!("bad time span [{t0}, {t1}]")));
    }
    Ok((0..N_OUT)
        .map(|i| t0 + (t1 - t0) * i as f64 / (N_OUT - 1) as f64)
        .collect())
}

/// Integrate the nonlinear system from `init` over `t_span`.
pub fn simulate_nonlinear(
    pulse: &PulseConfig,
    t_span: (f64, f64),
    init: TwoStateAmplitudes,
    tol: f64,
) -> Result<TwoStateTrajectory, TwoStateError> {
    pulse.validate()?;
    validate_tol(tol)?;
    if (init.norm_invariant() - 1.0).abs() > 1e-6 {
        return Err(TwoStateError::Domain(format!(
            "initial state violates |a1|^2 + 2|a2|^2 = 1 (got {})",
            init.norm_invariant()
        )));
    }
    let times = out_times(t_span)?;
    let rhs = |t: f64, y: &[f64; 4]| {
        let a1 = Complex64::new(y[0], y[1]);
        let a2 = Complex64::new(y[2], y[3]);
        let u = pulse.rabi(t);
        let phase = Complex64::from_polar(1.0, pulse.detuning_phase(t));
        // i a1' = U e^{-iδ} a1* a2 ;  i a2' = (U/2) e^{+iδ} a1².
        let d1 = -Complex64::i() * u * phase.conj() * a1.conj() * a2;
        let d2 = -Complex64::i() * (u / 2.0) * phase * a1 * a1;
        [d1.re, d1.im, d2.re, d2.im]
    };
    let y0 = [init.a1.re, init.a1.im, init.a2.re, init.a2.im];
    let path = rk::integrate(rhs, t_span.0, t_span.1, y0, tol, &times)
        .map_err(|e| TwoStateError::StepFailure(e.to_string()))?;
    Ok(collect(path, |s| s.a2.norm_sqr(), |s| s.norm_invariant()))
}

/// Integrate the linear counterpart of the system from (1, 0).
///
/// The amplitudes obey i c₁' = U e^{-iδ} c₂, i c₂' = U e^{+iδ} c₁ (the
/// linearization of the second-order molecular equation), and the
/// reported probability is p_L = |c₂|²/2, which like p saturates at 1/2
/// and satisfies the linear counterpart of the integral identity,
/// 2 p_L (1 - 2p_L) = (1/U²)(dp_L/dt)² + (∫δ_t dp_L/U)².
pub fn simulate_linear(
    pulse: &PulseConfig,
    t_span: (f64, f64),
    tol: f64,
) -> Result<TwoStateTrajectory, TwoStateError> {
    pulse.validate()?;
    validate_tol(tol)?;
    let times = out_times(t_span)?;
    let rhs = |t: f64, y: &[f64; 4]| {
        let c1 = Complex64::new(y[0], y[1]);
        let c2 = Complex64::new(y[2], y[3]);
        let u = pulse.rabi(t);
        let phase = Complex64::from_polar(1.0, pulse.detuning_phase(t));
        // i c1' = U e^{-iδ} c2 ;  i c2' = U e^{+iδ} c1.
        let d1 = -Complex64::i() * u * phase.conj() * c2;
        let d2 = -Complex64::i() * u * phase * c1;
        [d1.re, d1.im, d2.re, d2.im]
    };
    let y0 = [1.0, 0.0, 0.0, 0.0];
    let path = rk::integrate(rhs, t_span.0, t_span.1, y0, tol, &times)
        .map_err(|e| TwoStateError::StepFailure(e.to_string()))?;
    Ok(collect(
        path,
        |s| s.a2.norm_sqr() / 2.0,
        |s| s.a1.norm_sqr() + s.a2.norm_sqr(),
    ))
}

fn collect(
    path: Vec<(f64, [f64; 4])>,
    probability: impl Fn(&TwoStateAmplitudes) -> f64,
    conserved: impl Fn(&TwoStateAmplitudes) -> f64,
) -> TwoStateTrajectory {
    let mut t = Vec::with_capacity(path.len());
    let mut state = Vec::with_capacity(path.len());
    let mut p = Vec::with_capacity(path.len());
    let mut norm = Vec::with_capacity(path.len());
    for (ti, y) in path {
        let s = TwoStateAmplitudes {
            a1: Complex64::new(y[0], y[1]),
            a2: Complex64::new(y[2], y[3]),
        };
        t.push(ti);
        p.push(probability(&s));
        norm.push(conserved(&s));
        state.push(s);
    }
    TwoStateTrajectory { t, state, p, norm }
}

/// Maximum residual of the second-order form
///
/// ```text
/// a₂'' + (-iδ_t - U_t/U) a₂' + U² a₂ - 2U²|a₂|² a₂ = 0
/// ```
///
/// along a trajectory, with a₂', a₂'' from local polynomial fits
/// (five-point stencils on the uniform sample grid). For a trajectory of
/// the linear counterpart the residual reproduces the neglected
/// 2U²|a₂|²a₂ term.
pub fn second_order_residual(
    traj: &TwoStateTrajectory,
    pulse: &PulseConfig,
) -> Result<f64, TwoStateError> {
    let n = traj.t.len();
    if n < 5 {
        return Err(TwoStateError::Domain(
            "trajectory too short for stencils".into(),
        ));
    }
    let h = traj.t[1] - traj.t[0];
    let mut worst = 0.0_f64;
    for i in 2..n - 2 {
        let t = traj.t[i];
        let u = pulse.rabi(t);
        if !(u > 0.0) {
            return Err(TwoStateError::Domain(format!(
                "U({t}) = {u} is not positive"
            )));
        }
        let a2 = |j: usize| traj.state[j].a2;
        let d1 = Complex64::new(
            deriv5(a2(i - 2).re, a2(i - 1).re, a2(i + 1).re, a2(i + 2).re, h),
            deriv5(a2(i - 2).im, a2(i - 1).im, a2(i + 1).im, a2(i + 2).im, h),
        );
        let d2 = Complex64::new(
            deriv5_2nd(
                a2(i - 2).re,
                a2(i - 1).re,
                a2(i).re,
                a2(i + 1).re,
                a2(i + 2).re,
                h,
            ),
            deriv5_2nd(
                a2(i - 2).im,
                a2(i - 1).im,
                a2(i).im,
                a2(i + 1).im,
                a2(i + 2).im,
                h,
            ),
        );
        let coeff = Complex64::new(-pulse.rabi_dt(t) / u, -pulse.detuning_rate(t));
        let resid = d2 + coeff * d1 + u * u * a2(i) - 2.0 * u * u * a2(i).norm_sqr() * a2(i);
        worst = worst.max(resid.norm());
    }
    Ok(worst)
}

/// Maximum mismatch of the exact integral identity obeyed by p(t).
///
/// With Q = e^{iδ} a₁² a₂̄ the system gives dp/dt = U Im Q and
/// d(Re Q)/dt = -δ_t Im Q, so trajectories started from a₂ = 0 satisfy
///
/// ```text
/// p (1 - 2p)² = (1/U²)(dp/dt)² + (∫ δ_t dp / U)²
/// ```
///
/// exactly (|Q|² = Im² + Re²). Both right-hand terms are evaluated without
/// dividing by U — Im Q analytically, the integral by cumulative
/// quadrature — so the residual measures only quadrature error.
pub fn integral_identity_residual(traj: &TwoStateTrajectory, pulse: &PulseConfig) -> f64 {
    let n = traj.t.len();
    let h = traj.t[1] - traj.t[0];
    // Integrand δ_t · Im Q at every sample.
    let mut im_q = Vec::with_capacity(n);
    let mut integrand = Vec::with_capacity(n);
    for i in 0..n {
        let s = &traj.state[i];
        let phase = Complex64::from_polar(1.0, pulse.detuning_phase(traj.t[i]));
        let q = phase * s.a1 * s.a1 * s.a2.conj();
        im_q.push(q.im);
        integrand.push(pulse.detuning_rate(traj.t[i]) * q.im);
    }
    let cumulative = cumulative_integral_uniform(h, &integrand);
    let mut worst = 0.0_f64;
    for i in 0..n {
        let p = traj.p[i];
        let lhs = p * (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
        let rhs = im_q[i] * im_q[i] + cumulative[i] * cumulative[i];
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}

/// Cumulative integral of uniform samples with local quadratic cells
/// (fourth-order accurate).
fn cumulative_integral_uniform(h: f64, f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    for i in 1..n {
        // Integrate over [i-1, i] with the parabola through three
        // neighbouring samples.
        let inc = if i == 1 {
            h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2])
        } else {
            h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i])
        };
        out[i] = out[i - 1] + inc;
    }
    out
}
