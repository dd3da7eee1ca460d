//! Property-based invariants.

use num_complex::Complex64;
use proptest::prelude::*;

use heunwell::closedform::GeneralSolution;
use heunwell::potential::{energy_from_a, spectral_params, PhysicalParams};
use heunwell::specfun::{gamma, hermite_nu, kummer_1f1};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    // ₁F₁(a; b; z) = e^z ₁F₁(b-a; b; -z) for the b values the solution
    // machinery uses.
    #[test]
    fn kummer_transformation(
        a in -10.0..10.0f64,
        z in -10.0..10.0f64,
        half_b in prop::bool::ANY,
    ) {
        let b = if half_b { 0.5 } else { 1.5 };
        let lhs = kummer_1f1(c(a, 0.0), c(b, 0.0), c(z, 0.0)).unwrap().value;
        let rhs = c(z, 0.0).exp()
            * kummer_1f1(c(b - a, 0.0), c(b, 0.0), c(-z, 0.0)).unwrap().value;
        let scale = lhs.norm().max(rhs.norm()).max(1e-30);
        prop_assert!(
            (lhs - rhs).norm() <= 1e-10 * scale,
            "transformation violated at a={a}, b={b}, z={z}: {lhs} vs {rhs}"
        );
    }

    // Γ(z+1) = z Γ(z) away from the poles.
    #[test]
    fn gamma_recurrence(re in -20.0..20.0f64, im in 0.05..10.0f64) {
        let z = c(re, im);
        let lhs = gamma(z + 1.0).unwrap().value;
        let rhs = z * gamma(z).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm().max(1e-30));
    }

    // H_ν(conj z) = conj H_ν(z) for real order.
    #[test]
    fn hermite_conjugate_symmetry(
        nu in -4.0..4.0f64,
        re in -3.0..3.0f64,
        im in 0.01..3.0f64,
    ) {
        let v = hermite_nu(c(nu, 0.0), c(re, im)).unwrap().value;
        let vc = hermite_nu(c(nu, 0.0), c(re, -im)).unwrap().value;
        let scale = v.norm().max(1.0);
        prop_assert!((vc - v.conj()).norm() <= 1e-10 * scale);
    }

    // energy_from_a inverts spectral_params on the E > V0 branch.
    #[test]
    fn energy_round_trip(
        m in 0.1..10.0f64,
        hbar in 0.1..5.0f64,
        v0 in -5.0..5.0f64,
        v1 in 0.05..10.0f64,
        de in 0.001..50.0f64,
    ) {
        let p = PhysicalParams { m, hbar, v0, v1 };
        let e = v0 + de;
        let a = spectral_params(&p, e).unwrap().a;
        let back = energy_from_a(&p, a).unwrap();
        prop_assert!((back - e).abs() <= 1e-12 * e.abs().max(1.0));
    }

    // a(E) is strictly increasing above V0.
    #[test]
    fn spectral_a_monotone(
        v1 in 0.05..10.0f64,
        e1 in 0.001..20.0f64,
        gap in 0.001..20.0f64,
    ) {
        let p = PhysicalParams { m: 1.0, hbar: 1.0, v0: 0.0, v1 };
        let a1 = spectral_params(&p, e1).unwrap().a;
        let a2 = spectral_params(&p, e1 + gap).unwrap().a;
        prop_assert!(a2 > a1);
    }

    // The general solution is linear in its coefficients.
    #[test]
    fn general_solution_linearity(
        c1 in -3.0..3.0f64,
        c2 in -3.0..3.0f64,
        x in 0.1..5.0f64,
    ) {
        let p = PhysicalParams::preset_paper();
        let e = 2.0;
        let base1 = GeneralSolution::new(p, e, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let base2 = GeneralSolution::new(p, e, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let combo = GeneralSolution::new(p, e, c(c1, 0.0), c(c2, 0.0)).unwrap();
        let lhs = combo.value(x).unwrap();
        let rhs = c1 * base1.value(x).unwrap() + c2 * base2.value(x).unwrap();
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
    }
}
