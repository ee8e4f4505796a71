use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use proptest::prelude::*;

use squeezed_qsl::dephasing::{gamma_analytic, qsl_dephasing};
use squeezed_qsl::jc::{alpha, evolve_jc, qsl_jc, vartheta};
use squeezed_qsl::oracles::{finite_difference, fidelity_by_matrix_sqrt, hermitian_eigenvalues};
use squeezed_qsl::quadrature::{integrate, QuadratureSettings};
use squeezed_qsl::qubit::{bures_angle, eigenvalues_2x2_hermitian, fidelity, norms};
use squeezed_qsl::{HermitianGenerator, LorentzianSpectrum, OhmicSpectrum, QubitState, SqueezedEnvironment};

/// States from Bloch coordinates, scaled into the unit ball.
fn state() -> impl Strategy<Value = QubitState> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, 0.0..=1.0f64).prop_map(|(x, y, z, radius)| {
        let len = (x * x + y * y + z * z).sqrt().max(1e-12);
        let k = radius / len.max(1.0);
        QubitState::new(0.5 * (1.0 + k * z), Complex64::new(0.5 * k * x, 0.5 * k * y)).unwrap()
    })
}

fn generator() -> impl Strategy<Value = HermitianGenerator> {
    (-1e3..1e3f64, -1e3..1e3f64, -1e3..1e3f64).prop_map(|(a, b, c)| HermitianGenerator::new(a, Complex64::new(b, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fidelity_is_symmetric_and_bounded(a in state(), b in state()) {
        let ab = fidelity(&a, &b).unwrap();
        prop_assert!((ab - fidelity(&b, &a).unwrap()).abs() <= 1e-14);
        prop_assert!((0.0..=1.0).contains(&ab));
    }

    #[test]
    fn fidelity_matches_matrix_square_roots(a in state(), b in state()) {
        // The eigensolver route loses precision next to pure states.
        prop_assume!(a.determinant() > 1e-6 || b.determinant() > 1e-6);
        prop_assert!((fidelity(&a, &b).unwrap() - fidelity_by_matrix_sqrt(&a, &b)).abs() < 1e-12);
    }

    #[test]
    fn bures_self_distance_vanishes(a in state()) {
        prop_assert!(bures_angle(&a, &a).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn norm_chain(g in generator()) {
        let n = norms(&g);
        prop_assert!(n.op <= n.hs && n.hs <= n.tr);
        if n.op > 0.0 {
            prop_assert!((n.hs / n.op - SQRT_2).abs() <= 1e-14 * SQRT_2);
            prop_assert!(n.tr / n.op == 2.0);
        }
        let d11 = Complex64::new(g.d11, 0.0);
        let (l1, l2) = hermitian_eigenvalues([[d11, g.d10], [g.d10.conj(), -d11]]);
        prop_assert!((n.op - l1.abs().max(l2.abs())).abs() <= 1e-13 * n.op.max(1.0));
    }

    #[test]
    fn eigenvalues_keep_trace_and_determinant(m11 in -10.0..10.0f64, m22 in -10.0..10.0f64, re in -10.0..10.0f64, im in -10.0..10.0f64) {
        let m12 = Complex64::new(re, im);
        let (l1, l2) = eigenvalues_2x2_hermitian(m11, m22, m12);
        prop_assert!(l1 >= l2);
        prop_assert!((l1 + l2 - (m11 + m22)).abs() < 1e-12);
        prop_assert!((l1 * l2 - (m11 * m22 - m12.norm_sqr())).abs() < 1e-10);
    }

    #[test]
    fn vartheta_rate_is_alpha(t in 1e-4..6.0f64, g in 0.1..10.0f64, lambda in 0.1..5.0f64) {
        let spec = LorentzianSpectrum::new(g, lambda).unwrap();
        let fd = finite_difference(|x| vartheta(x, &spec).unwrap(), t, 1e-5);
        prop_assert!((fd - alpha(t, &spec).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn jc_states_are_valid(t in 0.0..10.0f64, r in 0.0..1.5f64, theta in 0.0..2.0 * PI, g in 0.1..10.0f64) {
        let s = evolve_jc(t, &SqueezedEnvironment::new(r, theta).unwrap(), &LorentzianSpectrum::new(g, 1.0).unwrap()).unwrap();
        prop_assert_eq!(s.trace(), 1.0);
        prop_assert!(s.determinant() >= -1e-12);
        prop_assert!((0.0..=1.0).contains(&s.rho11()));
    }

    #[test]
    fn jc_phase_mirror(r in 0.0..1.0f64, theta in 0.0..PI, g in 0.1..10.0f64, tau in 0.1..3.0f64) {
        let spec = LorentzianSpectrum::new(g, 1.0).unwrap();
        let a = qsl_jc(tau, &SqueezedEnvironment::new(r, theta).unwrap(), &spec).unwrap();
        let b = qsl_jc(tau, &SqueezedEnvironment::new(r, 2.0 * PI - theta).unwrap(), &spec).unwrap();
        prop_assert!((a.tau_qsl - b.tau_qsl).abs() <= 1e-10 * a.tau_qsl);
    }

    #[test]
    fn jc_ratio_in_unit_interval(r in 0.0..1.0f64, theta in 0.0..2.0 * PI, g in 0.1..10.0f64, tau in 0.01..5.0f64) {
        let q = qsl_jc(tau, &SqueezedEnvironment::new(r, theta).unwrap(), &LorentzianSpectrum::new(g, 1.0).unwrap()).unwrap();
        prop_assert!(q.ratio > 0.0 && q.ratio <= 1.0 + 1e-12);
    }

    #[test]
    fn dephasing_factor_is_non_negative(t in 0.0..6.0f64, r in 0.0..1.0f64, theta in 0.0..2.0 * PI, s in 0.1..4.0f64) {
        let g = gamma_analytic(t, &SqueezedEnvironment::new(r, theta).unwrap(), &OhmicSpectrum::new(1.0, s).unwrap()).unwrap();
        prop_assert!(g >= -1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dephasing_ratio_in_unit_interval(r in 0.0..1.0f64, theta in 0.0..2.0 * PI, s in 0.1..4.0f64, tau in 0.2..5.0f64) {
        let q = qsl_dephasing(tau, &SqueezedEnvironment::new(r, theta).unwrap(), &OhmicSpectrum::new(1.0, s).unwrap()).unwrap();
        prop_assert!(q.ratio > 0.0 && q.ratio <= 1.0 + 1e-12);
    }

    #[test]
    fn quadrature_is_exact_for_cubics(a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64, hi in 0.1..10.0f64) {
        let f = |x: f64| a + b * x + c * x * x * x;
        let exact = a * hi + 0.5 * b * hi * hi + 0.25 * c * hi.powi(4);
        let out = integrate(f, 0.0, hi, &QuadratureSettings::default()).unwrap();
        prop_assert!((out.value - exact).abs() <= 1e-12 * exact.abs().max(1.0));
    }
}
