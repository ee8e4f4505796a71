//! Brute-force validators for the closed forms.
//!
//! None of this is on the production path: the master equation is integrated
//! with fixed-step RK4 from its operator form, fidelity goes through explicit
//! matrix square roots, and reference integrals use dense trapezoid sums.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QslError, Result};
use crate::jc::{alpha, LorentzianSpectrum};
use crate::qubit::{QubitState, TOL_PSD};
use crate::reservoir::SqueezedEnvironment;

/// Trace drift that aborts propagation.
pub const MAX_TRACE_DRIFT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeSettings {
    /// Fixed RK4 step in units of `1/ω₀`.
    pub step: f64,
}

impl Default for OdeSettings {
    fn default() -> Self {
        Self { step: 1e-4 }
    }
}

impl OdeSettings {
    pub fn new(step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "step",
                value: step,
                reason: "RK4 step must be positive",
            });
        }
        Ok(Self { step })
    }
}

type M2 = Matrix2<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

// Basis order (|1⟩, |0⟩): σ₊ = |1⟩⟨0| sits in the upper-right corner.
fn sigma_plus() -> M2 {
    M2::new(c(0.0), c(1.0), c(0.0), c(0.0))
}

fn sigma_minus() -> M2 {
    M2::new(c(0.0), c(0.0), c(1.0), c(0.0))
}

/// Right-hand side of the squeezed-reservoir master equation for the full
/// operator `rho` at time `t`.
pub fn master_equation_rhs(rho: &M2, t: f64, env: &SqueezedEnvironment, spec: &LorentzianSpectrum) -> Result<M2> {
    let a = c(alpha(t, spec)?);
    let a_conj = a.conj();
    let n = c(env.n());
    let m = env.m();
    let sp = sigma_plus();
    let sm = sigma_minus();
    let pp = sp * sm;
    let mm = sm * sp;
    let one = c(1.0);
    let two = c(2.0);

    let decay = sm * rho * sp;
    let pump = sp * rho * sm;
    let d = (pp * rho - decay) * (-(n + one) * a)
        + (rho * pp - decay) * (-(n + one) * a_conj)
        + (rho * mm - pump) * (-n * a)
        + (mm * rho - pump) * (-n * a_conj)
        + (sp * rho * sp) * (two * a_conj * m)
        + (sm * rho * sm) * (two * a * m.conj());
    Ok(d)
}

// Real degrees of freedom: [rho11, Re rho10, Im rho10, rho00].
type Dof = [f64; 4];

fn to_matrix(y: &Dof) -> M2 {
    let rho10 = Complex64::new(y[1], y[2]);
    M2::new(c(y[0]), rho10, rho10.conj(), c(y[3]))
}

fn derivative(y: &Dof, t: f64, env: &SqueezedEnvironment, spec: &LorentzianSpectrum) -> Result<Dof> {
    let d = master_equation_rhs(&to_matrix(y), t, env, spec)?;
    Ok([d[(0, 0)].re, d[(0, 1)].re, d[(0, 1)].im, d[(1, 1)].re])
}

fn axpy(y: &Dof, h: f64, k: &Dof) -> Dof {
    [y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]]
}

fn rk4_step(y: &Dof, t: f64, h: f64, env: &SqueezedEnvironment, spec: &LorentzianSpectrum) -> Result<Dof> {
    let k1 = derivative(y, t, env, spec)?;
    let k2 = derivative(&axpy(y, 0.5 * h, &k1), t + 0.5 * h, env, spec)?;
    let k3 = derivative(&axpy(y, 0.5 * h, &k2), t + 0.5 * h, env, spec)?;
    let k4 = derivative(&axpy(y, h, &k3), t + h, env, spec)?;
    let mut out = *y;
    for i in 0..4 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

fn check_dof(y: &Dof) -> Result<()> {
    let drift = (y[0] + y[3] - 1.0).abs();
    if !(drift <= MAX_TRACE_DRIFT) {
        return Err(QslError::TraceDrift(drift));
    }
    let det = y[0] * y[3] - (y[1] * y[1] + y[2] * y[2]);
    if det < -TOL_PSD {
        return Err(QslError::NotPositiveSemidefinite(det));
    }
    Ok(())
}

/// Integrates the master equation from the maximally coherent state and
/// returns the state at each of `times` (non-decreasing, non-negative).
///
/// The ground population is integrated independently and compared against
/// `1 − rho11` after every step.
pub fn propagate_master_equation_samples(
    times: &[f64],
    env: &SqueezedEnvironment,
    spec: &LorentzianSpectrum,
    settings: &OdeSettings,
) -> Result<Vec<QubitState>> {
    let mut y: Dof = [0.5, 0.5, 0.0, 0.5];
    let mut t = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        if !(target >= t) {
            return Err(QslError::NegativeTime(target - t));
        }
        let span = target - t;
        let steps = (span / settings.step).ceil() as usize;
        if steps > 0 {
            let h = span / steps as f64;
            for i in 0..steps {
                y = rk4_step(&y, t + i as f64 * h, h, env, spec)?;
                check_dof(&y)?;
            }
        }
        t = target;
        out.push(QubitState::new(y[0], Complex64::new(y[1], y[2]))?);
    }
    Ok(out)
}

/// State at `t_end` by RK4 propagation of the master equation.
pub fn propagate_master_equation(
    t_end: f64,
    env: &SqueezedEnvironment,
    spec: &LorentzianSpectrum,
    settings: &OdeSettings,
) -> Result<QubitState> {
    if !(t_end >= 0.0) {
        return Err(QslError::NegativeTime(t_end));
    }
    Ok(propagate_master_equation_samples(&[t_end], env, spec, settings)?[0])
}

/// `(f(x + h) − f(x − h)) / 2h`.
pub fn finite_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Composite trapezoid rule with `intervals` equal panels.
pub fn dense_trapezoid<F>(f: F, a: f64, b: f64, intervals: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let n = intervals.max(1);
    let h = (b - a) / n as f64;
    let interior: f64 = (1..n).map(|i| f(a + h * i as f64)).sum();
    h * (0.5 * (f(a) + f(b)) + interior)
}

/// Eigenvalues of a Hermitian 2×2 matrix from a general-purpose solver,
/// largest first.
pub fn hermitian_eigenvalues(m: [[Complex64; 2]; 2]) -> (f64, f64) {
    let mat = M2::new(m[0][0], m[0][1], m[1][0], m[1][1]);
    let eig = mat.symmetric_eigen();
    let (a, b) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    (a.max(b), a.min(b))
}

fn psd_sqrt(m: &M2) -> M2 {
    let eig = m.symmetric_eigen();
    let v = eig.eigenvectors;
    let d = M2::from_diagonal(&nalgebra::Vector2::new(
        c(eig.eigenvalues[0].max(0.0).sqrt()),
        c(eig.eigenvalues[1].max(0.0).sqrt()),
    ));
    v * d * v.adjoint()
}

fn state_matrix(s: &QubitState) -> M2 {
    let m = s.to_matrix();
    M2::new(m[0][0], m[0][1], m[1][0], m[1][1])
}

/// Uhlmann fidelity `(tr sqrt(sqrt(a) b sqrt(a)))²` by explicit matrix square
/// roots.
pub fn fidelity_by_matrix_sqrt(a: &QubitState, b: &QubitState) -> f64 {
    let sa = psd_sqrt(&state_matrix(a));
    let inner = sa * state_matrix(b) * sa;
    // Symmetrise away rounding before the Hermitian solver.
    let inner = (inner + inner.adjoint()) * c(0.5);
    let eig = inner.symmetric_eigen();
    let tr: f64 = eig.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).sum();
    tr * tr
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jc::evolve_jc;

    fn max_dev(a: &QubitState, b: &QubitState) -> f64 {
        (a.rho11() - b.rho11()).abs().max((a.rho10() - b.rho10()).norm())
    }

    #[test]
    fn zero_time_is_initial_state() {
        let s = propagate_master_equation(
            0.0,
            &SqueezedEnvironment::new(0.6, 1.0).unwrap(),
            &LorentzianSpectrum::new(2.0, 1.0).unwrap(),
            &OdeSettings::default(),
        )
        .unwrap();
        assert_eq!(s, QubitState::maximally_coherent());
    }

    #[test]
    fn vacuum_matches_closed_form() {
        let env = SqueezedEnvironment::vacuum();
        let spec = LorentzianSpectrum::new(1.0, 1.0).unwrap();
        let ode = propagate_master_equation(1.0, &env, &spec, &OdeSettings::default()).unwrap();
        assert!(max_dev(&ode, &evolve_jc(1.0, &env, &spec).unwrap()) < 1e-8);
    }

    #[test]
    fn strong_coupling_matches_closed_form() {
        let env = SqueezedEnvironment::new(0.8, 1.2).unwrap();
        let spec = LorentzianSpectrum::new(5.0, 1.0).unwrap();
        let ode = propagate_master_equation(2.0, &env, &spec, &OdeSettings::default()).unwrap();
        assert!(max_dev(&ode, &evolve_jc(2.0, &env, &spec).unwrap()) < 1e-7);
    }

    #[test]
    fn fourth_order_convergence() {
        let env = SqueezedEnvironment::new(0.5, 0.7).unwrap();
        let spec = LorentzianSpectrum::new(3.0, 1.0).unwrap();
        let exact = evolve_jc(1.0, &env, &spec).unwrap();
        let err = |h: f64| {
            let s = propagate_master_equation(1.0, &env, &spec, &OdeSettings::new(h).unwrap()).unwrap();
            max_dev(&s, &exact)
        };
        let (coarse, fine) = (err(0.1), err(0.05));
        let ratio = coarse / fine;
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn finite_difference_examples() {
        assert!((finite_difference(|x| x * x, 3.0, 1e-5) - 6.0).abs() < 1e-9);
        assert!((finite_difference(f64::exp, 0.0, 1e-5) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn trapezoid_converges() {
        let v = dense_trapezoid(|x| x * x, 0.0, 1.0, 100_000);
        assert!((v - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn matrix_sqrt_fidelity_for_pure_states() {
        let plus = QubitState::maximally_coherent();
        let mixed = QubitState::maximally_mixed();
        assert!((fidelity_by_matrix_sqrt(&plus, &mixed) - 0.5).abs() < 1e-12);
        assert!((fidelity_by_matrix_sqrt(&plus, &plus) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_step() {
        assert!(OdeSettings::new(0.0).is_err());
        assert!(OdeSettings::new(f64::NAN).is_err());
    }
}
