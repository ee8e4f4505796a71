//! Damped Jaynes–Cummings qubit in a squeezed vacuum reservoir with a
//! Lorentzian coupling spectrum centred on the qubit frequency.
//!
//! Times are in units of `1/ω₀` and rates in units of `ω₀`. Coherences are
//! those of the interaction picture: no free-evolution phase on `rho10`.

use serde::{Deserialize, Serialize};

use crate::error::{QslError, Result};
use crate::qsl::{speed_limit, QslResult};
use crate::quadrature::QuadratureSettings;
use crate::qubit::{HermitianGenerator, QubitState};
use crate::reservoir::SqueezedEnvironment;

/// Lorentzian spectral density `J(ω) = γ₀/(2π) · λ² / ((ω₀ − ω)² + λ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzianSpectrum {
    pub gamma0: f64,
    pub lambda: f64,
}

impl LorentzianSpectrum {
    pub fn new(gamma0: f64, lambda: f64) -> Result<Self> {
        if !(gamma0 > 0.0) || !gamma0.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "gamma0",
                value: gamma0,
                reason: "coupling strength must be positive",
            });
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "spectral width must be positive",
            });
        }
        Ok(Self { gamma0, lambda })
    }

    /// Spectral density at frequency `omega` (with `ω₀ = 1`).
    pub fn density(&self, omega: f64) -> f64 {
        let detuning = 1.0 - omega;
        self.gamma0 / (2.0 * std::f64::consts::PI) * self.lambda.powi(2)
            / (detuning * detuning + self.lambda.powi(2))
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(QslError::NegativeTime(t))
    }
}

/// Memory kernel integral `α(t) = (γ₀/2)(1 − e^{−λt})`.
pub fn alpha(t: f64, spec: &LorentzianSpectrum) -> Result<f64> {
    check_time(t)?;
    Ok(0.5 * spec.gamma0 * -(-spec.lambda * t).exp_m1())
}

/// Accumulated decay `ϑ(t) = ∫₀ᵗ α = (γ₀/2)(t + (e^{−λt} − 1)/λ)`.
pub fn vartheta(t: f64, spec: &LorentzianSpectrum) -> Result<f64> {
    check_time(t)?;
    let x = spec.lambda * t;
    // t + expm1(-x)/λ loses every digit for small x; use the series there.
    let tail = if x < 1e-3 {
        t * x * (0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0)
    } else {
        t + (-x).exp_m1() / spec.lambda
    };
    Ok(0.5 * spec.gamma0 * tail)
}

/// Closed-form state at time `t`, starting from the maximally coherent state.
pub fn evolve_jc(t: f64, env: &SqueezedEnvironment, spec: &LorentzianSpectrum) -> Result<QubitState> {
    let v = vartheta(t, spec)?;
    let cosh2r = (2.0 * env.r).cosh();
    let rho11 = 0.5 * (1.0 + (-2.0 * v * cosh2r).exp_m1() / cosh2r);
    let phase = env.phase();
    let fast = (-(2.0 * env.r).exp() * v).exp();
    let slow = (-(-2.0 * env.r).exp() * v).exp();
    let rho10 = 0.25 * (fast * (1.0 + phase) + slow * (1.0 - phase));
    QubitState::new(rho11, rho10)
}

/// Time derivative `dρ/dt` of [`evolve_jc`].
pub fn generator_jc(t: f64, env: &SqueezedEnvironment, spec: &LorentzianSpectrum) -> Result<HermitianGenerator> {
    let a = alpha(t, spec)?;
    let v = vartheta(t, spec)?;
    let two_r = 2.0 * env.r;
    let d11 = -(-2.0 * two_r.cosh() * v).exp() * a;
    let phase = env.phase();
    let slow = (-two_r - (-two_r).exp() * v).exp();
    let fast = (two_r - two_r.exp() * v).exp();
    let d10 = 0.25 * a * (slow * (phase - 1.0) - fast * (phase + 1.0));
    Ok(HermitianGenerator::new(d11, d10))
}

/// Speed-limit time for driving time `tau` with default quadrature settings.
pub fn qsl_jc(tau: f64, env: &SqueezedEnvironment, spec: &LorentzianSpectrum) -> Result<QslResult> {
    qsl_jc_with(tau, env, spec, &QuadratureSettings::default())
}

pub fn qsl_jc_with(
    tau: f64,
    env: &SqueezedEnvironment,
    spec: &LorentzianSpectrum,
    settings: &QuadratureSettings,
) -> Result<QslResult> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(QslError::NonPositiveDrivingTime(tau));
    }
    let final_state = evolve_jc(tau, env, spec)?;
    // The generator norm is smooth on [0, τ]; no breakpoints needed.
    speed_limit(tau, &final_state, |t| generator_jc(t, env, spec), &[], settings)
}
