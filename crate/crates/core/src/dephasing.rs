//! Pure-dephasing qubit in a squeezed vacuum reservoir with an Ohmic-family
//! spectral density and exponential cutoff.
//!
//! The dephasing factor `γ(t)` has a closed form built from principal-branch
//! complex powers `(1 ± i t)^{1−s}` and `(1 ± 2i t)^{1−s}`. Conjugate pairs
//! make it real; the residual imaginary part is checked on every call.
//! Near the removable pole of `Γ(s − 1)` at `s = 1` the closed form cancels
//! badly, so [`gamma_analytic`] falls back to the frequency integral.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma as gamma_fn;

use crate::error::{QslError, Result};
use crate::qsl::{speed_limit, QslResult};
use crate::quadrature::{integrate_with_breakpoints, sign_changes, QuadratureOutcome, QuadratureSettings};
use crate::qubit::{HermitianGenerator, QubitState};
use crate::reservoir::SqueezedEnvironment;

/// Half-width of the window around `s = 1` routed to quadrature.
pub const EPS_POLE: f64 = 1e-3;
/// Bound on the neglected high-frequency tail of the dephasing integral.
pub const TOL_TAIL: f64 = 1e-12;
/// Rates with magnitude below this are classified as [`Sign::Boundary`].
pub const TOL_SIGN: f64 = 1e-12;
/// Allowed imaginary residual, relative to `1 + |Re|`.
pub const TOL_IMAG: f64 = 1e-10;

// Uniform samples used to bracket sign changes of γ′ on [0, τ].
const SIGN_SAMPLES: usize = 512;
const ROOT_TOL: f64 = 1e-13;

/// `J(ω) = η ω^s / ω_c^{s−1} · e^{−ω/ω_c}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OhmicSpectrum {
    pub eta: f64,
    pub s: f64,
    pub omega_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OhmicClass {
    SubOhmic,
    Ohmic,
    SuperOhmic,
}

impl OhmicSpectrum {
    /// Spectrum with unit cutoff frequency.
    pub fn new(eta: f64, s: f64) -> Result<Self> {
        Self::with_cutoff(eta, s, 1.0)
    }

    pub fn with_cutoff(eta: f64, s: f64, omega_c: f64) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "eta",
                value: eta,
                reason: "coupling must be positive",
            });
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "s",
                value: s,
                reason: "Ohmicity exponent must be positive",
            });
        }
        if !(omega_c > 0.0) || !omega_c.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "omega_c",
                value: omega_c,
                reason: "cutoff frequency must be positive",
            });
        }
        Ok(Self { eta, s, omega_c })
    }

    pub fn class(&self) -> OhmicClass {
        if self.s < 1.0 {
            OhmicClass::SubOhmic
        } else if self.s == 1.0 {
            OhmicClass::Ohmic
        } else {
            OhmicClass::SuperOhmic
        }
    }

    pub fn density(&self, omega: f64) -> f64 {
        self.eta * omega.powf(self.s) / self.omega_c.powf(self.s - 1.0) * (-omega / self.omega_c).exp()
    }

    /// Whether `γ(t)` must come from quadrature rather than the closed form.
    pub fn in_pole_window(&self) -> bool {
        // Slack so that s = 1 ± 1e-3 written in decimal lands inside.
        (self.s - 1.0).abs() <= EPS_POLE * (1.0 + 1e-9)
    }
}

/// Dephasing factor and rate at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DephasingTrajectory {
    pub t: f64,
    pub gamma: f64,
    pub gamma_rate: f64,
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(QslError::NegativeTime(t))
    }
}

fn real_part(z: Complex64, quantity: &'static str) -> Result<f64> {
    if z.im.abs() > TOL_IMAG * (1.0 + z.re.abs()) {
        return Err(QslError::ImaginaryResidual {
            quantity,
            real: z.re,
            imag: z.im,
        });
    }
    Ok(z.re)
}

/// Raw closed form of `γ(t)` before the real-part projection.
///
/// Not usable inside the pole window, where `Γ(s − 1)` diverges.
pub fn gamma_closed_form(t: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Complex64 {
    let x = spec.omega_c * t;
    let p = 1.0 - spec.s;
    let one = Complex64::new(1.0, 0.0);
    let up = Complex64::new(1.0, x).powf(p);
    let down = Complex64::new(1.0, -x).powf(p);
    let up2 = Complex64::new(1.0, 2.0 * x).powf(p);
    let down2 = Complex64::new(1.0, -2.0 * x).powf(p);
    let (cosh2r, sinh2r) = ((2.0 * env.r).cosh(), (2.0 * env.r).sinh());
    let phase = env.phase();

    let bracket = 2.0 * cosh2r * (2.0 * one - up - down)
        + phase.conj() * sinh2r * (one - 2.0 * down + down2)
        + phase * sinh2r * (one - 2.0 * up + up2);
    0.25 * spec.eta * gamma_fn(spec.s - 1.0) * bracket
}

/// Raw closed form of `γ′(t)` before the real-part projection.
pub fn gamma_rate_closed_form(t: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Complex64 {
    let x = spec.omega_c * t;
    let p = -spec.s;
    let up = Complex64::new(1.0, x).powf(p);
    let down = Complex64::new(1.0, -x).powf(p);
    let up2 = Complex64::new(1.0, 2.0 * x).powf(p);
    let down2 = Complex64::new(1.0, -2.0 * x).powf(p);
    let (cosh2r, sinh2r) = ((2.0 * env.r).cosh(), (2.0 * env.r).sinh());
    let phase = env.phase();

    let bracket =
        cosh2r * (up - down) + phase.conj() * sinh2r * (down2 - down) + phase * sinh2r * (up - up2);
    Complex64::new(0.0, 0.5 * spec.eta * gamma_fn(spec.s)) * bracket * spec.omega_c
}

/// Dephasing factor `γ(t) ≥ 0`.
///
/// Uses the closed form except inside the pole window `|s − 1| ≤ EPS_POLE`,
/// where it delegates to [`gamma_quadrature`].
pub fn gamma_analytic(t: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    if spec.in_pole_window() {
        return gamma_quadrature(t, env, spec);
    }
    real_part(gamma_closed_form(t, env, spec), "gamma")
}

/// Dephasing rate `γ′(t)`; negative values mark coherence revival.
pub fn gamma_rate(t: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    real_part(gamma_rate_closed_form(t, env, spec), "gamma_rate")
}

/// Settings for the frequency integral: tighter than the time averages since
/// it also serves as the oracle for the closed form.
pub fn frequency_settings() -> QuadratureSettings {
    QuadratureSettings {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_subdivisions: 20_000,
    }
}

/// Upper bound on `∫_W^∞ x^a e^{−x} dx`, valid for `W > max(a, 0)`.
fn power_exp_tail(a: f64, w: f64) -> f64 {
    let lead = w.powf(a) * (-w).exp();
    if a <= 0.0 {
        lead
    } else {
        lead / (1.0 - a / w)
    }
}

/// Frequency cutoff (in units of `ω_c`) beyond which the integrand tail is
/// below [`TOL_TAIL`].
pub fn frequency_cutoff(env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> f64 {
    let a = spec.s - 2.0;
    // (1 − cos) ≤ 2 and the squeezing bracket is at most e^{2r}.
    let prefactor = 2.0 * spec.eta * (2.0 * env.r).exp();
    let mut w = 50f64.max(40.0 + 10.0 * spec.s);
    while prefactor * power_exp_tail(a, w) > TOL_TAIL {
        w *= 1.5;
    }
    w
}

/// Dephasing factor by direct quadrature of the frequency integral.
pub fn gamma_quadrature(t: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<f64> {
    Ok(gamma_quadrature_with(t, env, spec, &frequency_settings())?.value)
}

/// As [`gamma_quadrature`], returning the full outcome.
pub fn gamma_quadrature_with(
    t: f64,
    env: &SqueezedEnvironment,
    spec: &OhmicSpectrum,
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(QuadratureOutcome {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions_used: 0,
            converged: true,
        });
    }
    // Substituting ω = ω_c·x leaves a unit-cutoff integral at time ω_c·t.
    let x_t = spec.omega_c * t;
    let (cosh2r, sinh2r) = ((2.0 * env.r).cosh(), (2.0 * env.r).sinh());
    let (eta, s, theta) = (spec.eta, spec.s, env.theta);
    let integrand = move |x: f64| {
        if x == 0.0 {
            return 0.0;
        }
        // 1 − cos(xt) = 2 sin²(xt/2) avoids cancellation at small x.
        let half = (0.5 * x * x_t).sin();
        let one_minus_cos = 2.0 * half * half;
        let squeeze = cosh2r - (x * x_t - theta).cos() * sinh2r;
        eta * x.powf(s - 2.0) * (-x).exp() * one_minus_cos * squeeze
    };

    let upper = frequency_cutoff(env, spec);
    let period = std::f64::consts::PI / x_t;
    let mut points = vec![0.0];
    // A first split near the origin isolates the x^{s} behaviour.
    let first = period.min(1.0);
    let mut x = first;
    while x < upper {
        points.push(x);
        x = if x < period { period } else { x + period };
    }
    points.push(upper);

    let outcome = integrate_with_breakpoints(integrand, &points, settings)?;
    outcome.require_converged(0.0, upper)
}

/// `γ(t)` and `γ′(t)` together.
pub fn trajectory(t: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<DephasingTrajectory> {
    Ok(DephasingTrajectory {
        t,
        gamma: gamma_analytic(t, env, spec)?,
        gamma_rate: gamma_rate(t, env, spec)?,
    })
}

/// State at time `t`: populations fixed at 1/2, coherence `e^{−γ(t)}/2`.
pub fn evolve_dephasing(t: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<QubitState> {
    let g = gamma_analytic(t, env, spec)?;
    QubitState::new(0.5, Complex64::new(0.5 * (-g).exp(), 0.0))
}

/// `dρ/dt`: only the coherence moves, at `−γ′ e^{−γ}/2`.
pub fn generator_dephasing(t: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<HermitianGenerator> {
    let traj = trajectory(t, env, spec)?;
    Ok(HermitianGenerator::new(
        0.0,
        Complex64::new(-0.5 * traj.gamma_rate * (-traj.gamma).exp(), 0.0),
    ))
}

/// Interior times in `(0, τ)` where `γ′` changes sign.
pub fn rate_sign_changes(tau: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<Vec<f64>> {
    let rate = |t: f64| gamma_rate(t, env, spec).unwrap_or(f64::NAN);
    let roots = sign_changes(rate, 0.0, tau, SIGN_SAMPLES, ROOT_TOL)?;
    Ok(roots.into_iter().filter(|&t| t > 0.0 && t < tau).collect())
}

pub fn qsl_dephasing(tau: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<QslResult> {
    qsl_dephasing_with(tau, env, spec, &QuadratureSettings::default())
}

/// Speed-limit time for driving time `tau`.
///
/// The operator norm `|γ′| e^{−γ}/2` has kinks where `γ′` changes sign;
/// those are located first and used as panel boundaries.
pub fn qsl_dephasing_with(
    tau: f64,
    env: &SqueezedEnvironment,
    spec: &OhmicSpectrum,
    settings: &QuadratureSettings,
) -> Result<QslResult> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(QslError::NonPositiveDrivingTime(tau));
    }
    let final_state = evolve_dephasing(tau, env, spec)?;
    let kinks = rate_sign_changes(tau, env, spec)?;
    speed_limit(tau, &final_state, |t| generator_dephasing(t, env, spec), &kinks, settings)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Boundary,
}

impl Sign {
    pub fn classify(value: f64) -> Self {
        if value.abs() < TOL_SIGN {
            Sign::Boundary
        } else if value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
            Sign::Boundary => "boundary",
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Smallest sampled `γ′` on `(0, τ]`, refined at each bracketed sign change.
pub fn min_rate(tau: f64, env: &SqueezedEnvironment, spec: &OhmicSpectrum) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(QslError::NonPositiveDrivingTime(tau));
    }
    let mut min = f64::INFINITY;
    for i in 1..=SIGN_SAMPLES {
        let t = tau * i as f64 / SIGN_SAMPLES as f64;
        min = min.min(gamma_rate(t, env, spec)?);
    }
    Ok(min)
}

/// Sign of `γ′` for one `(s, θ)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignCell {
    pub s: f64,
    pub theta: f64,
    pub rate_at_tau: f64,
    pub min_rate: f64,
    /// Sign of `γ′(τ)`.
    pub at_tau: Sign,
    /// Sign of `min_{t ∈ (0, τ]} γ′(t)`: negative means acceleration somewhere.
    pub anywhere: Sign,
}

/// Sign map over `theta_grid` (rows) × `s_grid` (columns), row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignMap {
    pub r: f64,
    pub tau: f64,
    pub s_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    pub cells: Vec<SignCell>,
}

impl SignMap {
    pub fn cell(&self, theta_index: usize, s_index: usize) -> &SignCell {
        &self.cells[theta_index * self.s_grid.len() + s_index]
    }
}

pub fn sign_cell(tau: f64, env: &SqueezedEnvironment, s: f64) -> Result<SignCell> {
    // The sign of γ′ does not depend on η.
    let spec = OhmicSpectrum::new(1.0, s)?;
    let rate_at_tau = gamma_rate(tau, env, &spec)?;
    let min_rate = min_rate(tau, env, &spec)?;
    Ok(SignCell {
        s,
        theta: env.theta,
        rate_at_tau,
        min_rate,
        at_tau: Sign::classify(rate_at_tau),
        anywhere: Sign::classify(min_rate),
    })
}

/// Evaluates the sign of the dephasing rate across an `(s, θ)` grid.
pub fn sign_region(r: f64, tau: f64, s_grid: &[f64], theta_grid: &[f64]) -> Result<SignMap> {
    if s_grid.is_empty() || theta_grid.is_empty() {
        return Err(QslError::InvalidParameter {
            name: "grid",
            value: 0.0,
            reason: "sign-region grids must be non-empty",
        });
    }
    if !(tau > 0.0) {
        return Err(QslError::NonPositiveDrivingTime(tau));
    }
    let cells = theta_grid
        .par_iter()
        .flat_map_iter(|&theta| s_grid.iter().map(move |&s| (theta, s)))
        .map(|(theta, s)| sign_cell(tau, &SqueezedEnvironment::new(r, theta)?, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignMap {
        r,
        tau,
        s_grid: s_grid.to_vec(),
        theta_grid: theta_grid.to_vec(),
        cells,
    })
}

/// Ohmicity `s` in `[lo, hi]` where `γ′(τ)` vanishes.
pub fn rate_root_in_s(tau: f64, env: &SqueezedEnvironment, lo: f64, hi: f64) -> Result<f64> {
    let f = |s: f64| {
        OhmicSpectrum::new(1.0, s)
            .and_then(|spec| gamma_rate(tau, env, &spec))
            .unwrap_or(f64::NAN)
    };
    crate::quadrature::find_root(f, lo, hi, 1e-12)
}
