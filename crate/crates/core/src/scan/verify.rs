//! Oracle comparisons behind `qsl verify`.
//!
//! Each suite runs a fixed grid, records the worst deviation per check and
//! passes only if every check is within its tolerance.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dephasing::{self, OhmicSpectrum, TOL_IMAG};
use crate::error::{QslError, Result};
use crate::jc::{self, LorentzianSpectrum};
use crate::oracles::{self, OdeSettings};
use crate::qubit::{self, HermitianGenerator, QubitState};
use crate::reservoir::SqueezedEnvironment;

/// Seed for the random draws; fixed so reports are reproducible.
pub const SEED: u64 = 0x5eed;
pub const RANDOM_SAMPLES: usize = 1000;

pub const JC_R: [f64; 3] = [0.0, 0.4, 0.8];
pub const JC_THETA: [f64; 4] = [0.0, 1.2, PI, 5.0];
pub const JC_GAMMA0: [f64; 4] = [0.1, 1.0, 5.0, 10.0];
pub const JC_LAMBDA: f64 = 1.0;
pub const JC_T_MAX: f64 = 5.0;
pub const JC_T_STEP: f64 = 0.1;

pub const DEPHASING_S: [f64; 8] = [0.5, 1.5, 2.0, 2.5, 3.0, 4.0, 0.999, 1.001];
pub const DEPHASING_R: [f64; 3] = [0.0, 0.5, 1.0];
pub const DEPHASING_THETA: [f64; 4] = [0.0, 0.5 * PI, PI, 1.5 * PI];
pub const DEPHASING_T: [f64; 4] = [0.5, 1.0, 3.0, 5.0];

pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    JcOracle,
    DephasingOracle,
    Norms,
    Derivatives,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::JcOracle, Suite::DephasingOracle, Suite::Norms, Suite::Derivatives];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::JcOracle => "jc-oracle",
            Suite::DephasingOracle => "dephasing-oracle",
            Suite::Norms => "norms",
            Suite::Derivatives => "derivatives",
        }
    }
}

impl FromStr for Suite {
    type Err = QslError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| QslError::Config(format!("unknown verify suite `{s}`")))
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub pass: bool,
}

impl Check {
    /// Folds per-sample deviations; any `NaN` fails the check.
    fn from_deviations(name: &str, tolerance: f64, deviations: &[f64]) -> Self {
        let max_deviation = deviations
            .iter()
            .fold(0.0f64, |m, &d| if d.is_nan() || m.is_nan() { f64::NAN } else { m.max(d) });
        Self {
            name: name.to_string(),
            max_deviation,
            tolerance,
            samples: deviations.len(),
            pass: max_deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { suite, checks, pass }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn run_verify(suite: Suite) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::JcOracle => jc_oracle()?,
        Suite::DephasingOracle => dephasing_oracle()?,
        Suite::Norms => norms_suite(),
        Suite::Derivatives => derivatives()?,
    };
    Ok(VerifyReport::new(suite, checks))
}

/// `(r, θ, γ₀)` grid shared by the JC suites.
pub fn jc_grid() -> Vec<(SqueezedEnvironment, LorentzianSpectrum)> {
    let mut out = Vec::new();
    for &r in &JC_R {
        for &theta in &JC_THETA {
            for &g in &JC_GAMMA0 {
                out.push((
                    SqueezedEnvironment::new(r, theta).expect("grid r is valid"),
                    LorentzianSpectrum::new(g, JC_LAMBDA).expect("grid spectrum is valid"),
                ));
            }
        }
    }
    out
}

/// `0, 0.1, …, 5`.
pub fn jc_times() -> Vec<f64> {
    let n = (JC_T_MAX / JC_T_STEP).round() as usize;
    (0..=n).map(|i| i as f64 * JC_T_STEP).collect()
}

fn state_deviation(a: &QubitState, b: &QubitState) -> f64 {
    let d10 = a.rho10() - b.rho10();
    (a.rho11() - b.rho11()).abs().max(d10.re.abs()).max(d10.im.abs())
}

fn jc_oracle() -> Result<Vec<Check>> {
    let times = jc_times();
    let ode = OdeSettings::default();
    let per_point: Vec<Result<f64>> = jc_grid()
        .par_iter()
        .map(|(env, spec)| {
            let states = oracles::propagate_master_equation_samples(&times, env, spec, &ode)?;
            let mut worst = 0.0f64;
            for (&t, s) in times.iter().zip(&states) {
                worst = worst.max(state_deviation(s, &jc::evolve_jc(t, env, spec)?));
            }
            Ok(worst)
        })
        .collect();
    let devs = per_point.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(vec![Check::from_deviations("jc_closed_form_vs_rk4", 1e-7, &devs)])
}

/// `(s, r, θ, t)` grid shared by the dephasing suites.
pub fn dephasing_grid() -> Vec<(SqueezedEnvironment, OhmicSpectrum, f64)> {
    let mut out = Vec::new();
    for &s in &DEPHASING_S {
        for &r in &DEPHASING_R {
            for &theta in &DEPHASING_THETA {
                for &t in &DEPHASING_T {
                    out.push((
                        SqueezedEnvironment::new(r, theta).expect("grid r is valid"),
                        OhmicSpectrum::new(1.0, s).expect("grid s is valid"),
                        t,
                    ));
                }
            }
        }
    }
    out
}

fn dephasing_oracle() -> Result<Vec<Check>> {
    let devs = dephasing_grid()
        .par_iter()
        .map(|(env, spec, t)| {
            let analytic = dephasing::gamma_analytic(*t, env, spec)?;
            let quad = dephasing::gamma_quadrature(*t, env, spec)?;
            Ok((analytic - quad).abs() / quad.abs().max(f64::MIN_POSITIVE))
        })
        .collect::<Result<Vec<f64>>>()?;

    // Inside the pole window the analytic path is itself quadrature. At
    // |s − 1| = 1e-3 the raw closed form only loses about three digits to
    // cancellation, so it still serves as an independent reference there.
    let near_pole = dephasing_grid()
        .par_iter()
        .filter(|(_, spec, _)| spec.in_pole_window())
        .map(|(env, spec, t)| {
            let closed = dephasing::gamma_closed_form(*t, env, spec).re;
            let quad = dephasing::gamma_quadrature(*t, env, spec)?;
            Ok((closed - quad).abs() / quad.abs().max(f64::MIN_POSITIVE))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(vec![
        Check::from_deviations("gamma_analytic_vs_quadrature", 1e-8, &devs),
        Check::from_deviations("near_pole_quadrature_vs_closed_form", 1e-8, &near_pole),
    ])
}

fn random_generator(rng: &mut StdRng) -> HermitianGenerator {
    // Spread magnitudes over several decades.
    let scale = 10f64.powf(rng.random_range(-3.0..3.0));
    HermitianGenerator::new(
        scale * rng.random_range(-1.0..1.0),
        Complex64::new(scale * rng.random_range(-1.0..1.0), scale * rng.random_range(-1.0..1.0)),
    )
}

/// Uniform draw from the Bloch ball.
pub fn random_state(rng: &mut StdRng) -> QubitState {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let radius = rng.random::<f64>().cbrt();
    let rho = (1.0 - z * z).sqrt();
    let (x, y, z) = (radius * rho * phi.cos(), radius * rho * phi.sin(), radius * z);
    QubitState::new(0.5 * (1.0 + z), Complex64::new(0.5 * x, 0.5 * y)).expect("Bloch ball point is a state")
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn norms_suite() -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut norm_dev = Vec::with_capacity(RANDOM_SAMPLES);
    let mut eig_dev = Vec::with_capacity(RANDOM_SAMPLES);
    for _ in 0..RANDOM_SAMPLES {
        let g = random_generator(&mut rng);
        let d11 = Complex64::new(g.d11, 0.0);
        let (l1, l2) = oracles::hermitian_eigenvalues([[d11, g.d10], [g.d10.conj(), -d11]]);
        let n = qubit::norms(&g);
        let op = l1.abs().max(l2.abs());
        let hs = (l1 * l1 + l2 * l2).sqrt();
        let tr = l1.abs() + l2.abs();
        norm_dev.push(rel(n.op, op).max(rel(n.hs, hs)).max(rel(n.tr, tr)));
        let (e1, e2) = qubit::eigenvalues_2x2_hermitian(g.d11, -g.d11, g.d10);
        eig_dev.push(rel(e1, l1).max(rel(e2, l2)));
    }

    let mut fid_dev = Vec::with_capacity(RANDOM_SAMPLES);
    let mut sym_dev = Vec::with_capacity(RANDOM_SAMPLES);
    let mut self_dev = Vec::with_capacity(RANDOM_SAMPLES);
    for _ in 0..RANDOM_SAMPLES {
        let a = random_state(&mut rng);
        let b = random_state(&mut rng);
        let ab = qubit::fidelity(&a, &b).expect("valid states");
        let ba = qubit::fidelity(&b, &a).expect("valid states");
        fid_dev.push((ab - oracles::fidelity_by_matrix_sqrt(&a, &b)).abs());
        sym_dev.push((ab - ba).abs());
        self_dev.push(qubit::bures_angle(&a, &a).expect("valid state").abs());
    }

    vec![
        Check::from_deviations("norms_vs_eigensolver", 1e-14, &norm_dev),
        Check::from_deviations("eigenvalues_vs_eigensolver", 1e-14, &eig_dev),
        Check::from_deviations("fidelity_vs_matrix_sqrt", 1e-12, &fid_dev),
        Check::from_deviations("fidelity_symmetry", 1e-14, &sym_dev),
        Check::from_deviations("bures_self_distance", 1e-12, &self_dev),
    ]
}

fn derivatives() -> Result<Vec<Check>> {
    // Central differences need t − h ≥ 0, so the t = 0 sample is skipped.
    let times: Vec<f64> = jc_times().into_iter().filter(|&t| t >= FD_STEP).collect();
    let jc = jc_grid()
        .par_iter()
        .map(|(env, spec)| {
            let mut worst = 0.0f64;
            for &t in &times {
                let g = jc::generator_jc(t, env, spec)?;
                let rho11 = |x: f64| jc::evolve_jc(x, env, spec).map_or(f64::NAN, |s| s.rho11());
                let re10 = |x: f64| jc::evolve_jc(x, env, spec).map_or(f64::NAN, |s| s.rho10().re);
                let im10 = |x: f64| jc::evolve_jc(x, env, spec).map_or(f64::NAN, |s| s.rho10().im);
                worst = worst
                    .max((oracles::finite_difference(rho11, t, FD_STEP) - g.d11).abs())
                    .max((oracles::finite_difference(re10, t, FD_STEP) - g.d10.re).abs())
                    .max((oracles::finite_difference(im10, t, FD_STEP) - g.d10.im).abs());
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut vartheta = Vec::new();
    for &g0 in &JC_GAMMA0 {
        let spec = LorentzianSpectrum::new(g0, JC_LAMBDA)?;
        for &t in &times {
            let fd = oracles::finite_difference(|x| jc::vartheta(x, &spec).unwrap_or(f64::NAN), t, FD_STEP);
            vartheta.push((fd - jc::alpha(t, &spec)?).abs());
        }
    }

    let grid = dephasing_grid();
    let rate = grid
        .par_iter()
        .map(|(env, spec, t)| {
            let fd = oracles::finite_difference(
                |x| dephasing::gamma_analytic(x, env, spec).unwrap_or(f64::NAN),
                *t,
                FD_STEP,
            );
            Ok((fd - dephasing::gamma_rate(*t, env, spec)?).abs())
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut residual = Vec::new();
    for (env, spec, t) in &grid {
        let mut zs = vec![dephasing::gamma_rate_closed_form(*t, env, spec)];
        if !spec.in_pole_window() {
            zs.push(dephasing::gamma_closed_form(*t, env, spec));
        }
        // Deviation in units of the allowed residual, so the tolerance is 1.
        residual.extend(zs.iter().map(|z| z.im.abs() / (TOL_IMAG * (1.0 + z.re.abs()))));
    }

    Ok(vec![
        Check::from_deviations("jc_generator_vs_finite_difference", 1e-7, &jc),
        Check::from_deviations("vartheta_rate_is_alpha", 1e-8, &vartheta),
        Check::from_deviations("gamma_rate_vs_finite_difference", 1e-6, &rate),
        Check::from_deviations("closed_form_imaginary_residual", 1.0, &residual),
    ])
}
