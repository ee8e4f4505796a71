//! Unified speed-limit bound from the operator, Hilbert–Schmidt and trace
//! norm evolution rates.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::error::{QslError, Result};
use crate::quadrature::{integrate_with_breakpoints, QuadratureSettings};
use crate::qubit::{infidelity, norms, HermitianGenerator, NormKind, Norms, QubitState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QslResult {
    pub tau: f64,
    pub tau_qsl: f64,
    /// `tau_qsl / tau`, in `(0, 1]`.
    pub ratio: f64,
    pub tight_norm: NormKind,
    /// Error estimate of the operator-norm time integral.
    pub quad_error: f64,
    /// `sin² L(ρ₀, ρ_τ)`.
    pub sin2_bures: f64,
    /// Time-averaged evolution rates `(1/τ)∫‖L_t‖ dt` per norm.
    pub rates: Norms,
}

/// Evaluates `max_k {1/Λ_k} · sin² L(ρ₀, ρ_τ)` for a trajectory starting in
/// the maximally coherent state.
///
/// `breakpoints` are interior times where the generator norm has a kink;
/// they seed the adaptive panels.
pub fn speed_limit<G>(
    tau: f64,
    final_state: &QubitState,
    generator: G,
    breakpoints: &[f64],
    settings: &QuadratureSettings,
) -> Result<QslResult>
where
    G: Fn(f64) -> Result<HermitianGenerator>,
{
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(QslError::NonPositiveDrivingTime(tau));
    }
    let sin2_bures = infidelity(&QubitState::maximally_coherent(), final_state)?;

    let mut points = Vec::with_capacity(breakpoints.len() + 2);
    points.push(0.0);
    points.extend(breakpoints.iter().copied().filter(|&t| t > 0.0 && t < tau));
    points.push(tau);
    points.sort_by(f64::total_cmp);
    points.dedup();

    let failure: RefCell<Option<QslError>> = RefCell::new(None);
    let mut integrals = [0.0; 3];
    let mut op_error = 0.0;
    for (slot, kind) in integrals.iter_mut().zip(NormKind::ALL) {
        let integrand = |t: f64| match generator(t) {
            Ok(g) => norms(&g).get(kind),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        };
        let outcome = integrate_with_breakpoints(integrand, &points, settings);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        let outcome = outcome?.require_converged(0.0, tau)?;
        if kind == NormKind::Op {
            op_error = outcome.error_estimate;
        }
        *slot = outcome.value;
    }

    let rates = Norms {
        op: integrals[0] / tau,
        hs: integrals[1] / tau,
        tr: integrals[2] / tau,
    };
    if !(rates.op > 0.0) {
        return Err(QslError::DegenerateEvolution(tau));
    }

    let mut tight_norm = NormKind::Op;
    let mut best = sin2_bures / rates.op;
    for kind in [NormKind::Hs, NormKind::Tr] {
        let candidate = sin2_bures / rates.get(kind);
        if candidate > best {
            best = candidate;
            tight_norm = kind;
        }
    }

    Ok(QslResult {
        tau,
        tau_qsl: best,
        ratio: best / tau,
        tight_norm,
        quad_error: op_error,
        sin2_bures,
        rates,
    })
}
