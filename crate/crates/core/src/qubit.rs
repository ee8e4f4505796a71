//! Exact 2×2 Hermitian algebra for single-qubit density matrices.
//!
//! States are stored as `(rho11, rho10)` only. The ground population and the
//! lower coherence are derived, so unit trace and Hermiticity hold by
//! construction and only positivity needs checking.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QslError, Result};

/// Slack allowed on the determinant before a state is rejected as non-positive.
pub const TOL_PSD: f64 = 1e-12;

/// Density matrix of a qubit in the `{|1⟩, |0⟩}` basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitState {
    rho11: f64,
    rho10: Complex64,
}

impl QubitState {
    /// Builds a state, rejecting determinants below `-TOL_PSD`.
    pub fn new(rho11: f64, rho10: Complex64) -> Result<Self> {
        let state = Self { rho11, rho10 };
        if !rho11.is_finite() || !rho10.re.is_finite() || !rho10.im.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "rho",
                value: f64::NAN,
                reason: "density-matrix entries must be finite",
            });
        }
        state.check_positive()?;
        Ok(state)
    }

    /// `(|0⟩ + |1⟩)/√2`, the initial state of both reservoir models.
    pub fn maximally_coherent() -> Self {
        Self {
            rho11: 0.5,
            rho10: Complex64::new(0.5, 0.0),
        }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            rho11: 0.5,
            rho10: Complex64::new(0.0, 0.0),
        }
    }

    pub fn rho11(&self) -> f64 {
        self.rho11
    }

    pub fn rho00(&self) -> f64 {
        1.0 - self.rho11
    }

    pub fn rho10(&self) -> Complex64 {
        self.rho10
    }

    pub fn rho01(&self) -> Complex64 {
        self.rho10.conj()
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho00()
    }

    /// Raw determinant `rho11·rho00 − |rho10|²`, without clamping.
    pub fn determinant(&self) -> f64 {
        self.rho11 * self.rho00() - self.rho10.norm_sqr()
    }

    fn check_positive(&self) -> Result<()> {
        let det = self.determinant();
        if det < -TOL_PSD {
            return Err(QslError::NotPositiveSemidefinite(det));
        }
        Ok(())
    }

    /// Full matrix `[[rho11, rho10], [rho01, rho00]]`.
    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.rho11, 0.0), self.rho10],
            [self.rho01(), Complex64::new(self.rho00(), 0.0)],
        ]
    }
}

/// The traceless Hermitian matrix `dρ/dt` with diagonal `(d11, −d11)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermitianGenerator {
    pub d11: f64,
    pub d10: Complex64,
}

impl HermitianGenerator {
    pub fn new(d11: f64, d10: Complex64) -> Self {
        Self { d11, d10 }
    }

    /// Eigenvalue magnitude `m`; the spectrum is `{+m, −m}`.
    pub fn magnitude(&self) -> f64 {
        self.d11.hypot(self.d10.norm())
    }
}

/// Which matrix norm a speed-limit rate was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Op,
    Hs,
    Tr,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::Op, NormKind::Hs, NormKind::Tr];

    pub fn as_str(&self) -> &'static str {
        match self {
            NormKind::Op => "op",
            NormKind::Hs => "hs",
            NormKind::Tr => "tr",
        }
    }
}

impl std::fmt::Display for NormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub op: f64,
    pub hs: f64,
    pub tr: f64,
}

impl Norms {
    pub fn get(&self, kind: NormKind) -> f64 {
        match kind {
            NormKind::Op => self.op,
            NormKind::Hs => self.hs,
            NormKind::Tr => self.tr,
        }
    }
}

/// Operator, Hilbert–Schmidt and trace norms of a traceless 2×2 generator.
pub fn norms(g: &HermitianGenerator) -> Norms {
    let m = g.magnitude();
    Norms {
        op: m,
        hs: std::f64::consts::SQRT_2 * m,
        tr: 2.0 * m,
    }
}

/// Eigenvalues of `[[m11, m12], [m12*, m22]]`, largest first.
pub fn eigenvalues_2x2_hermitian(m11: f64, m22: f64, m12: Complex64) -> (f64, f64) {
    let mean = 0.5 * (m11 + m22);
    let radius = (0.5 * (m11 - m22)).hypot(m12.norm());
    (mean + radius, mean - radius)
}

fn bloch(s: &QubitState) -> [f64; 3] {
    [2.0 * s.rho10.re, 2.0 * s.rho10.im, 2.0 * s.rho11 - 1.0]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Infidelity `1 − F(a, b)`.
///
/// With Bloch vectors `u`, `v` the 2×2 closed form
/// `F = tr(ab) + 2·sqrt(det a · det b)` becomes
/// `1 − F = ((1 − u·v) − sqrt((1 − |u|²)(1 − |v|²))) / 2`, which is exactly
/// zero for identical inputs.
pub fn infidelity(a: &QubitState, b: &QubitState) -> Result<f64> {
    a.check_positive()?;
    b.check_positive()?;
    let (u, v) = (bloch(a), bloch(b));
    let mixed_a = (1.0 - dot(&u, &u)).max(0.0);
    let mixed_b = (1.0 - dot(&v, &v)).max(0.0);
    let x = 0.5 * ((1.0 - dot(&u, &v)) - (mixed_a * mixed_b).sqrt());
    Ok(x.clamp(0.0, 1.0))
}

/// Uhlmann fidelity `F = tr(ab) + 2·sqrt(det a · det b)`, valid for qubits.
pub fn fidelity(a: &QubitState, b: &QubitState) -> Result<f64> {
    Ok(1.0 - infidelity(a, b)?)
}

/// Bures angle `arccos(sqrt(F))`, in `[0, π/2]`.
pub fn bures_angle(a: &QubitState, b: &QubitState) -> Result<f64> {
    // arcsin form keeps full precision near zero distance.
    Ok(infidelity(a, b)?.sqrt().asin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mixed_state_has_unit_self_fidelity() {
        let m = QubitState::maximally_mixed();
        assert_eq!(fidelity(&m, &m).unwrap(), 1.0);
    }

    #[test]
    fn orthogonal_pure_states() {
        let plus = QubitState::new(0.5, c(0.5, 0.0)).unwrap();
        let minus = QubitState::new(0.5, c(-0.5, 0.0)).unwrap();
        assert_eq!(fidelity(&plus, &minus).unwrap(), 0.0);
        assert_eq!(bures_angle(&plus, &minus).unwrap(), FRAC_PI_2);
    }

    #[test]
    fn plus_against_mixed_is_quarter_pi() {
        let plus = QubitState::maximally_coherent();
        let mixed = QubitState::maximally_mixed();
        assert!((fidelity(&plus, &mixed).unwrap() - 0.5).abs() < 1e-15);
        assert!((bures_angle(&plus, &mixed).unwrap() - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn plus_fidelity_reduces_to_real_part() {
        let plus = QubitState::maximally_coherent();
        let b = QubitState::new(0.3, c(0.2, -0.35)).unwrap();
        let expected = (1.0 + 2.0 * 0.2) / 2.0;
        assert!((fidelity(&plus, &b).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_positive_state() {
        let err = QubitState::new(0.5, c(0.6, 0.0)).unwrap_err();
        assert!(matches!(err, QslError::NotPositiveSemidefinite(_)));
    }

    #[test]
    fn tolerates_rounding_below_zero_determinant() {
        // |rho10| slightly above the pure-state bound
        let s = QubitState::new(0.5, c(0.5 + 5e-13, 0.0)).unwrap();
        assert!(s.determinant() < 0.0);
        let f = fidelity(&s, &s).unwrap();
        assert!((f - 1.0).abs() < 1e-11);
    }

    #[test]
    fn self_distance_is_exactly_zero() {
        let s = QubitState::new(0.37, c(0.11, -0.29)).unwrap();
        assert_eq!(bures_angle(&s, &s).unwrap(), 0.0);
        assert_eq!(fidelity(&s, &s).unwrap(), 1.0);
    }

    #[test]
    fn norms_of_zero_generator() {
        let n = norms(&HermitianGenerator::new(0.0, c(0.0, 0.0)));
        assert_eq!((n.op, n.hs, n.tr), (0.0, 0.0, 0.0));
    }

    #[test]
    fn norms_three_four_five() {
        let n = norms(&HermitianGenerator::new(3.0, c(0.0, 4.0)));
        assert_eq!(n.op, 5.0);
        assert!((n.hs - 5.0 * SQRT_2).abs() < 1e-14);
        assert_eq!(n.tr, 10.0);
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalues_2x2_hermitian(1.0, 1.0, c(0.0, 0.0)), (1.0, 1.0));
        assert_eq!(eigenvalues_2x2_hermitian(0.0, 0.0, c(1.0, 0.0)), (1.0, -1.0));
        let (l1, l2) = eigenvalues_2x2_hermitian(2.0, 0.0, c(1.0, 1.0));
        let r3 = 3f64.sqrt();
        assert!((l1 - (1.0 + r3)).abs() < 1e-15);
        assert!((l2 - (1.0 - r3)).abs() < 1e-15);
    }

    #[test]
    fn derived_entries() {
        let s = QubitState::new(0.25, c(0.1, 0.2)).unwrap();
        assert_eq!(s.trace(), 1.0);
        assert_eq!(s.rho01(), c(0.1, -0.2));
        let m = s.to_matrix();
        assert_eq!(m[1][1].re, 0.75);
    }
}
