//! Squeezed vacuum reservoir parameters shared by both models.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QslError, Result};

/// Squeezing magnitude `r ≥ 0` and phase `theta` (radians).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedEnvironment {
    pub r: f64,
    pub theta: f64,
}

impl SqueezedEnvironment {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "r",
                value: r,
                reason: "squeezing magnitude must be finite and non-negative",
            });
        }
        if !theta.is_finite() {
            return Err(QslError::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "squeezing phase must be finite",
            });
        }
        Ok(Self { r, theta })
    }

    /// Unsqueezed vacuum.
    pub fn vacuum() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    /// Effective photon number `N = sinh² r`.
    pub fn n(&self) -> f64 {
        self.r.sinh().powi(2)
    }

    /// Squeezing correlation `M = −cosh r · sinh r · e^{iθ}`.
    pub fn m(&self) -> Complex64 {
        -self.r.cosh() * self.r.sinh() * self.phase()
    }

    /// `e^{iθ}`.
    pub fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squeezing_correlation_identity() {
        for &r in &[0.0, 0.3, 1.0, 2.5] {
            for &theta in &[0.0, 1.1, 4.0] {
                let env = SqueezedEnvironment::new(r, theta).unwrap();
                let n = env.n();
                let lhs = env.m().norm_sqr();
                let rhs = n * (n + 1.0);
                assert!(n >= 0.0);
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300), "r={r} theta={theta}");
            }
        }
    }

    #[test]
    fn rejects_negative_r() {
        assert!(SqueezedEnvironment::new(-0.1, 0.0).is_err());
        assert!(SqueezedEnvironment::new(f64::NAN, 0.0).is_err());
    }
}
