use thiserror::Error;

pub type Result<T> = std::result::Result<T, QslError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QslError {
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("driving time must be positive, got {0}")]
    NonPositiveDrivingTime(f64),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("state is not positive semidefinite: rho11*(1-rho11) - |rho10|^2 = {0:e}")]
    NotPositiveSemidefinite(f64),

    #[error("imaginary residual {imag:e} exceeds tolerance for real part {real:e} in {quantity}")]
    ImaginaryResidual {
        quantity: &'static str,
        real: f64,
        imag: f64,
    },

    #[error(
        "quadrature did not converge on [{a}, {b}]: value {value:e}, error estimate {error_estimate:e} after {subdivisions} subdivisions"
    )]
    QuadratureNotConverged {
        a: f64,
        b: f64,
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("integrand returned NaN at x = {0}")]
    NanIntegrand(f64),

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root search did not converge after {0} iterations")]
    RootNotConverged(usize),

    #[error("evolution rate vanishes on [0, {0}]; speed limit undefined")]
    DegenerateEvolution(f64),

    #[error("trace drift {0:e} in master-equation propagation")]
    TraceDrift(f64),

    #[error("invalid scan configuration: {0}")]
    Config(String),
}
