//! Quantum speed-limit times for a qubit coupled to a squeezed vacuum
//! reservoir.
//!
//! Two exactly solvable models are covered:
//!
//! * [`jc`]: damped Jaynes–Cummings decay with a Lorentzian spectrum;
//! * [`dephasing`]: pure dephasing with an Ohmic-family spectrum.
//!
//! Both start from the maximally coherent state and feed their closed-form
//! trajectories into the unified bound of [`qsl`], which takes the largest of
//! the operator-, Hilbert–Schmidt- and trace-norm estimates. [`oracles`]
//! holds independent brute-force checks, and [`scan`] produces the
//! parameter-sweep datasets and verification reports used by the `qsl`
//! binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dephasing;
pub mod error;
pub mod jc;
pub mod oracles;
pub mod qsl;
pub mod quadrature;
pub mod qubit;
pub mod reservoir;
pub mod scan;

pub use dephasing::{OhmicSpectrum, Sign};
pub use error::{QslError, Result};
pub use jc::LorentzianSpectrum;
pub use qsl::QslResult;
pub use quadrature::{QuadratureOutcome, QuadratureSettings};
pub use qubit::{HermitianGenerator, NormKind, Norms, QubitState};
pub use reservoir::SqueezedEnvironment;
