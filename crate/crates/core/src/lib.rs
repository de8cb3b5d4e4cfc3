//! Spectral deferred correction (SDC) time integrators built on their
//! Picard-integral formulation.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! - [`quadrature`]: node families, Lagrange basis, subinterval structure and
//!   the weight matrix `w[n][m]`, plus the Lebesgue-type diagnostics.
//! - [`problems`]: the [`OdeSystem`](problems::OdeSystem) abstraction with an
//!   optional implicit/explicit split, and the linear, pendulum and
//!   Van der Pol test problems.
//! - [`sweeper`]: provisional solutions, every correction sweep (Picard,
//!   explicit, θ-implicit, semi-implicit, modified semi-implicit, trapezoidal),
//!   the Newton substep solver, time stepping and the collocation solve.
//! - [`stability`]: amplification factors `ρ(z)` and region scans.
//! - [`analysis`]: convergence studies, correction-error coefficients and the
//!   Lagrange-maximum table.
//!
//! Everything runs over either real vectors or complex scalars through the
//! [`Scalar`] trait; the complex path is what the stability module uses.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
mod error;
mod linalg;
pub mod problems;
pub mod quadrature;
mod scalar;
pub mod stability;
pub mod sweeper;

pub use error::{Result, SdcError};
pub use num_complex::Complex64;
pub use scalar::{Scalar, ScalarField};
