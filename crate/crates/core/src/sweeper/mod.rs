//! Provisional solutions, correction sweeps, the implicit substep solver,
//! time stepping and the fully implicit collocation solve.
//!
//! A sweep maps iterate `p` to `p + 1` over the subintervals `n = 1..N` of a
//! [`QuadratureRule`](crate::quadrature::QuadratureRule). Every kind shares
//! the quadrature term `h Σ_m w_{n,m} f(η_m^{[p]})` and differs only in the
//! low-order bracket added to it. Iterates hold a value at every subinterval
//! boundary, so `η_N` is always the value at `t = h`.

mod collocation;
mod newton;
mod scheme;
mod solution;
mod sweep;

pub use collocation::{collocation_integrate, collocation_residual, collocation_solve};
pub use newton::implicit_substep;
pub use scheme::{Provisional, SweepKind, SweepScheme};
pub use solution::NodeSolution;
pub use sweep::{integrate, provisional, solve_step, step, sweep, StepOutcome};

/// Tolerances for Newton solves and the optional iterate-to-convergence mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative Newton step tolerance.
    pub newton_tol: f64,
    /// Absolute floor on the Newton step tolerance.
    pub newton_abs_tol: f64,
    pub newton_max_iter: usize,
    /// When set, sweep until successive iterates differ by less than this
    /// (max-norm over all boundary values) instead of a fixed count.
    pub fixed_point_tol: Option<f64>,
    /// Sweep cap in fixed-point mode.
    pub max_sweeps: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            newton_tol: 1e-12,
            newton_abs_tol: 1e-14,
            newton_max_iter: 50,
            fixed_point_tol: None,
            max_sweeps: 500,
        }
    }
}

impl SolveOptions {
    pub(crate) fn validate(&self) -> crate::Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.newton_tol) || !positive(self.newton_abs_tol) {
            return Err(crate::SdcError::config("Newton tolerances must be positive"));
        }
        if let Some(tol) = self.fixed_point_tol {
            if !positive(tol) {
                return Err(crate::SdcError::config("fixed-point tolerance must be positive"));
            }
        }
        if self.newton_max_iter == 0 || self.max_sweeps == 0 {
            return Err(crate::SdcError::config("iteration caps must be at least 1"));
        }
        Ok(())
    }
}
