use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Result, SdcError};
use crate::problems::{reference_state, OdeSystem};
use crate::quadrature::QuadratureRule;
use crate::sweeper::{integrate, SolveOptions, SweepScheme};

/// Reported in place of an exact zero error; such rows are not fitted.
pub const ERROR_FLOOR: f64 = 1e-16;
/// Rows whose error is below this multiple of the reference size are left
/// out of order fits.
const RELATIVE_FIT_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub steps: usize,
    pub h: f64,
    /// Max-norm error at the final time; `None` if the run failed.
    pub error: Option<f64>,
    /// `log2(e_prev / e)` against the previous row.
    pub order: Option<f64>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub problem: String,
    pub scheme: SweepScheme,
    pub nodes: Vec<f64>,
    pub final_time: f64,
    pub reference: String,
    /// Self-check of the reference (zero when exact).
    pub reference_discrepancy: f64,
    /// Errors below this are excluded from order fits.
    pub fit_floor: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn orders(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.order).collect()
    }

    /// The last `n` fitted orders, oldest first.
    pub fn last_orders(&self, n: usize) -> Vec<f64> {
        let fitted: Vec<f64> = self.rows.iter().filter_map(|r| r.order).collect();
        fitted[fitted.len().saturating_sub(n)..].to_vec()
    }

    pub fn final_error(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.error)
    }
}

/// `first, 2·first, …, last`.
pub fn doubling_meshes(first: usize, last: usize) -> Result<Vec<usize>> {
    if first == 0 || last < first {
        return Err(SdcError::config("mesh range must satisfy 1 <= first <= last"));
    }
    let mut out = Vec::new();
    let mut s = first;
    while s <= last {
        out.push(s);
        s *= 2;
    }
    if *out.last().unwrap() != last {
        return Err(SdcError::config(format!("{last} is not {first} times a power of two")));
    }
    Ok(out)
}

/// Integrates `system` to `final_time` on every mesh and measures the
/// final-time error against the exact solution or a collocation reference.
/// Solver failures are recorded on their row.
pub fn convergence_study<P: OdeSystem<f64> + ?Sized>(
    system: &P,
    scheme: &SweepScheme,
    rule: &QuadratureRule,
    final_time: f64,
    meshes: &[usize],
    opts: &SolveOptions,
) -> Result<ConvergenceReport> {
    if meshes.len() < 3 {
        return Err(SdcError::config("a convergence study needs at least 3 meshes"));
    }
    if meshes[0] == 0 || meshes.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(SdcError::config("meshes must double from one row to the next"));
    }
    if final_time <= 0.0 || !final_time.is_finite() {
        return Err(SdcError::config("final time must be positive"));
    }
    let largest = *meshes.last().unwrap();
    let reference = reference_state(system, final_time, largest.max(256))?;
    let scale = reference.state.iter().fold(0.0_f64, |a, y| a.max(y.abs()));
    let fit_floor = RELATIVE_FIT_FLOOR * scale.max(f64::MIN_POSITIVE);
    let y0 = system.initial_state();

    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(meshes.len());
    let mut prev_raw: Option<f64> = None;
    for &steps in meshes {
        let h = final_time / steps as f64;
        let (error, failure) = match integrate(rule, system, scheme, &y0, final_time, steps, opts) {
            Ok(traj) => {
                let end = &traj[steps];
                let e = end
                    .iter()
                    .zip(&reference.state)
                    .fold(0.0_f64, |a, (y, r)| a.max((y - r).abs()));
                if e.is_finite() {
                    (Some(e), None)
                } else {
                    (None, Some("non-finite solution".to_string()))
                }
            }
            Err(e) => (None, Some(e.to_string())),
        };
        let fits = |e: f64| e > 0.0 && e >= fit_floor;
        let order = match (prev_raw, error) {
            (Some(prev), Some(cur)) if fits(prev) && fits(cur) => Some(libm::log2(prev / cur)),
            _ => None,
        };
        prev_raw = error;
        let error = error.map(|e| if e == 0.0 { ERROR_FLOOR } else { e });
        rows.push(ConvergenceRow {
            steps,
            h,
            error,
            order,
            failure,
        });
    }
    Ok(ConvergenceReport {
        problem: system.name().to_string(),
        scheme: *scheme,
        nodes: rule.nodes().to_vec(),
        final_time,
        reference: reference.label,
        reference_discrepancy: reference.discrepancy,
        fit_floor,
        rows,
    })
}
