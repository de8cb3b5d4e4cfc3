//! Experiment harness: convergence studies with pairwise orders, the
//! correction-error coefficients of a base rule against exact integration,
//! and the maximum-Lagrange-basis table.

mod coefficients;
mod convergence;
mod table1;

pub use coefficients::{
    coefficient_order, correction_coefficients, BaseRule, CoefficientOrder, CorrectionCoefficients,
};
pub use convergence::{convergence_study, doubling_meshes, ConvergenceReport, ConvergenceRow, ERROR_FLOOR};
pub use table1::{table1_report, Table1Row, TABLE1_SAMPLES};
