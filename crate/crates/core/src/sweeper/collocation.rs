use alloc::vec;
use alloc::vec::Vec;

use super::solution::NodeSolution;
use super::SolveOptions;
use crate::error::{Result, SdcError};
use crate::linalg::solve_in_place;
use crate::problems::{jacobian_of, OdeSystem, RhsPart};
use crate::quadrature::QuadratureRule;
use crate::scalar::{max_norm, Scalar, ScalarField};

/// Cumulative weights `A[m][j] = Σ_{n < b(m)} w_{n,j}`, where `b(m)` is the
/// boundary index of node `m`: node values satisfy
/// `η_m = η_0 + h Σ_j A[m][j] f(η_j)`.
fn cumulative_weights(rule: &QuadratureRule) -> Vec<f64> {
    let m = rule.num_nodes();
    let mut a = vec![0.0; m * m];
    for i in 0..m {
        for n in 0..rule.node_boundary_index(i) {
            for j in 0..m {
                a[i * m + j] += rule.weight(n, j);
            }
        }
    }
    a
}

/// Solves the fully implicit collocation system for one step by Newton on
/// the stacked `M·dim` node unknowns.
pub fn collocation_solve<S: Scalar, P: OdeSystem<S> + ?Sized>(
    rule: &QuadratureRule,
    system: &P,
    y_start: &[S],
    h: f64,
    opts: &SolveOptions,
) -> Result<NodeSolution<S>> {
    opts.validate()?;
    if h.is_nan() || h <= 0.0 {
        return Err(SdcError::config("step size must be positive"));
    }
    if S::FIELD == ScalarField::ComplexScalar && system.linear_coefficient().is_none() {
        return Err(SdcError::config(
            "complex arithmetic is only supported for linear scalar problems",
        ));
    }
    let d = system.dim();
    let m = rule.num_nodes();
    let size = m * d;
    let cum = cumulative_weights(rule);

    let mut y: Vec<S> = (0..m).flat_map(|_| y_start.iter().copied()).collect();
    let mut f = vec![S::zero(); size];
    let mut jac_blocks = vec![S::zero(); m * d * d];
    let mut trace = Vec::new();
    let mut converged = false;
    for _ in 0..opts.newton_max_iter {
        for j in 0..m {
            system.rhs(&y[j * d..(j + 1) * d], &mut f[j * d..(j + 1) * d]);
            jacobian_of(
                system,
                RhsPart::Full,
                &y[j * d..(j + 1) * d],
                &mut jac_blocks[j * d * d..(j + 1) * d * d],
            );
        }
        // r = η_0 + h A f(Y) - Y ; J = I - h (A ⊗ ∂f)
        let mut r = vec![S::zero(); size];
        let mut jac = vec![S::zero(); size * size];
        for i in 0..m {
            for k in 0..d {
                let row = i * d + k;
                let mut acc = S::zero();
                for j in 0..m {
                    acc += f[j * d + k] * cum[i * m + j];
                }
                r[row] = y_start[k] + acc * h - y[row];
                for j in 0..m {
                    let c = cum[i * m + j] * h;
                    for l in 0..d {
                        let col = j * d + l;
                        let id = if row == col { S::one() } else { S::zero() };
                        jac[row * size + col] = id - jac_blocks[j * d * d + k * d + l] * c;
                    }
                }
            }
        }
        solve_in_place(&mut jac, &mut r)?;
        for (yi, dx) in y.iter_mut().zip(&r) {
            *yi += *dx;
        }
        let step = max_norm(&r);
        trace.push(step);
        if !step.is_finite() {
            break;
        }
        if step <= (opts.newton_tol * max_norm(&y)).max(opts.newton_abs_tol) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SdcError::Divergence {
            iterations: trace.len(),
            trace,
        });
    }

    let points = rule.num_subintervals() + 1;
    let mut values = vec![S::zero(); points * d];
    values[..d].copy_from_slice(y_start);
    for j in 0..m {
        let b = rule.node_boundary_index(j);
        values[b * d..(b + 1) * d].copy_from_slice(&y[j * d..(j + 1) * d]);
    }
    if !rule.includes_right() {
        // η_N = η_{N-1} + h Σ_j w_{N,j} f(η_j)
        let n = points - 1;
        for j in 0..m {
            system.rhs(&y[j * d..(j + 1) * d], &mut f[j * d..(j + 1) * d]);
        }
        for k in 0..d {
            let mut acc = S::zero();
            for j in 0..m {
                acc += f[j * d + k] * rule.weight(n - 1, j);
            }
            values[n * d + k] = values[(n - 1) * d + k] + acc * h;
        }
    }
    Ok(NodeSolution::from_values(system, h, values))
}

/// Max-norm residual of `η_n = η_{n-1} + h Σ_m w_{n,m} f(η_m)` over all
/// subintervals.
pub fn collocation_residual<S: Scalar>(rule: &QuadratureRule, sol: &NodeSolution<S>) -> f64 {
    let d = sol.dim();
    let mut worst = 0.0_f64;
    for n in 1..sol.num_points() {
        for k in 0..d {
            let mut acc = S::zero();
            for (j, &w) in rule.weight_row(n - 1).iter().enumerate() {
                acc += sol.f(rule.node_boundary_index(j))[k] * w;
            }
            let r = sol.value(n)[k] - sol.value(n - 1)[k] - acc * sol.h();
            worst = worst.max(r.modulus());
        }
    }
    worst
}

/// Final state after `steps` collocation steps over `[0, final_time]`.
pub fn collocation_integrate<S: Scalar, P: OdeSystem<S> + ?Sized>(
    rule: &QuadratureRule,
    system: &P,
    y0: &[S],
    final_time: f64,
    steps: usize,
    opts: &SolveOptions,
) -> Result<Vec<S>> {
    if steps == 0 {
        return Err(SdcError::config("need at least one step"));
    }
    let h = final_time / steps as f64;
    let mut y = y0.to_vec();
    for _ in 0..steps {
        y = collocation_solve(rule, system, &y, h, opts)?.final_value().to_vec();
    }
    Ok(y)
}
