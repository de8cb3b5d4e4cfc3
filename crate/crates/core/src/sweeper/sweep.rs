use alloc::vec;
use alloc::vec::Vec;

use super::newton::implicit_substep;
use super::scheme::{Provisional, SweepKind, SweepScheme};
use super::solution::NodeSolution;
use super::SolveOptions;
use crate::error::{Result, SdcError};
use crate::problems::OdeSystem;
use crate::quadrature::QuadratureRule;
use crate::scalar::Scalar;

fn require_split<S: Scalar, P: OdeSystem<S> + ?Sized>(system: &P, what: &str) -> Result<()> {
    if system.has_split() {
        Ok(())
    } else {
        Err(SdcError::config(alloc::format!(
            "{what} needs an implicit/explicit split, problem '{}' has none",
            system.name()
        )))
    }
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(SdcError::config("step size must be positive"))
    }
}

/// `h Σ_m w_{n,m} f(η_m)` for subinterval `n` (zero-based), added into `out`.
fn add_quadrature<S: Scalar>(rule: &QuadratureRule, prev: &NodeSolution<S>, n: usize, h: f64, out: &mut [S]) {
    let mut acc = vec![S::zero(); out.len()];
    for (m, &w) in rule.weight_row(n).iter().enumerate() {
        let fm = prev.f(rule.node_boundary_index(m));
        for (a, &x) in acc.iter_mut().zip(fm) {
            *a += x * w;
        }
    }
    for (o, a) in out.iter_mut().zip(&acc) {
        *o += *a * h;
    }
}

/// The `p = 0` iterate from `y_start` using `kind`, marching over the
/// subintervals.
pub fn provisional<S: Scalar, P: OdeSystem<S> + ?Sized>(
    rule: &QuadratureRule,
    system: &P,
    kind: Provisional,
    y_start: &[S],
    h: f64,
    opts: &SolveOptions,
) -> Result<NodeSolution<S>> {
    check_step(h)?;
    if kind.needs_split() {
        require_split(system, kind.name())?;
    }
    let d = system.dim();
    let points = rule.num_subintervals() + 1;
    let mut sol = NodeSolution::empty(d, h, points, system.has_split());
    sol.set(system, 0, y_start);
    let mut fe = vec![S::zero(); d];
    for n in 1..points {
        let hn = rule.subinterval_fraction(n - 1) * h;
        let prev = sol.value(n - 1).to_vec();
        let next = match kind {
            Provisional::CopyConstant => y_start.to_vec(),
            Provisional::ForwardEuler => {
                let f = sol.f(n - 1);
                prev.iter().zip(f).map(|(&y, &fy)| y + fy * hn).collect()
            }
            Provisional::BackwardEuler => implicit_substep(system, &prev, hn, false, opts)?,
            Provisional::ImexEuler => {
                system.rhs_explicit(&prev, &mut fe);
                let a: Vec<S> = prev.iter().zip(&fe).map(|(&y, &g)| y + g * hn).collect();
                implicit_substep(system, &a, hn, true, opts)?
            }
            Provisional::ImplicitSplitEuler => implicit_substep(system, &prev, hn, true, opts)?,
            Provisional::TrapezoidRule => {
                let f = sol.f(n - 1);
                let a: Vec<S> = prev.iter().zip(f).map(|(&y, &fy)| y + fy * (0.5 * hn)).collect();
                implicit_substep(system, &a, 0.5 * hn, false, opts)?
            }
        };
        sol.set(system, n, &next);
    }
    Ok(sol)
}

/// One correction sweep `η^{[p]} -> η^{[p+1]}`; `η_0` is carried over.
pub fn sweep<S: Scalar, P: OdeSystem<S> + ?Sized>(
    rule: &QuadratureRule,
    system: &P,
    kind: SweepKind,
    prev: &NodeSolution<S>,
    opts: &SolveOptions,
) -> Result<NodeSolution<S>> {
    if kind.needs_split() {
        require_split(system, kind.name())?;
    }
    let d = system.dim();
    let h = prev.h();
    let points = rule.num_subintervals() + 1;
    debug_assert_eq!(prev.num_points(), points);
    let mut next = NodeSolution::empty(d, h, points, system.has_split());
    next.set(system, 0, prev.eta0());
    let mut a = vec![S::zero(); d];
    for n in 1..points {
        let hn = rule.subinterval_fraction(n - 1) * h;
        a.copy_from_slice(next.value(n - 1));
        let value = match kind {
            SweepKind::Picard => {
                add_quadrature(rule, prev, n - 1, h, &mut a);
                a.clone()
            }
            SweepKind::ExplicitSdc => {
                let (fnew, fold) = (next.f(n - 1), prev.f(n - 1));
                for i in 0..d {
                    a[i] += (fnew[i] - fold[i]) * hn;
                }
                add_quadrature(rule, prev, n - 1, h, &mut a);
                a.clone()
            }
            SweepKind::ImplicitSdc { theta } => {
                let alpha = theta * hn;
                let fold = prev.f(n);
                for i in 0..d {
                    a[i] -= fold[i] * alpha;
                }
                add_quadrature(rule, prev, n - 1, h, &mut a);
                implicit_substep(system, &a, alpha, false, opts)?
            }
            SweepKind::Sisdc | SweepKind::ModifiedSisdc => {
                let fi_old = prev.f_implicit(n).expect("split cache");
                for i in 0..d {
                    a[i] -= fi_old[i] * hn;
                }
                if kind == SweepKind::Sisdc {
                    let fe_new = next.f_explicit(n - 1).expect("split cache");
                    let fe_old = prev.f_explicit(n - 1).expect("split cache");
                    for i in 0..d {
                        a[i] += (fe_new[i] - fe_old[i]) * hn;
                    }
                }
                add_quadrature(rule, prev, n - 1, h, &mut a);
                implicit_substep(system, &a, hn, true, opts)?
            }
            SweepKind::TrapezoidSdc => {
                let half = 0.5 * hn;
                let (fnew_left, fold_left, fold_right) = (next.f(n - 1), prev.f(n - 1), prev.f(n));
                for i in 0..d {
                    a[i] += (fnew_left[i] - fold_right[i] - fold_left[i]) * half;
                }
                add_quadrature(rule, prev, n - 1, h, &mut a);
                implicit_substep(system, &a, half, false, opts)?
            }
        };
        next.set(system, n, &value);
    }
    Ok(next)
}

/// Result of one step with its full final iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome<S: Scalar = f64> {
    pub solution: NodeSolution<S>,
    pub sweeps: usize,
}

/// Provisional solution followed by the configured sweeps (or sweeps to
/// `opts.fixed_point_tol`).
pub fn solve_step<S: Scalar, P: OdeSystem<S> + ?Sized>(
    rule: &QuadratureRule,
    system: &P,
    scheme: &SweepScheme,
    y_start: &[S],
    h: f64,
    opts: &SolveOptions,
) -> Result<StepOutcome<S>> {
    opts.validate()?;
    if y_start.len() != system.dim() {
        return Err(SdcError::config("initial state has the wrong dimension"));
    }
    let mut current = provisional(rule, system, scheme.provisional, y_start, h, opts)?;
    match opts.fixed_point_tol {
        None => {
            for _ in 0..scheme.corrections {
                current = sweep(rule, system, scheme.kind, &current, opts)?;
            }
            Ok(StepOutcome {
                solution: current,
                sweeps: scheme.corrections,
            })
        }
        Some(tol) => {
            let mut trace = Vec::new();
            for k in 1..=opts.max_sweeps {
                let next = sweep(rule, system, scheme.kind, &current, opts)?;
                let change = next.distance(&current);
                current = next;
                if change < tol {
                    return Ok(StepOutcome {
                        solution: current,
                        sweeps: k,
                    });
                }
                if !change.is_finite() {
                    trace.push(change);
                    break;
                }
                if trace.len() < 64 {
                    trace.push(change);
                }
            }
            Err(SdcError::Divergence {
                iterations: opts.max_sweeps,
                trace,
            })
        }
    }
}

/// Value at `t = h` after one step.
pub fn step<S: Scalar, P: OdeSystem<S> + ?Sized>(
    rule: &QuadratureRule,
    system: &P,
    scheme: &SweepScheme,
    y_start: &[S],
    h: f64,
    opts: &SolveOptions,
) -> Result<Vec<S>> {
    Ok(solve_step(rule, system, scheme, y_start, h, opts)?
        .solution
        .final_value()
        .to_vec())
}

/// `steps` uniform steps over `[0, final_time]`; returns the `steps + 1`
/// states at the step boundaries.
pub fn integrate<S: Scalar, P: OdeSystem<S> + ?Sized>(
    rule: &QuadratureRule,
    system: &P,
    scheme: &SweepScheme,
    y0: &[S],
    final_time: f64,
    steps: usize,
    opts: &SolveOptions,
) -> Result<Vec<Vec<S>>> {
    if steps == 0 {
        return Err(SdcError::config("need at least one step"));
    }
    let h = final_time / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(y0.to_vec());
    for k in 0..steps {
        let next = step(rule, system, scheme, &out[k], h, opts)?;
        out.push(next);
    }
    Ok(out)
}
