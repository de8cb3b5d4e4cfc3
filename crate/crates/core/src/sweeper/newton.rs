use alloc::vec;
use alloc::vec::Vec;

use super::SolveOptions;
use crate::error::{Result, SdcError};
use crate::linalg::solve_in_place;
use crate::problems::{eval_part, jacobian_of, OdeSystem, RhsPart};
use crate::scalar::{max_norm, Scalar, ScalarField};

/// Solves `η = a + α g(η)` with `g = f` (or `g = f_I` when `use_split`).
///
/// Linear scalar problems take the closed form `a / (1 - α λ)`; everything
/// else runs full-step Newton with the supplied Jacobian or central
/// differences. In the complex field only the closed form is available.
pub fn implicit_substep<S: Scalar, P: OdeSystem<S> + ?Sized>(
    system: &P,
    a: &[S],
    alpha: f64,
    use_split: bool,
    opts: &SolveOptions,
) -> Result<Vec<S>> {
    if alpha == 0.0 {
        return Ok(a.to_vec());
    }
    if use_split && !system.has_split() {
        return Err(SdcError::config(alloc::format!(
            "problem '{}' has no implicit/explicit split",
            system.name()
        )));
    }
    if let Some(lambda) = system.linear_coefficient() {
        let denom = S::one() - lambda * alpha;
        if denom.modulus() == 0.0 {
            return Err(SdcError::Singular);
        }
        return Ok(a.iter().map(|&x| x / denom).collect());
    }
    if S::FIELD == ScalarField::ComplexScalar {
        return Err(SdcError::config(
            "complex arithmetic is only supported for linear scalar problems",
        ));
    }
    let part = if use_split { RhsPart::Implicit } else { RhsPart::Full };
    let d = a.len();
    let mut eta = a.to_vec();
    let mut g = vec![S::zero(); d];
    let mut jac = vec![S::zero(); d * d];
    let mut trace = Vec::new();
    for _ in 0..opts.newton_max_iter {
        eval_part(system, part, &eta, &mut g);
        // residual r = a + α g(η) - η, so that J δ = r with J = I - α ∂g
        let mut delta: Vec<S> = (0..d).map(|i| a[i] + g[i] * alpha - eta[i]).collect();
        jacobian_of(system, part, &eta, &mut jac);
        for i in 0..d {
            for j in 0..d {
                let id = if i == j { S::one() } else { S::zero() };
                jac[i * d + j] = id - jac[i * d + j] * alpha;
            }
        }
        solve_in_place(&mut jac, &mut delta)?;
        for (e, dx) in eta.iter_mut().zip(&delta) {
            *e += *dx;
        }
        let step = max_norm(&delta);
        trace.push(step);
        if !step.is_finite() {
            break;
        }
        if step <= (opts.newton_tol * max_norm(&eta)).max(opts.newton_abs_tol) {
            return Ok(eta);
        }
    }
    Err(SdcError::Divergence {
        iterations: trace.len(),
        trace,
    })
}
