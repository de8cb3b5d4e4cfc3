//! Right-hand sides `y' = f(y)` with an optional implicit/explicit split
//! `f = f_I + f_E`, and the test problems used throughout the crate.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Result, SdcError};
use crate::quadrature::{make_rule, NodeFamily};
use crate::scalar::Scalar;
use crate::sweeper::{collocation_integrate, SolveOptions};

/// An autonomous ODE system.
///
/// Implementations must be pure: the same input always gives the same
/// output. Jacobians are row-major `dim x dim`.
pub trait OdeSystem<S: Scalar = f64> {
    fn name(&self) -> &str;

    fn dim(&self) -> usize;

    fn initial_state(&self) -> Vec<S>;

    /// Default end time of the problem's experiments.
    fn final_time(&self) -> f64;

    fn rhs(&self, y: &[S], out: &mut [S]);

    /// Whether [`rhs_implicit`](Self::rhs_implicit) and
    /// [`rhs_explicit`](Self::rhs_explicit) describe a real split.
    fn has_split(&self) -> bool {
        false
    }

    fn rhs_implicit(&self, y: &[S], out: &mut [S]) {
        self.rhs(y, out);
    }

    fn rhs_explicit(&self, _y: &[S], out: &mut [S]) {
        out.fill(S::zero());
    }

    /// Writes `∂f/∂y` and returns `true`, or returns `false` when no
    /// analytic Jacobian is available.
    fn jacobian(&self, _y: &[S], _out: &mut [S]) -> bool {
        false
    }

    /// Jacobian of `f_I`; same contract as [`jacobian`](Self::jacobian).
    fn jacobian_implicit(&self, _y: &[S], _out: &mut [S]) -> bool {
        false
    }

    /// `Some(λ)` when `f(y) = λ y` on a scalar state. Lets implicit solves
    /// use the closed form `a / (1 - α λ)`.
    fn linear_coefficient(&self) -> Option<S> {
        None
    }

    /// Lipschitz constant of `f`, diagnostic only.
    fn lipschitz_hint(&self) -> Option<f64> {
        None
    }

    fn exact_solution(&self, _t: f64) -> Option<Vec<S>> {
        None
    }
}

/// `y' = λ y`, `y(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearProblem<S = f64> {
    pub lambda: S,
    pub y0: S,
    pub final_time: f64,
}

pub fn linear_problem<S: Scalar>(lambda: S) -> LinearProblem<S> {
    LinearProblem {
        lambda,
        y0: S::one(),
        final_time: 10.0,
    }
}

impl<S: Scalar> OdeSystem<S> for LinearProblem<S> {
    fn name(&self) -> &str {
        "linear"
    }

    fn dim(&self) -> usize {
        1
    }

    fn initial_state(&self) -> Vec<S> {
        vec![self.y0]
    }

    fn final_time(&self) -> f64 {
        self.final_time
    }

    fn rhs(&self, y: &[S], out: &mut [S]) {
        out[0] = self.lambda * y[0];
    }

    // the whole right-hand side is treated implicitly
    fn has_split(&self) -> bool {
        true
    }

    fn jacobian(&self, _y: &[S], out: &mut [S]) -> bool {
        out[0] = self.lambda;
        true
    }

    fn jacobian_implicit(&self, y: &[S], out: &mut [S]) -> bool {
        self.jacobian(y, out)
    }

    fn linear_coefficient(&self) -> Option<S> {
        Some(self.lambda)
    }

    fn lipschitz_hint(&self) -> Option<f64> {
        Some(self.lambda.modulus())
    }

    fn exact_solution(&self, t: f64) -> Option<Vec<S>> {
        Some(vec![self.y0 * (self.lambda * t).exp()])
    }
}

/// `y' = c` for a constant vector `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantProblem {
    pub rate: Vec<f64>,
    pub y0: Vec<f64>,
}

impl OdeSystem<f64> for ConstantProblem {
    fn name(&self) -> &str {
        "constant"
    }

    fn dim(&self) -> usize {
        self.rate.len()
    }

    fn initial_state(&self) -> Vec<f64> {
        self.y0.clone()
    }

    fn final_time(&self) -> f64 {
        1.0
    }

    fn rhs(&self, _y: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&self.rate);
    }

    fn jacobian(&self, _y: &[f64], out: &mut [f64]) -> bool {
        out.fill(0.0);
        true
    }

    fn lipschitz_hint(&self) -> Option<f64> {
        Some(0.0)
    }

    fn exact_solution(&self, t: f64) -> Option<Vec<f64>> {
        Some(self.y0.iter().zip(&self.rate).map(|(y, c)| y + c * t).collect())
    }
}

/// Nonlinear pendulum `(y1, y2)' = (y2, -sin y1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pendulum {
    pub y0: [f64; 2],
    pub final_time: f64,
}

pub fn pendulum_problem() -> Pendulum {
    Pendulum {
        y0: [0.0, 1.0],
        final_time: 10.0,
    }
}

impl Pendulum {
    /// `y2²/2 - cos y1`, conserved by the exact flow.
    pub fn energy(y: &[f64]) -> f64 {
        0.5 * y[1] * y[1] - libm::cos(y[0])
    }
}

impl OdeSystem<f64> for Pendulum {
    fn name(&self) -> &str {
        "pendulum"
    }

    fn dim(&self) -> usize {
        2
    }

    fn initial_state(&self) -> Vec<f64> {
        self.y0.to_vec()
    }

    fn final_time(&self) -> f64 {
        self.final_time
    }

    fn rhs(&self, y: &[f64], out: &mut [f64]) {
        out[0] = y[1];
        out[1] = -libm::sin(y[0]);
    }

    fn jacobian(&self, y: &[f64], out: &mut [f64]) -> bool {
        out.copy_from_slice(&[0.0, 1.0, -libm::cos(y[0]), 0.0]);
        true
    }

    fn lipschitz_hint(&self) -> Option<f64> {
        Some(1.0)
    }
}

/// Van der Pol in the rescaled form
/// `y1' = y2`, `y2' = (-y1 + (1 - y1²) y2) / ε`, split as
/// `f_E = (y2, 0)` and `f_I = (0, (-y1 + (1 - y1²) y2) / ε)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VanDerPol {
    pub epsilon: f64,
    pub y0: [f64; 2],
    pub final_time: f64,
}

pub fn vdp_problem(epsilon: f64) -> Result<VanDerPol> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(SdcError::config("Van der Pol needs epsilon > 0"));
    }
    Ok(VanDerPol {
        epsilon,
        y0: [2.0, -0.666666654321],
        final_time: 4.0,
    })
}

impl VanDerPol {
    fn stiff_part(&self, y: &[f64]) -> f64 {
        (-y[0] + (1.0 - y[0] * y[0]) * y[1]) / self.epsilon
    }
}

impl OdeSystem<f64> for VanDerPol {
    fn name(&self) -> &str {
        "vdp"
    }

    fn dim(&self) -> usize {
        2
    }

    fn initial_state(&self) -> Vec<f64> {
        self.y0.to_vec()
    }

    fn final_time(&self) -> f64 {
        self.final_time
    }

    fn rhs(&self, y: &[f64], out: &mut [f64]) {
        out[0] = y[1];
        out[1] = self.stiff_part(y);
    }

    fn has_split(&self) -> bool {
        true
    }

    fn rhs_implicit(&self, y: &[f64], out: &mut [f64]) {
        out[0] = 0.0;
        out[1] = self.stiff_part(y);
    }

    fn rhs_explicit(&self, y: &[f64], out: &mut [f64]) {
        out[0] = y[1];
        out[1] = 0.0;
    }

    fn jacobian(&self, y: &[f64], out: &mut [f64]) -> bool {
        let e = self.epsilon;
        out.copy_from_slice(&[0.0, 1.0, (-1.0 - 2.0 * y[0] * y[1]) / e, (1.0 - y[0] * y[0]) / e]);
        true
    }

    fn jacobian_implicit(&self, y: &[f64], out: &mut [f64]) -> bool {
        let e = self.epsilon;
        out.copy_from_slice(&[0.0, 0.0, (-1.0 - 2.0 * y[0] * y[1]) / e, (1.0 - y[0] * y[0]) / e]);
        true
    }
}

/// Parameters accepted by [`by_name`]. Unset fields take each problem's
/// defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProblemParams {
    pub lambda: Option<f64>,
    pub epsilon: Option<f64>,
    pub final_time: Option<f64>,
    pub y0: Option<Vec<f64>>,
}

/// Real-valued problem chosen at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Linear(LinearProblem<f64>),
    Pendulum(Pendulum),
    VanDerPol(VanDerPol),
    Constant(ConstantProblem),
}

pub const PROBLEM_NAMES: [&str; 4] = ["linear", "pendulum", "vdp", "constant"];

/// Looks up a problem by registry name (`linear`, `pendulum`, `vdp`,
/// `constant`).
pub fn by_name(name: &str, params: &ProblemParams) -> Result<Problem> {
    let check_dim = |y0: &Vec<f64>, dim: usize| -> Result<()> {
        if y0.len() != dim {
            return Err(SdcError::config(alloc::format!(
                "problem '{name}' has dimension {dim}, y0 has {} entries",
                y0.len()
            )));
        }
        Ok(())
    };
    let mut problem = match name {
        "linear" => Problem::Linear(linear_problem(params.lambda.unwrap_or(-1.0))),
        "pendulum" => Problem::Pendulum(pendulum_problem()),
        "vdp" => Problem::VanDerPol(vdp_problem(params.epsilon.unwrap_or(1.0))?),
        "constant" => Problem::Constant(ConstantProblem {
            rate: vec![params.lambda.unwrap_or(1.0)],
            y0: vec![0.0],
        }),
        other => {
            return Err(SdcError::config(alloc::format!(
                "unknown problem '{other}'; valid: {}",
                PROBLEM_NAMES.join(", ")
            )))
        }
    };
    if let Some(y0) = &params.y0 {
        check_dim(y0, problem.dim())?;
        match &mut problem {
            Problem::Linear(p) => p.y0 = y0[0],
            Problem::Pendulum(p) => p.y0 = [y0[0], y0[1]],
            Problem::VanDerPol(p) => p.y0 = [y0[0], y0[1]],
            Problem::Constant(p) => p.y0 = y0.clone(),
        }
    }
    if let Some(t) = params.final_time {
        if t <= 0.0 || !t.is_finite() {
            return Err(SdcError::config("final time must be positive"));
        }
        match &mut problem {
            Problem::Linear(p) => p.final_time = t,
            Problem::Pendulum(p) => p.final_time = t,
            Problem::VanDerPol(p) => p.final_time = t,
            Problem::Constant(_) => {}
        }
    }
    Ok(problem)
}

impl Problem {
    fn inner(&self) -> &dyn OdeSystem<f64> {
        match self {
            Problem::Linear(p) => p,
            Problem::Pendulum(p) => p,
            Problem::VanDerPol(p) => p,
            Problem::Constant(p) => p,
        }
    }
}

impl OdeSystem<f64> for Problem {
    fn name(&self) -> &str {
        self.inner().name()
    }
    fn dim(&self) -> usize {
        self.inner().dim()
    }
    fn initial_state(&self) -> Vec<f64> {
        self.inner().initial_state()
    }
    fn final_time(&self) -> f64 {
        match self {
            Problem::Constant(_) => 1.0,
            _ => self.inner().final_time(),
        }
    }
    fn rhs(&self, y: &[f64], out: &mut [f64]) {
        self.inner().rhs(y, out)
    }
    fn has_split(&self) -> bool {
        self.inner().has_split()
    }
    fn rhs_implicit(&self, y: &[f64], out: &mut [f64]) {
        self.inner().rhs_implicit(y, out)
    }
    fn rhs_explicit(&self, y: &[f64], out: &mut [f64]) {
        self.inner().rhs_explicit(y, out)
    }
    fn jacobian(&self, y: &[f64], out: &mut [f64]) -> bool {
        self.inner().jacobian(y, out)
    }
    fn jacobian_implicit(&self, y: &[f64], out: &mut [f64]) -> bool {
        self.inner().jacobian_implicit(y, out)
    }
    fn linear_coefficient(&self) -> Option<f64> {
        self.inner().linear_coefficient()
    }
    fn lipschitz_hint(&self) -> Option<f64> {
        self.inner().lipschitz_hint()
    }
    fn exact_solution(&self, t: f64) -> Option<Vec<f64>> {
        self.inner().exact_solution(t)
    }
}

/// Which part of the right-hand side an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsPart {
    Full,
    Implicit,
}

pub(crate) fn eval_part<S: Scalar, P: OdeSystem<S> + ?Sized>(system: &P, part: RhsPart, y: &[S], out: &mut [S]) {
    match part {
        RhsPart::Full => system.rhs(y, out),
        RhsPart::Implicit => system.rhs_implicit(y, out),
    }
}

/// Central-difference Jacobian of `f` or `f_I` with increment
/// `ε^{1/3} (1 + |y_j|)`.
pub fn fd_jacobian<S: Scalar, P: OdeSystem<S> + ?Sized>(system: &P, part: RhsPart, y: &[S], out: &mut [S]) {
    let d = y.len();
    let mut yp = y.to_vec();
    let mut fp = vec![S::zero(); d];
    let mut fm = vec![S::zero(); d];
    for j in 0..d {
        let inc = libm::cbrt(f64::EPSILON) * (1.0 + y[j].modulus());
        yp[j] = y[j] + S::from_real(inc);
        eval_part(system, part, &yp, &mut fp);
        yp[j] = y[j] - S::from_real(inc);
        eval_part(system, part, &yp, &mut fm);
        yp[j] = y[j];
        for i in 0..d {
            out[i * d + j] = (fp[i] - fm[i]) * (0.5 / inc);
        }
    }
}

/// Jacobian of the requested part, analytic when available.
pub(crate) fn jacobian_of<S: Scalar, P: OdeSystem<S> + ?Sized>(system: &P, part: RhsPart, y: &[S], out: &mut [S]) {
    let supplied = match part {
        RhsPart::Full => system.jacobian(y, out),
        RhsPart::Implicit => system.jacobian_implicit(y, out),
    };
    if !supplied {
        fd_jacobian(system, part, y, out);
    }
}

/// `|f(y) - f_I(y) - f_E(y)|_∞ / (1 + |f(y)|_∞)`.
pub fn split_defect<P: OdeSystem<f64> + ?Sized>(system: &P, y: &[f64]) -> f64 {
    let d = system.dim();
    let (mut f, mut fi, mut fe) = (vec![0.0; d], vec![0.0; d], vec![0.0; d]);
    system.rhs(y, &mut f);
    system.rhs_implicit(y, &mut fi);
    system.rhs_explicit(y, &mut fe);
    let scale = 1.0 + f.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    f.iter()
        .zip(fi.iter().zip(&fe))
        .map(|(a, (b, c))| (a - b - c).abs())
        .fold(0.0, f64::max)
        / scale
}

/// Max entry-wise gap between the supplied Jacobian of `part` and central
/// differences, or `None` if no Jacobian is supplied.
pub fn jacobian_defect<P: OdeSystem<f64> + ?Sized>(system: &P, part: RhsPart, y: &[f64]) -> Option<f64> {
    let d = system.dim();
    let mut analytic = vec![0.0; d * d];
    let supplied = match part {
        RhsPart::Full => system.jacobian(y, &mut analytic),
        RhsPart::Implicit => system.jacobian_implicit(y, &mut analytic),
    };
    if !supplied {
        return None;
    }
    let mut fd = vec![0.0; d * d];
    fd_jacobian(system, part, y, &mut fd);
    Some(analytic.iter().zip(&fd).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// Final state of a high-accuracy reference run: 8-point Gauss-Legendre
/// collocation with the nonlinear system solved to `1e-13`.
pub fn reference_solution<P: OdeSystem<f64> + ?Sized>(system: &P, final_time: f64, steps: usize) -> Result<Vec<f64>> {
    let rule = make_rule(NodeFamily::GaussLegendre, 8)?;
    let opts = SolveOptions {
        newton_tol: 1e-13,
        ..SolveOptions::default()
    };
    let y0 = system.initial_state();
    collocation_integrate(&rule, system, &y0, final_time, steps, &opts)
}

/// A reference state together with its self-check against a run on a mesh
/// twice as fine.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub state: Vec<f64>,
    pub steps: usize,
    /// Max-norm gap to the run with `2 * steps`.
    pub discrepancy: f64,
    pub label: String,
}

/// Exact solution when the problem has one, otherwise a checked
/// [`reference_solution`] on `steps` (and `2 * steps` for the check).
pub fn reference_state<P: OdeSystem<f64> + ?Sized>(system: &P, final_time: f64, steps: usize) -> Result<Reference> {
    if let Some(state) = system.exact_solution(final_time) {
        return Ok(Reference {
            state,
            steps: 0,
            discrepancy: 0.0,
            label: "exact".into(),
        });
    }
    let coarse = reference_solution(system, final_time, steps)?;
    let fine = reference_solution(system, final_time, 2 * steps)?;
    let discrepancy = coarse.iter().zip(&fine).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(Reference {
        state: fine,
        steps: 2 * steps,
        discrepancy,
        label: "gauss-legendre-8 collocation".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_closed_forms() {
        let p = linear_problem(0.0);
        assert_eq!(p.exact_solution(3.0).unwrap(), [1.0]);
        let p = linear_problem(-2.0);
        assert_eq!(p.exact_solution(10.0).unwrap()[0], libm::exp(-20.0));
        let p = linear_problem(-5.0);
        assert_eq!(p.exact_solution(10.0).unwrap()[0], libm::exp(-50.0));
    }

    #[test]
    fn pendulum_basics() {
        let p = pendulum_problem();
        assert_eq!(Pendulum::energy(&p.initial_state()), -0.5);
        let mut f = [0.0; 2];
        p.rhs(&[0.0, 1.0], &mut f);
        assert_eq!(f, [1.0, 0.0]);
        assert_eq!(p.final_time(), 10.0);
    }

    #[test]
    fn vdp_split_and_jacobian() {
        let p = vdp_problem(1.0).unwrap();
        let y = [2.0, -0.666666654321];
        assert!(split_defect(&p, &y) <= 1e-13);
        let mut j = [0.0; 4];
        assert!(p.jacobian_implicit(&y, &mut j));
        assert_eq!(j[3], 1.0 - 4.0);
        let p = vdp_problem(0.25).unwrap();
        p.jacobian_implicit(&y, &mut j);
        assert_eq!(j[3], (1.0 - 4.0) / 0.25);
        assert!(vdp_problem(0.0).is_err());
        assert!(vdp_problem(-1.0).is_err());
    }

    #[test]
    fn registry_lookup() {
        let p = by_name("vdp", &ProblemParams::default()).unwrap();
        assert_eq!(p.name(), "vdp");
        assert_eq!(p.final_time(), 4.0);
        let params = ProblemParams {
            lambda: Some(-2.0),
            final_time: Some(3.0),
            ..Default::default()
        };
        let p = by_name("linear", &params).unwrap();
        assert_eq!(p.linear_coefficient(), Some(-2.0));
        assert_eq!(p.final_time(), 3.0);
        let err = by_name("lorenz", &ProblemParams::default()).unwrap_err();
        let SdcError::Config(msg) = err else { panic!() };
        assert!(msg.contains("pendulum") && msg.contains("vdp"));
        let bad = ProblemParams {
            y0: Some(vec![1.0]),
            ..Default::default()
        };
        assert!(by_name("pendulum", &bad).is_err());
    }

    #[test]
    fn fd_jacobian_matches_linear() {
        let p = linear_problem(-3.5);
        let mut j = [0.0];
        fd_jacobian(&p, RhsPart::Full, &[0.7], &mut j);
        assert!((j[0] + 3.5).abs() < 1e-8);
    }
}
