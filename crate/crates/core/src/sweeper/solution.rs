use alloc::vec;
use alloc::vec::Vec;

use crate::problems::OdeSystem;
use crate::quadrature::QuadratureRule;
use crate::scalar::{max_norm, Scalar};

/// One iterate `η^{[p]}` over a step: a state at every subinterval boundary
/// `ξ^R_0 .. ξ^R_N` (index 0 is `η_0`) with cached right-hand sides.
///
/// The caches are filled on construction, so `f(n) == system.rhs(value(n))`
/// always holds; split caches are present whenever the system has a split.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSolution<S: Scalar = f64> {
    dim: usize,
    h: f64,
    values: Vec<S>,
    f: Vec<S>,
    f_implicit: Option<Vec<S>>,
    f_explicit: Option<Vec<S>>,
}

impl<S: Scalar> NodeSolution<S> {
    /// Builds the iterate from boundary values (row-major, `(N + 1) x dim`)
    /// and evaluates the caches.
    pub fn from_values<P: OdeSystem<S> + ?Sized>(system: &P, h: f64, values: Vec<S>) -> Self {
        let dim = system.dim();
        debug_assert_eq!(values.len() % dim, 0);
        let mut f = vec![S::zero(); values.len()];
        let split = system.has_split();
        let mut fi = split.then(|| vec![S::zero(); values.len()]);
        let mut fe = split.then(|| vec![S::zero(); values.len()]);
        for (k, y) in values.chunks_exact(dim).enumerate() {
            let range = k * dim..(k + 1) * dim;
            system.rhs(y, &mut f[range.clone()]);
            if let (Some(fi), Some(fe)) = (fi.as_mut(), fe.as_mut()) {
                system.rhs_implicit(y, &mut fi[range.clone()]);
                system.rhs_explicit(y, &mut fe[range]);
            }
        }
        NodeSolution {
            dim,
            h,
            values,
            f,
            f_implicit: fi,
            f_explicit: fe,
        }
    }

    pub(crate) fn empty(dim: usize, h: f64, points: usize, split: bool) -> Self {
        NodeSolution {
            dim,
            h,
            values: vec![S::zero(); points * dim],
            f: vec![S::zero(); points * dim],
            f_implicit: split.then(|| vec![S::zero(); points * dim]),
            f_explicit: split.then(|| vec![S::zero(); points * dim]),
        }
    }

    /// Stores `y` at boundary `n` and refreshes its caches.
    pub(crate) fn set<P: OdeSystem<S> + ?Sized>(&mut self, system: &P, n: usize, y: &[S]) {
        let r = n * self.dim..(n + 1) * self.dim;
        self.values[r.clone()].copy_from_slice(y);
        system.rhs(y, &mut self.f[r.clone()]);
        if let (Some(fi), Some(fe)) = (self.f_implicit.as_mut(), self.f_explicit.as_mut()) {
            system.rhs_implicit(y, &mut fi[r.clone()]);
            system.rhs_explicit(y, &mut fe[r]);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `N + 1`.
    pub fn num_points(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn eta0(&self) -> &[S] {
        self.value(0)
    }

    /// State at boundary `ξ^R_n`.
    pub fn value(&self, n: usize) -> &[S] {
        &self.values[n * self.dim..(n + 1) * self.dim]
    }

    /// State at quadrature node `m` (zero-based).
    pub fn node_value(&self, rule: &QuadratureRule, m: usize) -> &[S] {
        self.value(rule.node_boundary_index(m))
    }

    /// `η_N`, the value at `t = h`.
    pub fn final_value(&self) -> &[S] {
        self.value(self.num_points() - 1)
    }

    pub fn f(&self, n: usize) -> &[S] {
        &self.f[n * self.dim..(n + 1) * self.dim]
    }

    pub fn f_implicit(&self, n: usize) -> Option<&[S]> {
        self.f_implicit.as_ref().map(|v| &v[n * self.dim..(n + 1) * self.dim])
    }

    pub fn f_explicit(&self, n: usize) -> Option<&[S]> {
        self.f_explicit.as_ref().map(|v| &v[n * self.dim..(n + 1) * self.dim])
    }

    /// Max-norm distance to another iterate over all boundary values.
    pub fn distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0_f64, |m, (a, b)| m.max((*a - *b).modulus()))
    }

    /// Whether every cache equals a fresh evaluation bit for bit.
    pub fn caches_coherent<P: OdeSystem<S> + ?Sized>(&self, system: &P) -> bool {
        let fresh = NodeSolution::from_values(system, self.h, self.values.clone());
        fresh.f == self.f && fresh.f_implicit == self.f_implicit && fresh.f_explicit == self.f_explicit
    }

    pub fn max_abs(&self) -> f64 {
        max_norm(&self.values)
    }
}
