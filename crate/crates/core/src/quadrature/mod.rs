//! Quadrature nodes on `[0, 1]`, their Lagrange basis, the subinterval
//! structure they induce and the integrated weight matrix.
//!
//! Subinterval boundaries follow the endpoint convention: the boundaries
//! `ξ^R_0 = 0 < ξ^R_1 < ... < ξ^R_N = 1` are the nodes together with
//! whichever of `0` and `1` is not already a node, so `N` is `M - 1`, `M` or
//! `M + 1` depending on how many endpoints the node set contains.
//!
//! All indices in this module are zero-based: node `m` is `nodes()[m]` and
//! subinterval `n` spans `[boundaries()[n], boundaries()[n + 1]]`.

mod legendre;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::error::{Result, SdcError};

/// Named node families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeFamily {
    /// Equispaced, both endpoints (the midpoint for a single node).
    Uniform,
    /// Chebyshev-Gauss points of the first kind, no endpoints.
    Chebyshev,
    /// Gauss-Legendre, no endpoints.
    GaussLegendre,
    /// Radau IIA, right endpoint only.
    GaussRadauIIA,
    /// Gauss-Lobatto, both endpoints.
    GaussLobatto,
}

impl NodeFamily {
    pub const ALL: [NodeFamily; 5] = [
        NodeFamily::Uniform,
        NodeFamily::Chebyshev,
        NodeFamily::GaussLegendre,
        NodeFamily::GaussRadauIIA,
        NodeFamily::GaussLobatto,
    ];

    /// Smallest supported node count.
    pub fn min_nodes(self) -> usize {
        match self {
            NodeFamily::GaussLobatto => 2,
            _ => 1,
        }
    }

    /// Whether the node set is invariant under `x -> 1 - x`.
    pub fn is_symmetric(self) -> bool {
        !matches!(self, NodeFamily::GaussRadauIIA)
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeFamily::Uniform => "uniform",
            NodeFamily::Chebyshev => "chebyshev",
            NodeFamily::GaussLegendre => "legendre",
            NodeFamily::GaussRadauIIA => "radau",
            NodeFamily::GaussLobatto => "lobatto",
        }
    }
}

impl fmt::Display for NodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Nodes of `family` with `m` points on `[0, 1]`, strictly increasing.
pub fn make_nodes(family: NodeFamily, m: usize) -> Result<Vec<f64>> {
    if m < family.min_nodes() {
        return Err(SdcError::config(alloc::format!(
            "{family} nodes need at least {} points, got {m}",
            family.min_nodes()
        )));
    }
    let to_unit = |s: f64| 0.5 * (1.0 + s);
    let mut nodes: Vec<f64> = match family {
        NodeFamily::Uniform if m == 1 => vec![0.5],
        NodeFamily::Uniform => (0..m).map(|k| k as f64 / (m - 1) as f64).collect(),
        NodeFamily::Chebyshev => (1..=m)
            .map(|k| 0.5 * (1.0 - libm::cos((2 * k - 1) as f64 * PI / (2 * m) as f64)))
            .collect(),
        NodeFamily::GaussLegendre => legendre::gauss_legendre(m).0.into_iter().map(to_unit).collect(),
        NodeFamily::GaussRadauIIA => legendre::radau_right(m).into_iter().map(to_unit).collect(),
        NodeFamily::GaussLobatto => legendre::lobatto(m).into_iter().map(to_unit).collect(),
    };
    if family.is_symmetric() {
        for k in 0..m / 2 {
            nodes[m - 1 - k] = 1.0 - nodes[k];
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.5;
        }
    }
    match family {
        NodeFamily::Uniform | NodeFamily::GaussLobatto if m >= 2 => {
            nodes[0] = 0.0;
            nodes[m - 1] = 1.0;
        }
        NodeFamily::GaussRadauIIA => nodes[m - 1] = 1.0,
        _ => {}
    }
    Ok(nodes)
}

/// Builds the full rule for a named family.
pub fn make_rule(family: NodeFamily, m: usize) -> Result<QuadratureRule> {
    let nodes = make_nodes(family, m)?;
    QuadratureRule::build(Some(family), nodes)
}

/// An interpolatory quadrature rule on `[0, 1]` with its subinterval weights.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    family: Option<NodeFamily>,
    nodes: Vec<f64>,
    boundaries: Vec<f64>,
    node_boundary: Vec<usize>,
    /// Row-major `N x M`.
    weights: Vec<f64>,
    denominators: Vec<f64>,
    aux_nodes: Vec<f64>,
    aux_weights: Vec<f64>,
}

impl QuadratureRule {
    /// Rule of a named family; same as [`make_rule`].
    pub fn new(family: NodeFamily, m: usize) -> Result<Self> {
        make_rule(family, m)
    }

    /// Rule on a user-supplied node set. Nodes must be finite, strictly
    /// increasing and inside `[0, 1]`.
    pub fn from_nodes(nodes: &[f64]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(SdcError::config("node set is empty"));
        }
        if nodes.iter().any(|x| !x.is_finite() || *x < 0.0 || *x > 1.0) {
            return Err(SdcError::config("nodes must lie in [0, 1]"));
        }
        if nodes.windows(2).any(|p| p[0] >= p[1]) {
            return Err(SdcError::config("nodes must be strictly increasing"));
        }
        Self::build(None, nodes.to_vec())
    }

    fn build(family: Option<NodeFamily>, nodes: Vec<f64>) -> Result<Self> {
        let m = nodes.len();
        let mut boundaries = Vec::with_capacity(m + 2);
        if nodes[0] != 0.0 {
            boundaries.push(0.0);
        }
        let offset = boundaries.len();
        boundaries.extend_from_slice(&nodes);
        if nodes[m - 1] != 1.0 {
            boundaries.push(1.0);
        }
        let node_boundary = (0..m).map(|k| k + offset).collect();

        let denominators = (0..m)
            .map(|j| (0..m).filter(|&k| k != j).map(|k| nodes[j] - nodes[k]).product())
            .collect();

        // exact for degree <= 2 * (ceil(M/2) + 2) - 1 >= M - 1
        let (aux_nodes, aux_weights) = legendre::gauss_legendre(m.div_ceil(2) + 2);

        let mut rule = QuadratureRule {
            family,
            nodes,
            boundaries,
            node_boundary,
            weights: Vec::new(),
            denominators,
            aux_nodes,
            aux_weights,
        };
        let n_sub = rule.num_subintervals();
        let mut weights = Vec::with_capacity(n_sub * m);
        for n in 0..n_sub {
            let (a, b) = rule.subinterval(n);
            for j in 0..m {
                weights.push(rule.integrate_basis(j, a, b));
            }
        }
        rule.weights = weights;
        Ok(rule)
    }

    pub fn family(&self) -> Option<NodeFamily> {
        self.family
    }

    /// `M`.
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// `N`.
    pub fn num_subintervals(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `ξ^R_0 .. ξ^R_N`.
    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn subinterval(&self, n: usize) -> (f64, f64) {
        (self.boundaries[n], self.boundaries[n + 1])
    }

    /// Length of subinterval `n` relative to the step (`h_n / h`).
    pub fn subinterval_fraction(&self, n: usize) -> f64 {
        self.boundaries[n + 1] - self.boundaries[n]
    }

    /// Index into [`boundaries`](Self::boundaries) of node `m`.
    pub fn node_boundary_index(&self, m: usize) -> usize {
        self.node_boundary[m]
    }

    pub fn includes_left(&self) -> bool {
        self.nodes[0] == 0.0
    }

    pub fn includes_right(&self) -> bool {
        self.nodes[self.nodes.len() - 1] == 1.0
    }

    /// `w_{n,m} = ∫ ℓ_m` over subinterval `n`.
    pub fn weight(&self, n: usize, m: usize) -> f64 {
        self.weights[n * self.num_nodes() + m]
    }

    pub fn weight_row(&self, n: usize) -> &[f64] {
        let m = self.num_nodes();
        &self.weights[n * m..(n + 1) * m]
    }

    /// Weights of the rule over the whole of `[0, 1]` (column sums).
    pub fn full_weights(&self) -> Vec<f64> {
        let m = self.num_nodes();
        (0..m)
            .map(|j| (0..self.num_subintervals()).map(|n| self.weight(n, j)).sum())
            .collect()
    }

    /// `c_m = Π_{k≠m} (ξ_m - ξ_k)`.
    pub fn denominators(&self) -> &[f64] {
        &self.denominators
    }

    /// Lagrange basis polynomial `ℓ_m(x)`.
    pub fn eval_lagrange(&self, m: usize, x: f64) -> f64 {
        let prod: f64 = self
            .nodes
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != m)
            .map(|(_, &xk)| x - xk)
            .product();
        prod / self.denominators[m]
    }

    /// Exact integral of `ℓ_m` over `[a, b]`.
    pub fn integrate_basis(&self, m: usize, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .aux_nodes
            .iter()
            .zip(&self.aux_weights)
            .map(|(&s, &w)| w * self.eval_lagrange(m, mid + half * s))
            .sum::<f64>()
    }

    /// `max_m max_{x∈[0,1]} |ℓ_m(x)|`.
    pub fn lebesgue_max(&self) -> f64 {
        const SAMPLES: usize = 2048;
        let mut best = 0.0_f64;
        for m in 0..self.num_nodes() {
            let f = |x: f64| libm::fabs(self.eval_lagrange(m, x));
            let mut arg = 0usize;
            let mut val = f(0.0);
            for i in 1..=SAMPLES {
                let v = f(i as f64 / SAMPLES as f64);
                if v > val {
                    val = v;
                    arg = i;
                }
            }
            let lo = arg.saturating_sub(1) as f64 / SAMPLES as f64;
            let hi = (arg + 1).min(SAMPLES) as f64 / SAMPLES as f64;
            best = best.max(val).max(golden_max(f, lo, hi));
        }
        best
    }

    /// Maximum of `|ℓ_m(x)|` over `samples` equispaced points of `[0, 1]`
    /// (both endpoints included), without refinement.
    pub fn lebesgue_max_sampled(&self, samples: usize) -> f64 {
        let last = samples.max(2) - 1;
        let mut best = 0.0_f64;
        for m in 0..self.num_nodes() {
            for i in 0..=last {
                let x = i as f64 / last as f64;
                best = best.max(libm::fabs(self.eval_lagrange(m, x)));
            }
        }
        best
    }

    /// `W_n = Σ_m ∫ |ℓ_m|` over each subinterval, splitting every `ℓ_m` at its
    /// roots (the other nodes) inside the subinterval.
    pub fn wn_constants(&self) -> Vec<f64> {
        (0..self.num_subintervals())
            .map(|n| {
                let (a, b) = self.subinterval(n);
                (0..self.num_nodes())
                    .map(|m| {
                        let mut cuts: Vec<f64> = self
                            .nodes
                            .iter()
                            .enumerate()
                            .filter(|&(k, &x)| k != m && x > a && x < b)
                            .map(|(_, &x)| x)
                            .collect();
                        cuts.insert(0, a);
                        cuts.push(b);
                        cuts.windows(2)
                            .map(|p| libm::fabs(self.integrate_basis(m, p[0], p[1])))
                            .sum::<f64>()
                    })
                    .sum()
            })
            .collect()
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

#[cfg(test)]
mod tests;
