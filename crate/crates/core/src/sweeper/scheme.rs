use core::fmt;

use crate::error::{Result, SdcError};
use crate::quadrature::NodeFamily;

/// Correction formula applied by one sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepKind {
    /// Quadrature of the previous iterate only.
    Picard,
    /// Forward-Euler bracket `h_n [f(η_{n-1}^{[p+1]}) - f(η_{n-1}^{[p]})]`.
    ExplicitSdc,
    /// Backward-Euler bracket scaled by `θ`; `θ = 1` is classical implicit
    /// SDC and `θ = 0` drops the implicit solve.
    ImplicitSdc { theta: f64 },
    /// Backward Euler on `f_I`, forward Euler on `f_E`.
    Sisdc,
    /// Backward Euler on `f_I` only; no `f_E` bracket.
    ModifiedSisdc,
    /// Implicit trapezoidal bracket.
    TrapezoidSdc,
}

impl SweepKind {
    /// Classical implicit SDC.
    pub const fn classical_implicit() -> Self {
        SweepKind::ImplicitSdc { theta: 1.0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SweepKind::Picard => "picard",
            SweepKind::ExplicitSdc => "explicit-sdc",
            SweepKind::ImplicitSdc { .. } => "implicit-sdc",
            SweepKind::Sisdc => "sisdc",
            SweepKind::ModifiedSisdc => "modified-sisdc",
            SweepKind::TrapezoidSdc => "trapezoid-sdc",
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match self {
            SweepKind::ImplicitSdc { theta } => Some(*theta),
            _ => None,
        }
    }

    pub fn needs_split(&self) -> bool {
        matches!(self, SweepKind::Sisdc | SweepKind::ModifiedSisdc)
    }

    /// Predictor used when none is given explicitly.
    pub fn default_provisional(&self) -> Provisional {
        match self {
            SweepKind::Picard | SweepKind::ExplicitSdc => Provisional::ForwardEuler,
            SweepKind::ImplicitSdc { .. } => Provisional::BackwardEuler,
            SweepKind::Sisdc => Provisional::ImexEuler,
            SweepKind::ModifiedSisdc => Provisional::ImexEuler,
            SweepKind::TrapezoidSdc => Provisional::TrapezoidRule,
        }
    }

    /// Orders gained per correction (before the quadrature cap) on
    /// equispaced nodes.
    pub fn pickup(&self) -> usize {
        match self {
            SweepKind::TrapezoidSdc => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepKind::ImplicitSdc { theta } => write!(f, "implicit-sdc(theta={theta})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Predictor producing the `p = 0` iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provisional {
    ForwardEuler,
    BackwardEuler,
    /// Backward Euler on `f_I`, forward Euler on `f_E`.
    ImexEuler,
    /// Backward Euler on `f_I` alone (drops `f_E`).
    ImplicitSplitEuler,
    TrapezoidRule,
    /// Hold `y_start` at every node.
    CopyConstant,
}

impl Provisional {
    pub const ALL: [Provisional; 6] = [
        Provisional::ForwardEuler,
        Provisional::BackwardEuler,
        Provisional::ImexEuler,
        Provisional::ImplicitSplitEuler,
        Provisional::TrapezoidRule,
        Provisional::CopyConstant,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Provisional::ForwardEuler => "forward-euler",
            Provisional::BackwardEuler => "backward-euler",
            Provisional::ImexEuler => "imex-euler",
            Provisional::ImplicitSplitEuler => "implicit-split-euler",
            Provisional::TrapezoidRule => "trapezoid",
            Provisional::CopyConstant => "constant",
        }
    }

    /// Local order of the predictor's global error on smooth problems.
    pub fn order(&self) -> usize {
        match self {
            Provisional::TrapezoidRule => 2,
            Provisional::CopyConstant | Provisional::ImplicitSplitEuler => 0,
            _ => 1,
        }
    }

    pub fn needs_split(&self) -> bool {
        matches!(self, Provisional::ImexEuler | Provisional::ImplicitSplitEuler)
    }
}

impl fmt::Display for Provisional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sweep kind, its predictor and the number of correction sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepScheme {
    pub kind: SweepKind,
    pub provisional: Provisional,
    pub corrections: usize,
}

impl SweepScheme {
    pub fn new(kind: SweepKind, provisional: Provisional, corrections: usize) -> Self {
        SweepScheme {
            kind,
            provisional,
            corrections,
        }
    }

    /// `kind` with its default predictor.
    pub fn with_default_provisional(kind: SweepKind, corrections: usize) -> Self {
        Self::new(kind, kind.default_provisional(), corrections)
    }

    /// Order-`q` preset: `q` uniform nodes and the fewest corrections that
    /// reach order `q` from the default predictor (`q - 1` for first-order
    /// predictors; the trapezoidal kind gains two orders per sweep).
    ///
    /// | order | nodes (uniform) | corrections (Euler predictors) |
    /// |-------|-----------------|--------------------------------|
    /// | 2     | 2               | 1                              |
    /// | 3     | 3               | 2                              |
    /// | q     | q               | q - 1                          |
    pub fn preset(kind: SweepKind, order: usize) -> Result<(NodeFamily, usize, SweepScheme)> {
        if !(2..=12).contains(&order) {
            return Err(SdcError::config(alloc::format!(
                "order presets cover 2..=12, got {order}"
            )));
        }
        let provisional = kind.default_provisional();
        let start = provisional.order();
        let corrections = (order.saturating_sub(start)).div_ceil(kind.pickup());
        Ok((
            NodeFamily::Uniform,
            order,
            SweepScheme::new(kind, provisional, corrections),
        ))
    }
}
