//! Serializable run description. Every command is built from a
//! [`RunConfig`], and JSON output embeds it so a run can be repeated.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use sdc_core::analysis::BaseRule;
use sdc_core::problems::{by_name, Problem, ProblemParams};
use sdc_core::quadrature::{NodeFamily, QuadratureRule};
use sdc_core::stability::GridSpec;
use sdc_core::sweeper::{Provisional, SolveOptions, SweepKind, SweepScheme};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Uniform,
    Chebyshev,
    Legendre,
    Radau,
    Lobatto,
}

impl From<Family> for NodeFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Uniform => NodeFamily::Uniform,
            Family::Chebyshev => NodeFamily::Chebyshev,
            Family::Legendre => NodeFamily::GaussLegendre,
            Family::Radau => NodeFamily::GaussRadauIIA,
            Family::Lobatto => NodeFamily::GaussLobatto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Quadrature of the previous iterate only
    Picard,
    /// Forward Euler correction
    ExplicitSdc,
    /// Backward Euler correction scaled by --theta
    ImplicitSdc,
    /// Backward Euler on the stiff part, forward Euler on the rest
    Sisdc,
    /// Backward Euler on the stiff part only
    ModifiedSisdc,
    /// Implicit trapezoidal correction
    TrapezoidSdc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Predictor {
    ForwardEuler,
    BackwardEuler,
    ImexEuler,
    ImplicitSplitEuler,
    Trapezoid,
    Constant,
}

impl From<Predictor> for Provisional {
    fn from(p: Predictor) -> Self {
        match p {
            Predictor::ForwardEuler => Provisional::ForwardEuler,
            Predictor::BackwardEuler => Provisional::BackwardEuler,
            Predictor::ImexEuler => Provisional::ImexEuler,
            Predictor::ImplicitSplitEuler => Provisional::ImplicitSplitEuler,
            Predictor::Trapezoid => Provisional::TrapezoidRule,
            Predictor::Constant => Provisional::CopyConstant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Base {
    Trapezoid,
    ForwardEuler,
    BackwardEuler,
}

impl From<Base> for BaseRule {
    fn from(b: Base) -> Self {
        match b {
            Base::Trapezoid => BaseRule::Trapezoid,
            Base::ForwardEuler => BaseRule::ForwardEuler,
            Base::BackwardEuler => BaseRule::BackwardEuler,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemName {
    /// y' = λ y
    Linear,
    /// (y1, y2)' = (y2, -sin y1)
    Pendulum,
    /// Van der Pol with stiffness parameter ε
    Vdp,
    /// y' = λ (constant rate)
    Constant,
}

impl ProblemName {
    fn registry_name(self) -> &'static str {
        match self {
            ProblemName::Linear => "linear",
            ProblemName::Pendulum => "pendulum",
            ProblemName::Vdp => "vdp",
            ProblemName::Constant => "constant",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Node set: a named family with `m` nodes, or explicit nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub family: Family,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<f64>>,
}

impl RuleSpec {
    pub fn build(&self) -> Result<QuadratureRule, CliError> {
        Ok(match &self.nodes {
            Some(nodes) => QuadratureRule::from_nodes(nodes)?,
            None => QuadratureRule::new(self.family.into(), self.m)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: ProblemName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_time: Option<f64>,
}

impl ProblemSpec {
    pub fn build(&self) -> Result<Problem, CliError> {
        if self.lambda.is_some() && !matches!(self.name, ProblemName::Linear | ProblemName::Constant) {
            return Err(CliError::config(
                "--lambda applies to the linear and constant problems only",
            ));
        }
        if self.epsilon.is_some() && self.name != ProblemName::Vdp {
            return Err(CliError::config("--epsilon applies to the vdp problem only"));
        }
        let params = ProblemParams {
            lambda: self.lambda,
            epsilon: self.epsilon,
            final_time: self.final_time,
            y0: self.y0.clone(),
        };
        Ok(by_name(self.name.registry_name(), &params)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    pub kind: Scheme,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    pub corrections: usize,
    /// Defaults to the kind's own predictor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provisional: Option<Predictor>,
    /// Sweep until successive iterates differ by less than this instead of
    /// applying a fixed number of corrections.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl SchemeSpec {
    pub fn kind(&self) -> Result<SweepKind, CliError> {
        if self.theta.is_some() && self.kind != Scheme::ImplicitSdc {
            return Err(CliError::config("--theta applies to implicit-sdc only"));
        }
        Ok(match self.kind {
            Scheme::Picard => SweepKind::Picard,
            Scheme::ExplicitSdc => SweepKind::ExplicitSdc,
            Scheme::ImplicitSdc => SweepKind::ImplicitSdc {
                theta: self.theta.unwrap_or(1.0),
            },
            Scheme::Sisdc => SweepKind::Sisdc,
            Scheme::ModifiedSisdc => SweepKind::ModifiedSisdc,
            Scheme::TrapezoidSdc => SweepKind::TrapezoidSdc,
        })
    }

    pub fn build(&self) -> Result<SweepScheme, CliError> {
        let kind = self.kind()?;
        let provisional = self.provisional.map_or(kind.default_provisional(), Provisional::from);
        Ok(SweepScheme::new(kind, provisional, self.corrections))
    }

    pub fn options(&self) -> Result<SolveOptions, CliError> {
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::config("--tolerance must be positive"));
            }
        }
        Ok(SolveOptions {
            fixed_point_tol: self.tolerance,
            ..SolveOptions::default()
        })
    }
}

/// Rectangle and resolution of a stability scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl From<GridSpec> for GridConfig {
    fn from(g: GridSpec) -> Self {
        GridConfig {
            re: g.re_range,
            im: g.im_range,
            nx: g.nx,
            ny: g.ny,
        }
    }
}

impl From<GridConfig> for GridSpec {
    fn from(g: GridConfig) -> Self {
        GridSpec {
            re_range: g.re,
            im_range: g.im,
            nx: g.nx,
            ny: g.ny,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Quadrature {
        family: Family,
        ms: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nodes: Option<Vec<f64>>,
        table1: bool,
        wn: bool,
    },
    Solve {
        problem: ProblemSpec,
        scheme: SchemeSpec,
        rule: RuleSpec,
        steps: usize,
    },
    Converge {
        problem: ProblemSpec,
        scheme: SchemeSpec,
        rule: RuleSpec,
        meshes: Vec<usize>,
    },
    Stability {
        scheme: SchemeSpec,
        rule: RuleSpec,
        grid: GridConfig,
    },
    Coeffs {
        rule: RuleSpec,
        base: Base,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub task: Task,
    #[serde(default)]
    pub format: Format,
    /// Destination file; standard output when unset. Not part of the
    /// serialized record, so reruns reproduce a document byte for byte.
    #[serde(default, skip_serializing)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(task: Task, format: Format, output: Option<PathBuf>) -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            task,
            format,
            output,
        }
    }

    /// Parses either a bare config or an emitted JSON document carrying one
    /// under `"config"`.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::config(format!("invalid JSON: {e}")))?;
        let config_value = match value.get("config") {
            Some(inner) => inner.clone(),
            None => value,
        };
        let config: RunConfig =
            serde_json::from_value(config_value).map_err(|e| CliError::config(format!("invalid config: {e}")))?;
        if config.schema_version != SCHEMA_VERSION {
            return Err(CliError::config(format!(
                "unsupported schema_version {}, expected {SCHEMA_VERSION}",
                config.schema_version
            )));
        }
        Ok(config)
    }
}

/// Parses `"a:b"` (doubling from `a` to `b`) or a comma-separated list.
pub fn parse_meshes(text: &str) -> Result<Vec<usize>, String> {
    if let Some((a, b)) = text.split_once(':') {
        let a: usize = a.trim().parse().map_err(|_| format!("bad mesh start '{a}'"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad mesh end '{b}'"))?;
        return sdc_core::analysis::doubling_meshes(a, b).map_err(|e| e.to_string());
    }
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("bad mesh size '{s}'")))
        .collect()
}

/// Parses `"3"` or an inclusive range `"2..20"`.
pub fn parse_m_range(text: &str) -> Result<Vec<usize>, String> {
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad node count '{s}'"));
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty node count range {text}"));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![parse(text)?]),
    }
}

/// Parses a comma-separated list of reals; entries may be fractions `p/q`.
pub fn parse_reals(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            let value = match s.split_once('/') {
                Some((p, q)) => match (p.trim().parse::<f64>(), q.trim().parse::<f64>()) {
                    (Ok(p), Ok(q)) => Ok(p / q),
                    _ => Err(()),
                },
                None => s.parse::<f64>().map_err(|_| ()),
            };
            value.map_err(|_| format!("bad number '{s}'"))
        })
        .collect()
}

/// Parses `"a:b"` into a real interval.
pub fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got '{text}'"))?;
    let a = a.trim().parse::<f64>().map_err(|_| format!("bad bound '{a}'"))?;
    let b = b.trim().parse::<f64>().map_err(|_| format!("bad bound '{b}'"))?;
    Ok((a, b))
}
