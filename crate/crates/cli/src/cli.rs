//! Argument parsing: turns a command line into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use sdc_core::stability::GridSpec;
use sdc_core::sweeper::SweepScheme;

use crate::config::{
    parse_m_range, parse_meshes, parse_range, parse_reals, Base, Family, Format, Predictor, ProblemName, ProblemSpec,
    RuleSpec, RunConfig, Scheme, SchemeSpec, Task,
};
use crate::error::CliError;

const PRESETS: &str = "\
Order presets (--order q, q = 2..12) use q uniform nodes and the fewest
corrections that reach order q from the scheme's default predictor:
  picard, explicit-sdc, implicit-sdc, sisdc, modified-sisdc   q - 1 corrections
  trapezoid-sdc (trapezoid predictor, two orders per sweep)     ceil((q - 2) / 2)

Exit codes: 0 success, 1 solver divergence, 2 configuration error.";

/// Spectral deferred correction and Picard integral solvers.
#[derive(Debug, Parser)]
#[command(name = "sdc", version, after_long_help = PRESETS, after_help = PRESETS)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nodes, subinterval weights, W_n and the Lagrange maximum of a rule.
    Quadrature(QuadratureArgs),
    /// Integrate a problem and write the trajectory.
    #[command(after_help = PRESETS)]
    Solve(SolveArgs),
    /// Convergence study over a list of step counts.
    #[command(after_help = PRESETS)]
    Converge(ConvergeArgs),
    /// Scan |ρ(z)| over a rectangle of the complex plane.
    #[command(after_help = PRESETS)]
    Stability(StabilityArgs),
    /// Correction-error coefficients of a base rule against the quadrature.
    Coeffs(CoeffsArgs),
    /// Repeat a run from a saved config or JSON output document.
    Rerun(RerunArgs),
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    pub family: Family,

    /// Node count, or an inclusive range such as 2..20.
    #[arg(short = 'M', default_value = "3", value_parser = parse_m_range)]
    pub m: ::std::vec::Vec<usize>,

    /// Explicit nodes in [0, 1] (fractions such as 1/3 allowed); overrides --family and -M.
    #[arg(long, value_parser = parse_reals, conflicts_with = "table1")]
    pub nodes: Option<::std::vec::Vec<f64>>,

    /// Lagrange maxima of every family for each node count.
    #[arg(long)]
    pub table1: bool,

    /// Only the W_n constants.
    #[arg(long, conflicts_with = "table1")]
    pub wn: bool,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    pub family: Family,

    /// Number of nodes.
    #[arg(short = 'M', default_value_t = 3)]
    pub m: usize,

    /// Explicit nodes in [0, 1] (fractions such as 1/3 allowed); overrides --family and -M.
    #[arg(long, value_parser = parse_reals)]
    pub nodes: Option<::std::vec::Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Sweep kind.
    #[arg(long, value_enum)]
    pub scheme: Scheme,

    /// Scale of the backward Euler term (implicit-sdc only; 1 is classical).
    #[arg(long)]
    pub theta: Option<f64>,

    /// Number of correction sweeps [default: M - 1].
    #[arg(long)]
    pub corrections: Option<usize>,

    /// Predictor for the first iterate [default: depends on --scheme].
    #[arg(long, value_enum)]
    pub provisional: Option<Predictor>,

    /// Order preset: q uniform nodes and the matching correction count.
    #[arg(long, conflicts_with_all = ["m", "corrections", "nodes"])]
    pub order: Option<usize>,

    /// Sweep until iterates change by less than this instead of a fixed count.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum, default_value = "linear")]
    pub problem: ProblemName,

    /// λ of the linear problem (rate of the constant problem).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,

    /// ε of the Van der Pol problem.
    #[arg(long)]
    pub epsilon: Option<f64>,

    /// Initial state, comma separated.
    #[arg(long, value_parser = parse_reals, allow_hyphen_values = true)]
    pub y0: Option<::std::vec::Vec<f64>>,

    /// Final time [default: the problem's own].
    #[arg(short = 'T', long = "final-time")]
    pub final_time: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub rule: RuleArgs,

    /// Number of time steps.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub rule: RuleArgs,

    /// Step counts: first:last doubling, or a comma-separated list.
    #[arg(long, default_value = "4:512", value_parser = parse_meshes)]
    pub meshes: ::std::vec::Vec<usize>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub rule: RuleArgs,

    /// Real range lo:hi [default: by order].
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub re: Option<(f64, f64)>,

    /// Imaginary range lo:hi [default: by order].
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub im: Option<(f64, f64)>,

    /// Samples along the real axis [default: 401].
    #[arg(long)]
    pub nx: Option<usize>,

    /// Samples along the imaginary axis [default: 401].
    #[arg(long)]
    pub ny: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub rule: RuleArgs,

    /// Base rule compared against the quadrature.
    #[arg(long, value_enum, default_value = "trapezoid")]
    pub base: Base,
}

#[derive(Debug, Args)]
pub struct RerunArgs {
    /// Config or JSON output document written by an earlier run.
    pub config: PathBuf,
}

fn resolve(scheme: &SchemeArgs, rule: &RuleArgs) -> Result<(SchemeSpec, RuleSpec, usize), CliError> {
    let spec = |corrections| SchemeSpec {
        kind: scheme.scheme,
        theta: scheme.theta,
        corrections,
        provisional: scheme.provisional,
        tolerance: scheme.tolerance,
    };
    if let Some(q) = scheme.order {
        let probe = spec(0);
        let (_, m, preset) = SweepScheme::preset(probe.kind()?, q)?;
        let rule = RuleSpec {
            family: Family::Uniform,
            m,
            nodes: None,
        };
        return Ok((spec(preset.corrections), rule, q));
    }
    let m = rule.nodes.as_ref().map_or(rule.m, Vec::len);
    let corrections = scheme.corrections.unwrap_or(m.saturating_sub(1));
    let rule = RuleSpec {
        family: rule.family,
        m: rule.m,
        nodes: rule.nodes.clone(),
    };
    Ok((spec(corrections), rule, m))
}

fn problem_spec(p: &ProblemArgs) -> ProblemSpec {
    ProblemSpec {
        name: p.problem,
        lambda: p.lambda,
        epsilon: p.epsilon,
        y0: p.y0.clone(),
        final_time: p.final_time,
    }
}

impl Cli {
    /// Builds the run description; `rerun` reads it from disk.
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let format = self.format.unwrap_or_default();
        let task = match self.command {
            Command::Rerun(args) => {
                let text = std::fs::read_to_string(&args.config)
                    .map_err(|e| CliError::config(format!("cannot read {}: {e}", args.config.display())))?;
                let mut config = RunConfig::from_json(&text)?;
                if let Some(f) = self.format {
                    config.format = f;
                }
                config.output = self.output;
                return Ok(config);
            }
            Command::Quadrature(a) => Task::Quadrature {
                family: a.family,
                ms: a.m,
                nodes: a.nodes,
                table1: a.table1,
                wn: a.wn,
            },
            Command::Solve(a) => {
                let (scheme, rule, _) = resolve(&a.scheme, &a.rule)?;
                Task::Solve {
                    problem: problem_spec(&a.problem),
                    scheme,
                    rule,
                    steps: a.steps,
                }
            }
            Command::Converge(a) => {
                let (scheme, rule, _) = resolve(&a.scheme, &a.rule)?;
                Task::Converge {
                    problem: problem_spec(&a.problem),
                    scheme,
                    rule,
                    meshes: a.meshes,
                }
            }
            Command::Stability(a) => {
                let (scheme, rule, order) = resolve(&a.scheme, &a.rule)?;
                let mut grid = GridSpec::for_order(order);
                if let Some(r) = a.re {
                    grid.re_range = r;
                }
                if let Some(r) = a.im {
                    grid.im_range = r;
                }
                grid.nx = a.nx.unwrap_or(grid.nx);
                grid.ny = a.ny.unwrap_or(grid.ny);
                Task::Stability {
                    scheme,
                    rule,
                    grid: grid.into(),
                }
            }
            Command::Coeffs(a) => Task::Coeffs {
                rule: RuleSpec {
                    family: a.rule.family,
                    m: a.rule.m,
                    nodes: a.rule.nodes,
                },
                base: a.base,
            },
        };
        Ok(RunConfig::new(task, format, self.output))
    }
}
