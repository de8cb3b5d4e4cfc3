//! Command execution and rendering to CSV or JSON.

use serde::Serialize;
use serde_json::{json, Value};

use sdc_core::analysis::{
    coefficient_order, convergence_study, correction_coefficients, table1_report, TABLE1_SAMPLES,
};
use sdc_core::problems::OdeSystem;
use sdc_core::quadrature::{NodeFamily, QuadratureRule};
use sdc_core::stability::scan_region;
use sdc_core::sweeper::integrate;

use crate::config::{Format, RuleSpec, RunConfig, SchemeSpec, Task};
use crate::error::CliError;

/// A command's output: one CSV table and the JSON result body.
pub struct Output {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub result: Value,
}

/// Runs `config` and renders it in the configured format.
pub fn execute(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let out = run(&config.task)?;
    render(config, &out)
}

pub fn run(task: &Task) -> Result<Output, CliError> {
    match task {
        Task::Quadrature {
            family,
            ms,
            nodes,
            table1,
            wn,
        } => {
            if *table1 {
                table1_output(ms)
            } else {
                quadrature_output(*family, ms, nodes.as_deref(), *wn)
            }
        }
        Task::Solve {
            problem,
            scheme,
            rule,
            steps,
        } => {
            let system = problem.build()?;
            let r = rule.build()?;
            let s = scheme.build()?;
            let t = system.final_time();
            let states = integrate(&r, &system, &s, &system.initial_state(), t, *steps, &scheme.options()?)?;
            let dim = system.dim();
            let mut header = vec!["t".to_string()];
            header.extend((1..=dim).map(|i| format!("y{i}")));
            let rows = states
                .iter()
                .enumerate()
                .map(|(k, y)| {
                    let mut row = vec![num(t * k as f64 / *steps as f64)];
                    row.extend(y.iter().map(|&v| num(v)));
                    row
                })
                .collect();
            let result = json!({
                "problem": system.name(),
                "final_time": t,
                "steps": steps,
                "scheme": scheme_json(scheme, &s),
                "nodes": r.nodes(),
                "final_state": states.last(),
                "states": states,
            });
            Ok(Output { header, rows, result })
        }
        Task::Converge {
            problem,
            scheme,
            rule,
            meshes,
        } => {
            let system = problem.build()?;
            let r = rule.build()?;
            let s = scheme.build()?;
            let t = system.final_time();
            let rep = convergence_study(&system, &s, &r, t, meshes, &scheme.options()?)?;
            if rep.rows.iter().all(|row| row.error.is_none()) {
                let why = rep.rows.iter().find_map(|row| row.failure.clone()).unwrap_or_default();
                return Err(CliError::Divergence(format!("no mesh completed: {why}")));
            }
            let header = ["steps", "h", "error", "order"].map(String::from).to_vec();
            let rows = rep
                .rows
                .iter()
                .map(|row| vec![row.steps.to_string(), num(row.h), opt(row.error), opt(row.order)])
                .collect();
            let result = json!({
                "problem": rep.problem,
                "problem_parameters": problem,
                "scheme": scheme_json(scheme, &s),
                "nodes": rep.nodes,
                "final_time": rep.final_time,
                "reference": rep.reference,
                "reference_discrepancy": rep.reference_discrepancy,
                "fit_floor": rep.fit_floor,
                "rows": rep.rows.iter().map(|row| json!({
                    "steps": row.steps,
                    "h": row.h,
                    "error": row.error,
                    "order": row.order,
                    "failure": row.failure,
                })).collect::<Vec<_>>(),
            });
            Ok(Output { header, rows, result })
        }
        Task::Stability { scheme, rule, grid } => {
            let r = rule.build()?;
            let s = scheme.build()?;
            let g = scan_region(&s, &r, &(*grid).into(), &scheme.options()?)?;
            let header = ["re", "im", "abs_rho"].map(String::from).to_vec();
            let rows = g.points().map(|(re, im, a)| vec![num(re), num(im), num(a)]).collect();
            let result = json!({
                "scheme": scheme_json(scheme, &s),
                "nodes": r.nodes(),
                "grid": grid,
                "stable_fraction": g.stable_fraction(),
                "abs_rho": g.values.iter().map(|&v| v.is_finite().then_some(v)).collect::<Vec<_>>(),
            });
            Ok(Output { header, rows, result })
        }
        Task::Coeffs { rule, base } => coeffs_output(rule, *base),
    }
}

fn coeffs_output(rule: &RuleSpec, base: crate::config::Base) -> Result<Output, CliError> {
    let r = rule.build()?;
    let coeffs = correction_coefficients(&r, base.into());
    let orders = coefficient_order(&coeffs, &r);
    let m = r.num_nodes();
    let mut header = ["n", "a", "b"].map(String::from).to_vec();
    header.extend((1..=m).map(|j| format!("c{j}")));
    header.extend(["moment", "local_order"].map(String::from));
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for (n, (row, order)) in coeffs.rows.iter().zip(&orders).enumerate() {
        let (a, b) = r.subinterval(n);
        let mut line = vec![(n + 1).to_string(), num(a), num(b)];
        line.extend(row.iter().map(|&c| num(c)));
        line.push(order.moment.map_or(String::new(), |k| k.to_string()));
        line.push(order.local_order.map_or(String::new(), |k| k.to_string()));
        rows.push(line);
        json_rows.push(json!({
            "subinterval": [a, b],
            "coefficients": row,
            "moment": order.moment,
            "local_order": order.local_order,
        }));
    }
    let result = json!({
        "base": coeffs.base.name(),
        "nodes": coeffs.nodes,
        "rows": json_rows,
    });
    Ok(Output { header, rows, result })
}

#[derive(Serialize)]
struct RuleReport {
    family: Option<&'static str>,
    m: usize,
    nodes: Vec<f64>,
    boundaries: Vec<f64>,
    weights: Vec<Vec<f64>>,
    wn: Vec<f64>,
    lebesgue_max: f64,
}

fn quadrature_output(
    family: crate::config::Family,
    ms: &[usize],
    nodes: Option<&[f64]>,
    wn_only: bool,
) -> Result<Output, CliError> {
    let rules: Vec<QuadratureRule> = match nodes {
        Some(nodes) => vec![QuadratureRule::from_nodes(nodes)?],
        None => ms
            .iter()
            .map(|&m| QuadratureRule::new(NodeFamily::from(family), m))
            .collect::<Result<_, _>>()?,
    };
    let reports: Vec<RuleReport> = rules
        .iter()
        .map(|r| RuleReport {
            family: r.family().map(|f| f.name()),
            m: r.num_nodes(),
            nodes: r.nodes().to_vec(),
            boundaries: r.boundaries().to_vec(),
            weights: (0..r.num_subintervals()).map(|n| r.weight_row(n).to_vec()).collect(),
            wn: r.wn_constants(),
            lebesgue_max: r.lebesgue_max(),
        })
        .collect();
    let (header, rows) = if wn_only {
        let header = ["m", "n", "a", "b", "wn"].map(String::from).to_vec();
        let rows = rules
            .iter()
            .zip(&reports)
            .flat_map(|(r, rep)| {
                rep.wn.iter().enumerate().map(move |(n, &w)| {
                    let (a, b) = r.subinterval(n);
                    vec![rep.m.to_string(), (n + 1).to_string(), num(a), num(b), num(w)]
                })
            })
            .collect();
        (header, rows)
    } else {
        let header = ["m", "quantity", "i", "j", "value"].map(String::from).to_vec();
        let mut rows = Vec::new();
        for rep in &reports {
            let m = rep.m.to_string();
            let mut push =
                |q: &str, i: String, j: String, v: f64| rows.push(vec![m.clone(), q.to_string(), i, j, num(v)]);
            for (i, &x) in rep.nodes.iter().enumerate() {
                push("node", (i + 1).to_string(), String::new(), x);
            }
            for (i, &x) in rep.boundaries.iter().enumerate() {
                push("boundary", i.to_string(), String::new(), x);
            }
            for (n, row) in rep.weights.iter().enumerate() {
                for (j, &w) in row.iter().enumerate() {
                    push("weight", (n + 1).to_string(), (j + 1).to_string(), w);
                }
            }
            for (n, &w) in rep.wn.iter().enumerate() {
                push("wn", (n + 1).to_string(), String::new(), w);
            }
            push("lebesgue_max", String::new(), String::new(), rep.lebesgue_max);
        }
        (header, rows)
    };
    let result = serde_json::to_value(&reports).map_err(|e| CliError::config(e.to_string()))?;
    Ok(Output {
        header,
        rows,
        result: json!({ "rules": result }),
    })
}

fn table1_output(ms: &[usize]) -> Result<Output, CliError> {
    let report = table1_report(ms, &NodeFamily::ALL)?;
    let mut header = vec!["m".to_string()];
    header.extend(NodeFamily::ALL.iter().map(|f| f.name().to_string()));
    let rows = ms
        .iter()
        .map(|&m| {
            let mut row = vec![m.to_string()];
            row.extend(NodeFamily::ALL.iter().map(|&f| {
                report
                    .iter()
                    .find(|r| r.m == m && r.family == f)
                    .map_or(String::new(), |r| format!("{:.3}", r.sampled))
            }));
            row
        })
        .collect();
    let result = json!({
        "samples": TABLE1_SAMPLES,
        "rows": report.iter().map(|r| json!({
            "family": r.family.name(),
            "m": r.m,
            "sampled": r.sampled,
            "refined": r.refined,
        })).collect::<Vec<_>>(),
    });
    Ok(Output { header, rows, result })
}

fn scheme_json(spec: &SchemeSpec, scheme: &sdc_core::sweeper::SweepScheme) -> Value {
    json!({
        "kind": scheme.kind.name(),
        "theta": scheme.kind.theta(),
        "corrections": scheme.corrections,
        "provisional": scheme.provisional.name(),
        "tolerance": spec.tolerance,
    })
}

fn num(x: f64) -> String {
    x.to_string()
}

fn opt(x: Option<f64>) -> String {
    x.map_or(String::new(), num)
}

fn render(config: &RunConfig, out: &Output) -> Result<Vec<u8>, CliError> {
    match config.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.header)?;
            for row in &out.rows {
                w.write_record(row)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Json => {
            let doc = json!({
                "schema_version": crate::config::SCHEMA_VERSION,
                "config": config,
                "result": out.result,
            });
            let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::config(e.to_string()))?;
            text.push('\n');
            Ok(text.into_bytes())
        }
    }
}
