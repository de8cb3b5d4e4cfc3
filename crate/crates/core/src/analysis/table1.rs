use alloc::vec::Vec;

use crate::error::Result;
use crate::quadrature::{NodeFamily, QuadratureRule};

/// Sample count of the tabulated maximum: equispaced on `[0, 1]`, both
/// ends included.
pub const TABLE1_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub family: NodeFamily,
    pub m: usize,
    /// `max_m max_x |ℓ_m(x)|` over the [`TABLE1_SAMPLES`] grid.
    pub sampled: f64,
    /// The same maximum refined to the true extremum.
    pub refined: f64,
}

/// Largest Lagrange basis value for every `(family, m)` pair, family-major.
/// Pairs below a family's minimum node count are skipped.
pub fn table1_report(ms: &[usize], families: &[NodeFamily]) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for &family in families {
        for &m in ms {
            if m < family.min_nodes() {
                continue;
            }
            let rule = QuadratureRule::new(family, m)?;
            rows.push(Table1Row {
                family,
                m,
                sampled: rule.lebesgue_max_sampled(TABLE1_SAMPLES),
                refined: rule.lebesgue_max(),
            });
        }
    }
    Ok(rows)
}
