//! Amplification factors and regions of absolute stability.
//!
//! `ρ(z)` is one step of a scheme on `y' = z y`, `y(0) = 1`, with `h = 1`,
//! run over complex scalars. Implicit substeps use the closed form
//! `a / (1 - α z)`.

use alloc::vec::Vec;

use crate::error::{Result, SdcError};
use crate::problems::linear_problem;
use crate::quadrature::QuadratureRule;
use crate::sweeper::{step, SolveOptions, SweepScheme};
use crate::Complex64;

/// `ρ(z)` for `scheme` on `rule`.
pub fn amplification(
    scheme: &SweepScheme,
    rule: &QuadratureRule,
    z: Complex64,
    opts: &SolveOptions,
) -> Result<Complex64> {
    let system = linear_problem(z);
    let y = step(rule, &system, scheme, &[Complex64::new(1.0, 0.0)], 1.0, opts)?;
    Ok(y[0])
}

/// Rectangle of the complex plane sampled at `nx × ny` points, both ends
/// included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// Default window for a method of the given order: `[-6, 2] × [-5, 5]`
    /// up to order 5, `[-15, 5] × [-12, 12]` above.
    pub fn for_order(order: usize) -> Self {
        if order <= 5 {
            GridSpec {
                re_range: (-6.0, 2.0),
                im_range: (-5.0, 5.0),
                nx: 401,
                ny: 401,
            }
        } else {
            GridSpec {
                re_range: (-15.0, 5.0),
                im_range: (-12.0, 12.0),
                nx: 401,
                ny: 401,
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a < b;
        if self.nx < 2 || self.ny < 2 {
            return Err(SdcError::config("grids need at least 2 samples per axis"));
        }
        if !ok(self.re_range) || !ok(self.im_range) {
            return Err(SdcError::config("grid ranges must be finite and increasing"));
        }
        Ok(())
    }

    pub fn re(&self, i: usize) -> f64 {
        lerp(self.re_range, i, self.nx)
    }

    pub fn im(&self, j: usize) -> f64 {
        lerp(self.im_range, j, self.ny)
    }
}

fn lerp((a, b): (f64, f64), i: usize, n: usize) -> f64 {
    if i + 1 == n {
        b
    } else {
        a + (b - a) * (i as f64 / (n - 1) as f64)
    }
}

/// `|ρ|` sampled over a [`GridSpec`]. Row-major with the imaginary part
/// outermost: `values[j * nx + i]` is at `re(i) + i·im(j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl StabilityGrid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.spec.nx + i]
    }

    /// `(re, im, |ρ|)` in storage order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let nx = self.spec.nx;
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.spec.re(k % nx), self.spec.im(k / nx), v))
    }

    /// Fraction of samples with `|ρ| <= 1`.
    pub fn stable_fraction(&self) -> f64 {
        self.values.iter().filter(|&&v| v <= 1.0).count() as f64 / self.values.len() as f64
    }
}

/// Samples `|ρ|` over `spec`. Singular substeps and non-finite results are
/// stored as `+∞`.
pub fn scan_region(
    scheme: &SweepScheme,
    rule: &QuadratureRule,
    spec: &GridSpec,
    opts: &SolveOptions,
) -> Result<StabilityGrid> {
    spec.validate()?;
    let mut values = Vec::with_capacity(spec.nx * spec.ny);
    for j in 0..spec.ny {
        for i in 0..spec.nx {
            let z = Complex64::new(spec.re(i), spec.im(j));
            let v = match amplification(scheme, rule, z, opts) {
                Ok(rho) => rho.norm(),
                Err(SdcError::Config(msg)) => return Err(SdcError::Config(msg)),
                Err(_) => f64::INFINITY,
            };
            values.push(if v.is_finite() { v } else { f64::INFINITY });
        }
    }
    Ok(StabilityGrid { spec: *spec, values })
}
