use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::quadrature::QuadratureRule;

/// Low-order rule whose error against exact integration of the
/// interpolant is tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseRule {
    Trapezoid,
    ForwardEuler,
    BackwardEuler,
}

impl BaseRule {
    pub const ALL: [BaseRule; 3] = [BaseRule::Trapezoid, BaseRule::ForwardEuler, BaseRule::BackwardEuler];

    pub fn name(&self) -> &'static str {
        match self {
            BaseRule::Trapezoid => "trapezoid",
            BaseRule::ForwardEuler => "forward-euler",
            BaseRule::BackwardEuler => "backward-euler",
        }
    }

    /// The rule applied to `g` on `[a, b]`.
    pub fn apply(&self, a: f64, b: f64, g: impl Fn(f64) -> f64) -> f64 {
        let len = b - a;
        match self {
            BaseRule::Trapezoid => 0.5 * len * (g(a) + g(b)),
            BaseRule::ForwardEuler => len * g(a),
            BaseRule::BackwardEuler => len * g(b),
        }
    }
}

impl fmt::Display for BaseRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `c[n][m] = BaseRule_n(ℓ_m) - ∫_n ℓ_m`, in units of `h`.
///
/// The error of the base rule on subinterval `n` applied to an iterate with
/// node errors `e_m` is `h Σ_m c[n][m] e_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionCoefficients {
    pub nodes: Vec<f64>,
    pub base: BaseRule,
    pub rows: Vec<Vec<f64>>,
}

impl CorrectionCoefficients {
    /// Largest `|Σ_m c[n][m]|` over the rows.
    pub fn max_row_sum(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.iter().sum::<f64>().abs())
            .fold(0.0, f64::max)
    }
}

pub fn correction_coefficients(rule: &QuadratureRule, base: BaseRule) -> CorrectionCoefficients {
    let rows = (0..rule.num_subintervals())
        .map(|n| {
            let (a, b) = rule.subinterval(n);
            rule.weight_row(n)
                .iter()
                .enumerate()
                .map(|(m, &w)| base.apply(a, b, |x| rule.eval_lagrange(m, x)) - w)
                .collect()
        })
        .collect();
    CorrectionCoefficients {
        nodes: rule.nodes().to_vec(),
        base,
        rows,
    }
}

/// Predicted size of one subinterval's base-rule error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientOrder {
    /// First `k` with `Σ_m c[n][m] ξ_m^k != 0`.
    pub moment: Option<usize>,
    /// Power of `h` in `h Σ_m c[n][m] e_m` when `e_m` are the node errors of
    /// a forward Euler provisional solution.
    pub local_order: Option<usize>,
}

const ORDER_TOL: f64 = 1e-12;
const SERIES_TERMS: usize = 12;

/// Orders per subinterval. The local order expands `Σ_m c[n][m] e_m(h)` in
/// powers of `h`, with `e_m(h) = Π_{k ≤ b(m)} (1 + δ_k h) - exp(ξ_m h)` the
/// forward Euler error at node `m` for `y' = y`, and reports one more than
/// the first nonzero power.
pub fn coefficient_order(coeffs: &CorrectionCoefficients, rule: &QuadratureRule) -> Vec<CoefficientOrder> {
    let m = rule.num_nodes();
    let errors: Vec<Vec<f64>> = (0..m).map(|j| euler_error_series(rule, j)).collect();
    coeffs
        .rows
        .iter()
        .map(|row| {
            let moment = (0..SERIES_TERMS).find(|&k| {
                let s: f64 = row
                    .iter()
                    .zip(rule.nodes())
                    .map(|(c, x)| c * libm::pow(*x, k as f64))
                    .sum();
                s.abs() > ORDER_TOL
            });
            let local_order = (0..SERIES_TERMS)
                .find(|&k| {
                    let s: f64 = row.iter().zip(&errors).map(|(c, e)| c * e[k]).sum();
                    s.abs() > ORDER_TOL
                })
                .map(|k| k + 1);
            CoefficientOrder { moment, local_order }
        })
        .collect()
}

fn euler_error_series(rule: &QuadratureRule, node: usize) -> Vec<f64> {
    let mut poly = vec![0.0; SERIES_TERMS];
    poly[0] = 1.0;
    for k in 0..rule.node_boundary_index(node) {
        let delta = rule.subinterval_fraction(k);
        for j in (1..SERIES_TERMS).rev() {
            poly[j] += delta * poly[j - 1];
        }
    }
    let x = rule.nodes()[node];
    let mut term = 1.0;
    for (j, p) in poly.iter_mut().enumerate() {
        if j > 0 {
            term *= x / j as f64;
        }
        *p -= term;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::NodeFamily;
    use proptest::prelude::*;

    fn close(row: &[f64], expect: &[f64], den: f64) -> bool {
        row.iter().zip(expect).all(|(a, b)| (a - b / den).abs() < 1e-12)
    }

    fn uniform(m: usize) -> QuadratureRule {
        QuadratureRule::new(NodeFamily::Uniform, m).unwrap()
    }

    #[test]
    fn three_uniform_nodes() {
        let r = uniform(3);
        let t = correction_coefficients(&r, BaseRule::Trapezoid);
        assert!(close(&t.rows[0], &[1.0, -2.0, 1.0], 24.0));
        assert!(close(&t.rows[1], &[1.0, -2.0, 1.0], 24.0));
        let fe = correction_coefficients(&r, BaseRule::ForwardEuler);
        assert!(close(&fe.rows[0], &[7.0, -8.0, 1.0], 24.0));
        assert!(close(&fe.rows[1], &[1.0, 4.0, -5.0], 24.0));
    }

    #[test]
    fn uneven_first_subinterval() {
        let r = QuadratureRule::from_nodes(&[0.0, 1.0 / 3.0, 0.5, 1.0]).unwrap();
        let t = correction_coefficients(&r, BaseRule::Trapezoid);
        assert!(close(&t.rows[0], &[8.0, -27.0, 20.0, -1.0], 162.0));
    }

    #[test]
    fn orders_of_the_tabulated_cases() {
        let r = uniform(3);
        let orders = |r: &QuadratureRule, b| coefficient_order(&correction_coefficients(r, b), r);
        assert!(orders(&r, BaseRule::Trapezoid)
            .iter()
            .all(|o| o.local_order == Some(4) && o.moment == Some(2)));
        assert!(orders(&r, BaseRule::ForwardEuler)
            .iter()
            .all(|o| o.local_order == Some(3) && o.moment == Some(1)));
        let r4 = uniform(4);
        assert!(orders(&r4, BaseRule::Trapezoid)
            .iter()
            .all(|o| o.local_order == Some(4)));
        assert!(orders(&r4, BaseRule::BackwardEuler)
            .iter()
            .all(|o| o.local_order == Some(3)));
        let uneven = QuadratureRule::from_nodes(&[0.0, 1.0 / 3.0, 0.5, 1.0]).unwrap();
        assert!(orders(&uneven, BaseRule::Trapezoid)
            .iter()
            .all(|o| o.local_order == Some(3)));
        assert!(orders(&uneven, BaseRule::ForwardEuler)
            .iter()
            .all(|o| o.local_order == Some(3)));
    }

    #[test]
    fn trapezoid_kills_the_first_moment() {
        for family in NodeFamily::ALL {
            let r = QuadratureRule::new(family, 5).unwrap();
            let c = correction_coefficients(&r, BaseRule::Trapezoid);
            for row in &c.rows {
                let s: f64 = row.iter().zip(r.nodes()).map(|(c, x)| c * x).sum();
                assert!(s.abs() < 1e-14);
            }
        }
    }

    /// Base rule through the Lagrange formula and `∫ℓ_m` by composite
    /// Simpson on `10⁴` panels.
    fn brute_force(nodes: &[f64], boundaries: &[f64], base: BaseRule) -> Vec<Vec<f64>> {
        let ell = |m: usize, x: f64| -> f64 {
            nodes
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != m)
                .map(|(_, &xk)| (x - xk) / (nodes[m] - xk))
                .product()
        };
        let panels = 10_000;
        boundaries
            .windows(2)
            .map(|ab| {
                let (a, b) = (ab[0], ab[1]);
                let dx = (b - a) / panels as f64;
                (0..nodes.len())
                    .map(|m| {
                        let mut s = 0.0;
                        for p in 0..panels {
                            let x0 = a + p as f64 * dx;
                            s += dx / 6.0 * (ell(m, x0) + 4.0 * ell(m, x0 + 0.5 * dx) + ell(m, x0 + dx));
                        }
                        base.apply(a, b, |x| ell(m, x)) - s
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn matches_brute_force_oracle() {
        for family in NodeFamily::ALL {
            for m in family.min_nodes().max(2)..=6 {
                let r = QuadratureRule::new(family, m).unwrap();
                for base in BaseRule::ALL {
                    let c = correction_coefficients(&r, base);
                    let oracle = brute_force(r.nodes(), r.boundaries(), base);
                    for (row, orow) in c.rows.iter().zip(&oracle) {
                        for (a, b) in row.iter().zip(orow) {
                            assert!((a - b).abs() < 1e-12, "{family} {m} {base}: {a} vs {b}");
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rows_sum_to_zero(mut raw in proptest::collection::vec(0.0f64..1.0, 2..7), base in 0usize..3) {
            raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
            raw.dedup_by(|a, b| (*a - *b).abs() < 0.05);
            prop_assume!(raw.len() >= 2);
            let r = QuadratureRule::from_nodes(&raw).unwrap();
            let c = correction_coefficients(&r, BaseRule::ALL[base]);
            prop_assert!(c.max_row_sum() < 1e-13);
        }

        #[test]
        fn custom_nodes_match_brute_force(mut raw in proptest::collection::vec(0.0f64..1.0, 2..5)) {
            raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
            raw.dedup_by(|a, b| (*a - *b).abs() < 0.1);
            prop_assume!(raw.len() >= 2);
            let r = QuadratureRule::from_nodes(&raw).unwrap();
            let c = correction_coefficients(&r, BaseRule::Trapezoid);
            let oracle = brute_force(r.nodes(), r.boundaries(), BaseRule::Trapezoid);
            for (row, orow) in c.rows.iter().zip(&oracle) {
                for (a, b) in row.iter().zip(orow) {
                    prop_assert!((a - b).abs() < 1e-11);
                }
            }
        }
    }
}
