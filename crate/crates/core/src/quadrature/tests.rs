use super::*;
use std::vec::Vec;

fn all_rules(max_m: usize) -> Vec<QuadratureRule> {
    let mut out = Vec::new();
    for family in NodeFamily::ALL {
        for m in family.min_nodes().max(2)..=max_m {
            out.push(make_rule(family, m).unwrap());
        }
    }
    out
}

#[test]
fn uniform_three_nodes() {
    assert_eq!(make_nodes(NodeFamily::Uniform, 3).unwrap(), [0.0, 0.5, 1.0]);
}

#[test]
fn legendre_two_nodes() {
    let x = make_nodes(NodeFamily::GaussLegendre, 2).unwrap();
    let r = 1.0 / 3.0_f64.sqrt();
    assert!((x[0] - (1.0 - r) / 2.0).abs() < 1e-15);
    assert!((x[1] - (1.0 + r) / 2.0).abs() < 1e-15);
    assert!((x[0] - 0.21132).abs() < 1e-5);
}

#[test]
fn lobatto_three_nodes() {
    assert_eq!(make_nodes(NodeFamily::GaussLobatto, 3).unwrap(), [0.0, 0.5, 1.0]);
}

#[test]
fn rejects_unsupported_counts() {
    assert!(matches!(
        make_nodes(NodeFamily::GaussLobatto, 1),
        Err(SdcError::Config(_))
    ));
    for family in NodeFamily::ALL {
        assert!(make_nodes(family, 0).is_err());
    }
    assert_eq!(make_nodes(NodeFamily::Uniform, 1).unwrap(), [0.5]);
    assert_eq!(make_nodes(NodeFamily::GaussLegendre, 1).unwrap(), [0.5]);
}

#[test]
fn custom_nodes_are_validated() {
    assert!(QuadratureRule::from_nodes(&[0.0, 0.5, 0.5]).is_err());
    assert!(QuadratureRule::from_nodes(&[-0.1, 0.5]).is_err());
    assert!(QuadratureRule::from_nodes(&[]).is_err());
    let r = QuadratureRule::from_nodes(&[0.0, 1.0 / 3.0, 0.5, 1.0]).unwrap();
    assert_eq!(r.num_subintervals(), 3);
    assert_eq!(r.family(), None);
}

#[test]
fn endpoint_convention_counts() {
    for family in NodeFamily::ALL {
        for m in 2..=12 {
            let r = make_rule(family, m).unwrap();
            let expected = match (r.includes_left(), r.includes_right()) {
                (true, true) => m - 1,
                (false, false) => m + 1,
                _ => m,
            };
            assert_eq!(r.num_subintervals(), expected, "{family} M={m}");
            let both = matches!(family, NodeFamily::Uniform | NodeFamily::GaussLobatto);
            let right_only = family == NodeFamily::GaussRadauIIA;
            assert_eq!(r.includes_left(), both);
            assert_eq!(r.includes_right(), both || right_only);
            assert_eq!(r.boundaries()[0], 0.0);
            assert_eq!(*r.boundaries().last().unwrap(), 1.0);
        }
    }
}

#[test]
fn uniform_three_weight_rows() {
    let r = make_rule(NodeFamily::Uniform, 3).unwrap();
    let expect = [
        [5.0 / 24.0, 1.0 / 3.0, -1.0 / 24.0],
        [-1.0 / 24.0, 1.0 / 3.0, 5.0 / 24.0],
    ];
    for (n, row) in expect.iter().enumerate() {
        for (m, w) in row.iter().enumerate() {
            assert!((r.weight(n, m) - w).abs() < 1e-15, "n={n} m={m}");
        }
        assert!((r.weight_row(n).iter().sum::<f64>() - 0.5).abs() < 1e-15);
    }
}

#[test]
fn lobatto_three_is_simpson() {
    let r = make_rule(NodeFamily::GaussLobatto, 3).unwrap();
    let w = r.full_weights();
    for (a, b) in w.iter().zip([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn row_sums_are_subinterval_lengths() {
    for r in all_rules(12) {
        for n in 0..r.num_subintervals() {
            let s: f64 = r.weight_row(n).iter().sum();
            assert!(
                (s - r.subinterval_fraction(n)).abs() < 1e-13,
                "{:?} M={}",
                r.family(),
                r.num_nodes()
            );
        }
    }
}

#[test]
fn interpolatory_exactness() {
    for r in all_rules(12) {
        let m = r.num_nodes();
        for n in 0..r.num_subintervals() {
            let (a, b) = r.subinterval(n);
            for k in 0..m {
                let q: f64 = (0..m).map(|j| r.weight(n, j) * r.nodes()[j].powi(k as i32)).sum();
                let exact = (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k + 1) as f64;
                assert!((q - exact).abs() < 1e-12, "{:?} M={m} n={n} k={k}", r.family());
            }
        }
    }
}

#[test]
fn gauss_degree_of_exactness() {
    for m in 2..=6 {
        for (family, degree) in [
            (NodeFamily::GaussLegendre, 2 * m - 1),
            (NodeFamily::GaussRadauIIA, 2 * m - 2),
            (NodeFamily::GaussLobatto, 2 * m - 3),
        ] {
            let r = make_rule(family, m).unwrap();
            let w = r.full_weights();
            for k in 0..=degree {
                let q: f64 = w.iter().zip(r.nodes()).map(|(w, x)| w * x.powi(k as i32)).sum();
                assert!((q - 1.0 / (k + 1) as f64).abs() < 1e-11, "{family} M={m} k={k}");
            }
            // one degree more is not exact
            let k = degree + 1;
            let q: f64 = w.iter().zip(r.nodes()).map(|(w, x)| w * x.powi(k as i32)).sum();
            assert!((q - 1.0 / (k + 1) as f64).abs() > 1e-8, "{family} M={m}");
        }
    }
}

#[test]
fn symmetric_families_are_symmetric() {
    for family in NodeFamily::ALL.into_iter().filter(|f| f.is_symmetric()) {
        for m in 2..=20 {
            let x = make_nodes(family, m).unwrap();
            for k in 0..m {
                assert!((x[k] - (1.0 - x[m - 1 - k])).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn gauss_nodes_satisfy_defining_conditions() {
    for m in 1..=20 {
        for x in make_nodes(NodeFamily::GaussLegendre, m).unwrap() {
            let (p, d, _) = legendre::legendre(m, 2.0 * x - 1.0);
            assert!((p / d).abs() < 1e-14, "M={m} x={x} p={p}");
        }
        for x in make_nodes(NodeFamily::GaussRadauIIA, m).unwrap() {
            let s = 2.0 * x - 1.0;
            let q = legendre::legendre(m, s).0 - legendre::legendre(m - 1, s).0;
            assert!(q.abs() < 1e-13, "M={m} x={x} q={q}");
        }
    }
    for m in 3..=20 {
        let x = make_nodes(NodeFamily::GaussLobatto, m).unwrap();
        for &xi in &x[1..m - 1] {
            let d = legendre::legendre(m - 1, 2.0 * xi - 1.0).1;
            assert!(d.abs() < 1e-11, "M={m} {d}");
        }
    }
}

#[test]
fn lagrange_cardinality_and_values() {
    let r = make_rule(NodeFamily::Uniform, 3).unwrap();
    assert_eq!(r.eval_lagrange(1, 0.5), 1.0);
    assert!((r.eval_lagrange(0, 0.25) - 3.0 / 8.0).abs() < 1e-15);
    for rule in all_rules(10) {
        for m in 0..rule.num_nodes() {
            for k in 0..rule.num_nodes() {
                let v = rule.eval_lagrange(m, rule.nodes()[k]);
                let expect = if m == k { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-12);
            }
        }
        let s: f64 = (0..rule.num_nodes()).map(|m| rule.eval_lagrange(m, 0.3)).sum();
        assert!((s - 1.0).abs() < 1e-12);
    }
}

#[test]
fn lebesgue_max_small_cases() {
    let cases = [
        (NodeFamily::GaussLegendre, 2, 1.366),
        (NodeFamily::GaussRadauIIA, 2, 1.500),
        (NodeFamily::Chebyshev, 2, 1.207),
        (NodeFamily::Uniform, 2, 1.000),
    ];
    for (family, m, expect) in cases {
        let v = make_rule(family, m).unwrap().lebesgue_max();
        assert!((v - expect).abs() < 5e-4, "{family} {m}: {v}");
    }
    for m in 2..=12 {
        let v = make_rule(NodeFamily::GaussLobatto, m).unwrap().lebesgue_max();
        assert!((v - 1.0).abs() < 1e-9, "lobatto {m}: {v}");
    }
}

#[test]
fn wn_uniform_two_is_one() {
    let w = make_rule(NodeFamily::Uniform, 2).unwrap().wn_constants();
    assert_eq!(w.len(), 1);
    assert!((w[0] - 1.0).abs() < 1e-14);
}

#[test]
fn wn_bounds_subinterval_lengths() {
    for r in all_rules(10) {
        let w = r.wn_constants();
        for (n, wn) in w.iter().enumerate() {
            assert!(*wn >= r.subinterval_fraction(n) - 1e-14);
        }
    }
    let w = make_rule(NodeFamily::Uniform, 3).unwrap().wn_constants();
    assert!(w[0] + w[1] >= 1.0);
}

#[test]
fn wn_lobatto_three_symmetric() {
    let w = make_rule(NodeFamily::GaussLobatto, 3).unwrap().wn_constants();
    assert!((w[0] - w[1]).abs() < 1e-14);
}

#[test]
fn wn_matches_fine_sampling() {
    // independent check: composite midpoint rule on |ℓ_m|
    for r in all_rules(6) {
        for (n, &wn) in r.wn_constants().iter().enumerate() {
            let (a, b) = r.subinterval(n);
            let panels = 20_000;
            let dx = (b - a) / panels as f64;
            let approx: f64 = (0..panels)
                .map(|i| {
                    let x = a + (i as f64 + 0.5) * dx;
                    (0..r.num_nodes()).map(|m| r.eval_lagrange(m, x).abs()).sum::<f64>() * dx
                })
                .sum();
            assert!((approx - wn).abs() < 1e-7, "{:?} M={} n={n}", r.family(), r.num_nodes());
        }
    }
}
