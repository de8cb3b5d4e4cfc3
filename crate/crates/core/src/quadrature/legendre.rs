//! Legendre polynomials on [-1, 1] and Newton solvers for the Gauss,
//! right-Radau and Lobatto node sets.

use alloc::vec::Vec;
use core::f64::consts::PI;

const NEWTON_MAX_ITER: usize = 100;

/// `(P_n(s), P_n'(s), P_n''(s))` by the three-term recurrence and its
/// derivatives.
pub(crate) fn legendre(n: usize, s: f64) -> (f64, f64, f64) {
    if n == 0 {
        return (1.0, 0.0, 0.0);
    }
    let (mut p0, mut d0, mut dd0) = (1.0, 0.0, 0.0);
    let (mut p1, mut d1, mut dd1) = (s, 1.0, 0.0);
    for k in 1..n {
        let kf = k as f64;
        let a = 2.0 * kf + 1.0;
        let p2 = (a * s * p1 - kf * p0) / (kf + 1.0);
        let d2 = (a * (p1 + s * d1) - kf * d0) / (kf + 1.0);
        let dd2 = (a * (2.0 * d1 + s * dd1) - kf * dd0) / (kf + 1.0);
        (p0, d0, dd0) = (p1, d1, dd1);
        (p1, d1, dd1) = (p2, d2, dd2);
    }
    (p1, d1, dd1)
}

/// Newton iteration on `g` deflated by the roots already found.
fn deflated_newton(mut s: f64, found: &[f64], extra_poles: &[f64], eval: impl Fn(f64) -> (f64, f64)) -> f64 {
    for _ in 0..NEWTON_MAX_ITER {
        let (g, dg) = eval(s);
        let pole_sum: f64 = found.iter().chain(extra_poles).map(|r| 1.0 / (s - r)).sum();
        let denom = dg - g * pole_sum;
        if denom == 0.0 {
            break;
        }
        let dx = g / denom;
        s -= dx;
        if libm::fabs(dx) <= 1e-16 * (1.0 + libm::fabs(s)) {
            break;
        }
    }
    s
}

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut roots = Vec::with_capacity(n);
    for k in 1..=n {
        let guess = libm::cos(PI * (k as f64 - 0.25) / (n as f64 + 0.5));
        let r = deflated_newton(guess, &roots, &[], |s| {
            let (p, d, _) = legendre(n, s);
            (p, d)
        });
        roots.push(r);
    }
    roots.sort_by(f64::total_cmp);
    let weights = roots
        .iter()
        .map(|&s| {
            let (_, d, _) = legendre(n, s);
            2.0 / ((1.0 - s * s) * d * d)
        })
        .collect();
    (roots, weights)
}

/// Right Radau points on [-1, 1] (roots of `P_n - P_{n-1}`), ascending,
/// ending with `+1`.
pub(crate) fn radau_right(n: usize) -> Vec<f64> {
    let mut roots = Vec::with_capacity(n);
    for k in 1..n {
        let guess = libm::cos(2.0 * PI * k as f64 / (2.0 * n as f64 - 1.0));
        let r = deflated_newton(guess, &roots, &[1.0], |s| {
            let (p, d, _) = legendre(n, s);
            let (q, dq, _) = legendre(n - 1, s);
            (p - q, d - dq)
        });
        roots.push(r);
    }
    roots.sort_by(f64::total_cmp);
    roots.push(1.0);
    roots
}

/// Lobatto points on [-1, 1] (`±1` plus the roots of `P_{n-1}'`), ascending.
pub(crate) fn lobatto(n: usize) -> Vec<f64> {
    debug_assert!(n >= 2);
    let mut roots = Vec::with_capacity(n);
    for k in 1..n - 1 {
        let guess = libm::cos(PI * k as f64 / (n as f64 - 1.0));
        let r = deflated_newton(guess, &roots, &[], |s| {
            let (_, d, dd) = legendre(n - 1, s);
            (d, dd)
        });
        roots.push(r);
    }
    roots.push(-1.0);
    roots.push(1.0);
    roots.sort_by(f64::total_cmp);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_closed_forms() {
        let s = 0.37;
        let (p3, d3, dd3) = legendre(3, s);
        assert!((p3 - 0.5 * (5.0 * s * s * s - 3.0 * s)).abs() < 1e-15);
        assert!((d3 - 0.5 * (15.0 * s * s - 3.0)).abs() < 1e-14);
        assert!((dd3 - 15.0 * s).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_two_points() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / 3.0_f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-14 && (w[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_residuals_vanish() {
        for n in 1..=40 {
            let (x, w) = gauss_legendre(n);
            assert_eq!(x.len(), n);
            for &s in &x {
                let (p, d, _) = legendre(n, s);
                assert!((p / d).abs() < 1e-15, "n={n} s={s} p={p}");
            }
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-13);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn radau_two_points() {
        let x = radau_right(2);
        assert!((x[0] + 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(x[1], 1.0);
    }

    #[test]
    fn lobatto_four_points() {
        let x = lobatto(4);
        let r = 1.0 / 5.0_f64.sqrt();
        assert!((x[1] + r).abs() < 1e-15 && (x[2] - r).abs() < 1e-15);
    }

    #[test]
    fn radau_and_lobatto_distinct_for_many_points() {
        for n in 2..=30 {
            let r = radau_right(n);
            let l = lobatto(n);
            assert!(r.windows(2).all(|p| p[0] < p[1]), "radau n={n}");
            assert!(l.windows(2).all(|p| p[0] < p[1]), "lobatto n={n}");
        }
    }
}
