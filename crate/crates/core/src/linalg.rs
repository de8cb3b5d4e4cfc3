//! Dense Gaussian elimination with partial pivoting, used by the Newton
//! solvers. Systems here are at most a few dozen unknowns.

use crate::error::{Result, SdcError};
use crate::scalar::Scalar;

/// Solves `a x = b` in place; `a` is row-major `n x n`, `b` becomes `x`.
pub(crate) fn solve_in_place<S: Scalar>(a: &mut [S], b: &mut [S]) -> Result<()> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let scale = a.iter().fold(0.0_f64, |m, x| m.max(x.modulus()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(SdcError::Singular);
    }
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].modulus();
        for row in col + 1..n {
            let v = a[row * n + col].modulus();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best <= scale * 1e-15 {
            return Err(SdcError::Singular);
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let d = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / d;
            if factor == S::zero() {
                continue;
            }
            for k in col..n {
                let t = a[col * n + k];
                a[row * n + k] -= factor * t;
            }
            let t = b[col];
            b[row] -= factor * t;
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col * n + k] * b[k];
        }
        b[col] = acc / a[col * n + col];
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn solves_small_real_system() {
        let mut a = [2.0, 1.0, 1.0, 3.0];
        let mut b = [3.0, 5.0];
        solve_in_place(&mut a, &mut b).unwrap();
        assert!((b[0] - 0.8).abs() < 1e-15);
        assert!((b[1] - 1.4).abs() < 1e-15);
    }

    #[test]
    fn needs_pivoting() {
        let mut a = [0.0, 1.0, 1.0, 0.0];
        let mut b = [2.0, 3.0];
        solve_in_place(&mut a, &mut b).unwrap();
        assert_eq!(b, [3.0, 2.0]);
    }

    #[test]
    fn complex_scalar() {
        let z = Complex64::new(1.0, 2.0);
        let mut a = [z];
        let mut b = [Complex64::new(5.0, 0.0)];
        solve_in_place(&mut a, &mut b).unwrap();
        assert!((b[0] * z - Complex64::new(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_is_reported() {
        let mut a = [1.0, 2.0, 2.0, 4.0];
        let mut b = [1.0, 1.0];
        assert_eq!(solve_in_place(&mut a, &mut b), Err(SdcError::Singular));
    }
}
