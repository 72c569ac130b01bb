//! Implicit-shift QL on tridiagonal matrices.
//!
//! `d` holds the diagonal, `e[i]` couples rows `i` and `i + 1`
//! (`e.len() == d.len()`, last entry ignored). Both routines overwrite `d`
//! with the eigenvalues, unordered.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Iteration cap per eigenvalue.
pub const MAX_ITER: usize = 30;
/// Stalled iterations between exceptional shifts.
const EXCEPTIONAL_EVERY: usize = 10;

/// Symmetric real tridiagonal QL with Wilkinson shifts.
pub fn ql_real(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == MAX_ITER {
                return Err(Error::NoConvergence { block: l });
            }
            iter += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Raised when a complex orthogonal rotation meets an isotropic vector
/// (`f² + g² ≈ 0` with `f, g` not small); the caller falls back to unitary QR.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Breakdown;

#[derive(Debug)]
pub enum QlFailure {
    Breakdown(Breakdown),
    NoConvergence { block: usize },
}

/// QL for complex-symmetric tridiagonal matrices using complex orthogonal
/// rotations (`c² + s² = 1`), which keep the matrix complex-symmetric and
/// tridiagonal. The matrix need not be Hermitian.
pub fn ql_complex_symmetric(d: &mut [Complex64], e: &mut [Complex64]) -> Result<(), QlFailure> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    e[n - 1] = zero;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].norm() + d[m + 1].norm();
                if e[m].norm() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == MAX_ITER {
                return Err(QlFailure::NoConvergence { block: l });
            }
            iter += 1;

            let shift = if iter % EXCEPTIONAL_EVERY == 0 {
                d[l] + Complex64::new(0.75, 0.4) * e[l].norm()
            } else {
                let g = (d[l + 1] - d[l]) / (e[l] * 2.0);
                let r = (g * g + one).sqrt();
                let denom = if (g + r).norm() >= (g - r).norm() { g + r } else { g - r };
                d[l] - e[l] / denom
            };
            let mut g = d[m] - shift;
            let (mut s, mut c, mut p) = (one, one, zero);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                let scale = f.norm() + g.norm();
                let r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if scale == 0.0 {
                    d[i + 1] -= p;
                    e[m] = zero;
                    underflow = true;
                    break;
                }
                if r.norm() <= 1e-8 * scale {
                    return Err(QlFailure::Breakdown(Breakdown));
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + c * b * 2.0;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = zero;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_real() {
        let mut d = vec![2.0, 2.0];
        let mut e = vec![-1.0, 0.0];
        ql_real(&mut d, &mut e).unwrap();
        d.sort_by(f64::total_cmp);
        assert!((d[0] - 1.0).abs() < 1e-15 && (d[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn complex_symmetric_two_by_two() {
        // [[1+i, 2], [2, 3]]: λ = 2 + i/2 ± sqrt(((-2+i)/2)² + 4)
        let mut d = vec![Complex64::new(1.0, 1.0), Complex64::new(3.0, 0.0)];
        let mut e = vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)];
        ql_complex_symmetric(&mut d, &mut e).unwrap();
        let half = Complex64::new(-2.0, 1.0) * 0.5;
        let root = (half * half + 4.0).sqrt();
        let mid = Complex64::new(2.0, 0.5);
        let want = [mid + root, mid - root];
        for w in want {
            assert!(d.iter().any(|v| (v - w).norm() < 1e-13), "{d:?} missing {w}");
        }
    }
}
