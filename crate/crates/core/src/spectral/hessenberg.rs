//! Shifted QR iteration on a dense complex upper Hessenberg matrix.
//!
//! Unitary Givens rotations, Wilkinson shifts from the trailing 2×2 block,
//! an exceptional shift every ten stalled iterations and deflation on
//! negligible subdiagonal entries. Eigenvalues only; `O(n³)`.

use num_complex::Complex64;

use super::tridiag::MAX_ITER;
use crate::error::{Error, Result};

const EXCEPTIONAL_EVERY: usize = 10;

/// Row-major square matrix, upper Hessenberg on input.
#[derive(Debug, Clone)]
pub struct Hessenberg {
    n: usize,
    a: Vec<Complex64>,
}

impl Hessenberg {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_tridiagonal(diag: &[Complex64], lower: &[Complex64], upper: &[Complex64]) -> Self {
        let n = diag.len();
        let mut h = Self::zeros(n);
        for i in 0..n {
            h[(i, i)] = diag[i];
            if i + 1 < n {
                h[(i + 1, i)] = lower[i];
                h[(i, i + 1)] = upper[i];
            }
        }
        h
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// All eigenvalues, consuming the matrix.
    pub fn eigenvalues(mut self) -> Result<Vec<Complex64>> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return Ok(out);
        }
        let mut hi = n - 1;
        let mut iter = 0;
        loop {
            if hi == 0 {
                out.push(self[(0, 0)]);
                break;
            }
            let mut lo = hi;
            while lo > 0 {
                let s = self[(lo, lo)].norm() + self[(lo - 1, lo - 1)].norm();
                if self[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                    self[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                    break;
                }
                lo -= 1;
            }
            if lo == hi {
                out.push(self[(hi, hi)]);
                hi -= 1;
                iter = 0;
                continue;
            }
            if iter == MAX_ITER {
                return Err(Error::NoConvergence { block: lo });
            }
            iter += 1;
            let shift = if iter % EXCEPTIONAL_EVERY == 0 {
                self[(hi, hi)] + Complex64::new(0.75, 0.4) * self[(hi, hi - 1)].norm()
            } else {
                self.wilkinson(hi)
            };
            self.qr_step(lo, hi, shift);
        }
        Ok(out)
    }

    fn wilkinson(&self, hi: usize) -> Complex64 {
        let a = self[(hi - 1, hi - 1)];
        let b = self[(hi - 1, hi)];
        let c = self[(hi, hi - 1)];
        let d = self[(hi, hi)];
        let half = (a - d) * 0.5;
        let disc = (half * half + b * c).sqrt();
        let l1 = (a + d) * 0.5 + disc;
        let l2 = (a + d) * 0.5 - disc;
        if (l1 - d).norm() <= (l2 - d).norm() {
            l1
        } else {
            l2
        }
    }

    /// One explicit shifted QR step restricted to the active window.
    fn qr_step(&mut self, lo: usize, hi: usize, shift: Complex64) {
        for i in lo..=hi {
            self[(i, i)] -= shift;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let x = self[(i, i)];
            let y = self[(i + 1, i)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (x / r, y / r)
            };
            for j in i..=hi {
                let u = self[(i, j)];
                let v = self[(i + 1, j)];
                self[(i, j)] = c.conj() * u + s.conj() * v;
                self[(i + 1, j)] = -s * u + c * v;
            }
            rots.push((c, s));
        }
        for (off, (c, s)) in rots.into_iter().enumerate() {
            let i = lo + off;
            let top = (i + 2).min(hi);
            for r in lo..=top {
                let u = self[(r, i)];
                let v = self[(r, i + 1)];
                self[(r, i)] = u * c + v * s;
                self[(r, i + 1)] = -u * s.conj() + v * c.conj();
            }
        }
        for i in lo..=hi {
            self[(i, i)] += shift;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Hessenberg {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.a[r * self.n + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Hessenberg {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.a[r * self.n + c]
    }
}
