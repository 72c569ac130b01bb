//! Jacobi polynomials over complex arguments.
//!
//! The rational extensions only need conventional Jacobi polynomials
//! `P_n^(α,β)(z)` with arbitrary real (often negative, non-integer) indices,
//! evaluated at `cosh x` or `i sinh x`. Evaluation uses the three-term
//! recurrence in the degree and drops to the explicit finite sum whenever
//! the recurrence would divide by (nearly) zero.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Recurrence denominators closer than this to zero switch evaluation to the
/// finite-sum representation. A small denominator amplifies rounding by
/// roughly its inverse, so the band is wide.
const DEGENERACY_TOL: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(n: u32, alpha: f64, beta: f64) -> Result<Self> {
        let p = Self { n, alpha, beta };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(Error::NonFinite("jacobi alpha"));
        }
        if !self.beta.is_finite() {
            return Err(Error::NonFinite("jacobi beta"));
        }
        Ok(())
    }

    /// True when the degree recurrence divides by a small coefficient for
    /// some intermediate degree `2..=n`.
    pub fn recurrence_degenerate(&self) -> bool {
        let ab = self.alpha + self.beta;
        (2..=self.n).any(|j| {
            let j = j as f64;
            (j + ab).abs() < DEGENERACY_TOL || (2.0 * j + ab - 2.0).abs() < DEGENERACY_TOL
        })
    }

    fn raised(&self) -> Self {
        Self {
            n: self.n - 1,
            alpha: self.alpha + 1.0,
            beta: self.beta + 1.0,
        }
    }
}

fn check_z(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite("jacobi argument"))
    }
}

/// Generalized binomial coefficient `C(r, j)` for real `r` as a falling
/// factorial, valid for negative integer `r` where gamma-function forms break.
pub fn binomial(r: f64, j: u32) -> f64 {
    let mut out = 1.0;
    for i in 0..j {
        out *= (r - i as f64) / (i as f64 + 1.0);
    }
    out
}

/// `P_n^(α,β)(z)`.
pub fn jacobi_poly(p: JacobiParams, z: Complex64) -> Result<Complex64> {
    p.check()?;
    check_z(z)?;
    if p.recurrence_degenerate() {
        Ok(finite_sum(p, z))
    } else {
        Ok(recurrence(p, z))
    }
}

/// `d/dz P_n^(α,β)(z) = (n+α+β+1)/2 · P_{n-1}^(α+1,β+1)(z)`.
pub fn jacobi_poly_derivative(p: JacobiParams, z: Complex64) -> Result<Complex64> {
    p.check()?;
    check_z(z)?;
    if p.n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let scale = 0.5 * (p.n as f64 + p.alpha + p.beta + 1.0);
    Ok(jacobi_poly(p.raised(), z)? * scale)
}

/// The reversed polynomial `w^n P_n(1/w)`, bounded for small `w`.
///
/// Used where `|z|` is large enough that `z^n` would overflow.
pub fn jacobi_poly_reversed(p: JacobiParams, w: Complex64) -> Result<Complex64> {
    p.check()?;
    check_z(w)?;
    let n = p.n;
    let lo = (Complex64::new(1.0, 0.0) - w) * 0.5;
    let hi = (Complex64::new(1.0, 0.0) + w) * 0.5;
    let mut sum = Complex64::new(0.0, 0.0);
    for s in 0..=n {
        let c = binomial(n as f64 + p.alpha, n - s) * binomial(n as f64 + p.beta, s);
        sum += lo.powu(s) * hi.powu(n - s) * c;
    }
    Ok(sum)
}

/// `d/dw` companion of [`jacobi_poly_reversed`] expressed through the raised
/// family: `w^(n-1) P'_n(1/w)`.
pub fn jacobi_poly_derivative_reversed(p: JacobiParams, w: Complex64) -> Result<Complex64> {
    p.check()?;
    check_z(w)?;
    if p.n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let scale = 0.5 * (p.n as f64 + p.alpha + p.beta + 1.0);
    Ok(jacobi_poly_reversed(p.raised(), w)? * scale)
}

fn recurrence(p: JacobiParams, z: Complex64) -> Complex64 {
    let (a, b) = (p.alpha, p.beta);
    let p0 = Complex64::new(1.0, 0.0);
    if p.n == 0 {
        return p0;
    }
    let p1 = z * (0.5 * (a + b + 2.0)) + 0.5 * (a - b);
    if p.n == 1 {
        return p1;
    }
    let (mut prev, mut cur) = (p0, p1);
    for j in 2..=p.n {
        let j = j as f64;
        let s = 2.0 * j + a + b;
        let lead = 2.0 * j * (j + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * s * (s - 2.0);
        let c0 = (s - 1.0) * (a * a - b * b);
        let c2 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * s;
        let next = ((z * c1 + c0) * cur - prev * c2) / lead;
        prev = cur;
        cur = next;
    }
    cur
}

fn finite_sum(p: JacobiParams, z: Complex64) -> Complex64 {
    let n = p.n;
    let lo = (z - 1.0) * 0.5;
    let hi = (z + 1.0) * 0.5;
    let mut sum = Complex64::new(0.0, 0.0);
    for s in 0..=n {
        let c = binomial(n as f64 + p.alpha, n - s) * binomial(n as f64 + p.beta, s);
        sum += lo.powu(s) * hi.powu(n - s) * c;
    }
    sum
}

/// Monomial coefficients of `P_n^(α,β)` in ascending powers of `z`.
/// Coefficients that vanish to within rounding are returned as exact zeros.
pub fn jacobi_coefficients(p: JacobiParams) -> Result<Vec<f64>> {
    Ok(jacobi_tracked(p)?.c)
}

/// Ascending real coefficients together with `mag`, the coefficient sums
/// of absolute values that bound each coefficient's rounding error
/// (`|error_i| <~ n·eps·mag_i`).
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct TrackedPoly {
    pub c: Vec<f64>,
    mag: Vec<f64>,
}

/// Multiple of `eps · mag` below which a coefficient counts as zero.
const CANCEL_FACTOR: f64 = 64.0;

impl TrackedPoly {
    pub fn mul(&self, o: &Self) -> Self {
        Self {
            c: poly_mul(&self.c, &o.c),
            mag: poly_mul(&self.mag, &o.mag),
        }
        .cleaned()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        Self {
            c: (0..n).map(|i| get(&self.c, i) - get(&o.c, i)).collect(),
            mag: (0..n).map(|i| get(&self.mag, i) + get(&o.mag, i)).collect(),
        }
        .cleaned()
    }

    fn cleaned(mut self) -> Self {
        for (c, m) in self.c.iter_mut().zip(&self.mag) {
            if c.abs() <= CANCEL_FACTOR * f64::EPSILON * m {
                *c = 0.0;
            }
        }
        self
    }

    /// Index of the highest non-zero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.c.iter().rposition(|&c| c != 0.0)
    }

    /// `w^deg · P(1/w)` as ascending coefficients in `w`.
    pub fn reversed(&self) -> Vec<f64> {
        match self.degree() {
            Some(d) => self.c[..=d].iter().rev().copied().collect(),
            None => Vec::new(),
        }
    }
}

pub(crate) fn jacobi_tracked(p: JacobiParams) -> Result<TrackedPoly> {
    p.check()?;
    let n = p.n as usize;
    let mut c = vec![0.0; n + 1];
    let mut mag = vec![0.0; n + 1];
    // |coefficients| of ((z-1)/2)^s ((z+1)/2)^(n-s) are those of ((z+1)/2)^n
    let mut envelope = vec![1.0];
    for _ in 0..n {
        envelope = poly_mul(&envelope, &[0.5, 0.5]);
    }
    for s in 0..=p.n {
        let coef = binomial(n as f64 + p.alpha, p.n - s) * binomial(n as f64 + p.beta, s);
        let mut term = vec![coef];
        for _ in 0..s {
            term = poly_mul(&term, &[-0.5, 0.5]);
        }
        for _ in s..p.n {
            term = poly_mul(&term, &[0.5, 0.5]);
        }
        for i in 0..=n {
            c[i] += term[i];
            mag[i] += coef.abs() * envelope[i];
        }
    }
    Ok(TrackedPoly { c, mag }.cleaned())
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Value and first derivative of an ascending-coefficient polynomial.
pub(crate) fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Roots of a real polynomial given ascending coefficients (Durand–Kerner).
///
/// Leading coefficients that are negligible relative to the largest one are
/// trimmed first, so a degree drop caused by special parameter values does
/// not produce spurious roots at infinity.
pub(crate) fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= 1e-13 * scale {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs[..=deg].iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32) * radius).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    for _ in 0..2000 {
        let mut delta = 0.0_f64;
        for i in 0..deg {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            delta = delta.max(step.norm() / (1.0 + zi.norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn degree_zero_is_one() {
        let p = JacobiParams::new(0, 2.5, -7.0).unwrap();
        assert_eq!(jacobi_poly(p, c(1.3, 0.2)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn degree_one_closed_form() {
        let p = JacobiParams::new(1, 1.0, 0.0).unwrap();
        let v = jacobi_poly(p, c(2.0, 0.0)).unwrap();
        assert!((v - c(3.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn legendre_at_one() {
        let p = JacobiParams::new(2, 0.0, 0.0).unwrap();
        assert!((jacobi_poly(p, c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn value_at_one_is_binomial() {
        for (n, a, b) in [(3, 0.5, -2.25), (5, -3.5, -9.5), (4, 2.0, 1.0)] {
            let p = JacobiParams::new(n, a, b).unwrap();
            let v = jacobi_poly(p, c(1.0, 0.0)).unwrap();
            let want = binomial(n as f64 + a, n);
            assert!((v.re - want).abs() <= 1e-12 * want.abs().max(1.0), "{v} vs {want}");
        }
    }

    #[test]
    fn derivative_examples() {
        let p0 = JacobiParams::new(0, 3.0, -1.0).unwrap();
        assert_eq!(jacobi_poly_derivative(p0, c(0.7, 0.0)).unwrap(), c(0.0, 0.0));
        let p1 = JacobiParams::new(1, 1.0, 0.0).unwrap();
        assert!((jacobi_poly_derivative(p1, c(5.0, 0.0)).unwrap() - 1.5).norm() < 1e-15);

        let p2 = JacobiParams::new(2, 0.5, -0.5).unwrap();
        let z = c(0.3, 0.0);
        let h = 1e-6;
        let fd = (jacobi_poly(p2, z + h).unwrap() - jacobi_poly(p2, z - h).unwrap()) / (2.0 * h);
        let d = jacobi_poly_derivative(p2, z).unwrap();
        assert!((d - fd).norm() <= 1e-8 * d.norm().max(1.0));
    }

    #[test]
    fn degenerate_recurrence_falls_back() {
        // n + α + β = 0 at n = 2.
        let p = JacobiParams::new(3, -1.0, -1.0).unwrap();
        assert!(p.recurrence_degenerate());
        let v = jacobi_poly(p, c(0.4, -0.3)).unwrap();
        assert!(v.re.is_finite() && v.im.is_finite());
        assert!((v - finite_sum(p, c(0.4, -0.3))).norm() < 1e-15);
    }

    #[test]
    fn recurrence_matches_finite_sum() {
        let p = JacobiParams::new(6, -2.5, -9.5).unwrap();
        assert!(!p.recurrence_degenerate());
        for z in [c(1.7, 0.0), c(0.0, 2.2), c(-0.4, 0.9)] {
            let r = recurrence(p, z);
            let s = finite_sum(p, z);
            assert!((r - s).norm() <= 1e-11 * s.norm().max(1.0), "{r} vs {s}");
        }
    }

    #[test]
    fn reversed_matches_direct() {
        let p = JacobiParams::new(3, -2.5, -9.5).unwrap();
        let z = c(4.0, 1.0);
        let w = z.inv();
        let direct = jacobi_poly(p, z).unwrap() * w.powu(3);
        let rev = jacobi_poly_reversed(p, w).unwrap();
        assert!((direct - rev).norm() < 1e-12 * rev.norm().max(1.0));
        let ddirect = jacobi_poly_derivative(p, z).unwrap() * w.powu(2);
        let drev = jacobi_poly_derivative_reversed(p, w).unwrap();
        assert!((ddirect - drev).norm() < 1e-12 * drev.norm().max(1.0));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(JacobiParams::new(2, f64::NAN, 0.0).is_err());
        let p = JacobiParams::new(2, 0.0, 0.0).unwrap();
        assert!(jacobi_poly(p, c(f64::INFINITY, 0.0)).is_err());
    }

    #[test]
    fn coefficients_and_roots() {
        let p = JacobiParams::new(3, 0.0, 0.0).unwrap();
        let coef = jacobi_coefficients(p).unwrap();
        // Legendre P3 = (5z^3 - 3z)/2
        let want = [0.0, -1.5, 0.0, 2.5];
        for (a, b) in coef.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        let mut roots: Vec<f64> = polynomial_roots(&coef).iter().map(|r| r.re).collect();
        roots.sort_by(f64::total_cmp);
        let r = (0.6_f64).sqrt();
        for (a, b) in roots.iter().zip([-r, 0.0, r]) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
