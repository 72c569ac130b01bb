//! Superpotential, partner potentials and the shape-invariance remainder.
//!
//! `W(x, a) = a F(x) - G(x) + U(x, a)` with `a = k ∓ 1/2`. The potential of the
//! family at `k` is `W² - W'` at `a = k - 1/2`, and shape invariance reads
//! `[W² - W'](a) - [W² + W'](a + 1) = -R(a)` with `R(a) = 2a + 1`.

use num_complex::Complex64;

use crate::algebra::{energy_closed_form, make_algebra_functions, AlgebraFunctions, PotentialParams, Realization};
use crate::error::{Error, Result};
use crate::potentials::extension_singularity;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialEval {
    pub a: f64,
    pub x: f64,
    /// `a F - G`
    pub w1: Complex64,
    /// `U(x, a)`
    pub w2: Complex64,
    pub w: Complex64,
    pub w_prime: Complex64,
}

fn eval_with(af: &AlgebraFunctions, a: f64, x: f64) -> Result<SuperpotentialEval> {
    af.family.check_x(x)?;
    let w1 = af.f(x)? * a - af.g(x)?;
    let w2 = af.u(x, a)?;
    let w_prime = af.df(x)? * a - af.dg(x)? + af.du(x, a)?;
    Ok(SuperpotentialEval {
        a,
        x,
        w1,
        w2,
        w: w1 + w2,
        w_prime,
    })
}

/// `W` and `W'` at shifted index `a` with the extension index and `B` of `p`.
pub fn superpotential(p: &PotentialParams, a: f64, x: f64) -> Result<SuperpotentialEval> {
    if !a.is_finite() {
        return Err(Error::NonFinite("a"));
    }
    eval_with(&make_algebra_functions(p)?, a, x)
}

/// `(W² + W', W² - W')` at `(a, x)`.
pub fn partner_pair(p: &PotentialParams, a: f64, x: f64) -> Result<(Complex64, Complex64)> {
    Ok(pair_of(&superpotential(p, a, x)?))
}

pub fn pair_of(s: &SuperpotentialEval) -> (Complex64, Complex64) {
    let w2 = s.w * s.w;
    (w2 + s.w_prime, w2 - s.w_prime)
}

/// Which partner sits on the left of the shape-invariance difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    /// `[W² + W'](a) - [W² - W'](a + 1)`
    PlusMinus,
    /// `[W² - W'](a) - [W² + W'](a + 1)`
    MinusPlus,
}

impl SignConvention {
    pub fn name(self) -> &'static str {
        match self {
            SignConvention::PlusMinus => "plus_minus",
            SignConvention::MinusPlus => "minus_plus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeInvarianceReport {
    pub a: f64,
    /// `-mean(D)`; equals `R(a)` when the pairing closes.
    pub r_mean: f64,
    /// Imaginary part of `-mean(D)`, zero for a closing pairing.
    pub r_mean_imag: f64,
    /// Population standard deviation of complex `D` over the grid.
    pub r_stddev: f64,
    pub r_expected: f64,
    pub sign_convention: SignConvention,
    /// `r_stddev <= SI_CONSTANCY_TOL · |r_mean|` for the selected pairing.
    pub is_constant: bool,
}

impl ShapeInvarianceReport {
    pub fn relative_stddev(&self) -> f64 {
        self.r_stddev / self.r_mean.abs().max(f64::MIN_POSITIVE)
    }

    pub fn remainder_error(&self) -> f64 {
        Complex64::new(self.r_mean - self.r_expected, self.r_mean_imag).norm()
    }
}

/// Relative spread below which `D(x)` counts as constant.
pub const SI_CONSTANCY_TOL: f64 = 1e-6;

/// Shape-invariance residual at index `a` over `grid`, trying both pairings.
pub fn shape_invariance_residual(p: &PotentialParams, a: f64, grid: &[f64]) -> Result<ShapeInvarianceReport> {
    if grid.is_empty() {
        return Err(Error::EmptySamples);
    }
    for shifted in [a, a + 1.0] {
        let q = p.with_k(shifted + 0.5);
        if let Some(msg) = q.constraint_violation() {
            return Err(Error::InvalidParams(format!("shifted index a = {shifted}: {msg}")));
        }
    }
    if let Some(msg) = extension_singularity(p, a).or_else(|| extension_singularity(p, a + 1.0)) {
        return Err(Error::InvalidParams(format!(
            "extension is singular at index {a} or {}: {msg}",
            a + 1.0
        )));
    }
    let af = make_algebra_functions(p)?;
    let mut plus_minus = Vec::with_capacity(grid.len());
    let mut minus_plus = Vec::with_capacity(grid.len());
    for &x in grid {
        let (lo_plus, lo_minus) = pair_of(&eval_with(&af, a, x)?);
        let (hi_plus, hi_minus) = pair_of(&eval_with(&af, a + 1.0, x)?);
        plus_minus.push(lo_plus - hi_minus);
        minus_plus.push(lo_minus - hi_plus);
    }
    let (mean_pm, sd_pm) = mean_stddev(&plus_minus);
    let (mean_mp, sd_mp) = mean_stddev(&minus_plus);
    let (mean, sd, sign_convention) = if sd_mp <= sd_pm {
        (mean_mp, sd_mp, SignConvention::MinusPlus)
    } else {
        (mean_pm, sd_pm, SignConvention::PlusMinus)
    };
    let r = -mean;
    Ok(ShapeInvarianceReport {
        a,
        r_mean: r.re,
        r_mean_imag: r.im,
        r_stddev: sd,
        r_expected: 2.0 * a + 1.0,
        sign_convention,
        is_constant: sd <= SI_CONSTANCY_TOL * r.norm(),
    })
}

fn mean_stddev(v: &[Complex64]) -> (Complex64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<Complex64>() / n;
    let var = v.iter().map(|d| (d - mean).norm_sqr()).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// `R(a) = 2a + 1`.
pub fn remainder(a: f64) -> f64 {
    2.0 * a + 1.0
}

/// `Σ_{s=1..n} R(a - s)` with `a = k - 1/2`; telescopes to the ladder energy.
pub fn energy_from_remainders(k: f64, n: u32) -> Result<f64> {
    energy_closed_form(k, n)?;
    let a = k - 0.5;
    Ok((1..=n).fold(0.0, |acc, s| acc + remainder(a - s as f64)))
}
