//! The modified SO(2,1) / sl(2,C) realization.
//!
//! Both families share one structure once written in terms of an auxiliary
//! variable `z(x)` and its derivative `z'(x)`:
//!
//! | family  | z         | z'        | F = z/z' | G = B/z'      |
//! |---------|-----------|-----------|----------|---------------|
//! | GPT     | cosh x    | sinh x    | coth x   | B csch x      |
//! | ScarfII | i sinh x  | i cosh x  | tanh x   | -i B sech x   |
//!
//! The extension operator is
//! `U(x, a) = (m-2B-1)/2 · z' · [P_{m-1}^(-B+a+1/2, -B-a-1/2)(z) / P_m^(-B+a-1/2, -B-a-3/2)(z)
//!                               - P_{m-1}^(-B+a-1/2, -B-a+1/2)(z) / P_m^(-B+a-3/2, -B-a-1/2)(z)]`
//! which for `m = 1` collapses to `2B z' [1/(2Bz-2a-1) - 1/(2Bz-2a+1)]` and
//! vanishes for `m = 0`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specialfun::{horner, jacobi_tracked, JacobiParams};

/// Smallest admissible GPT coordinate; the half-line potential is singular at 0.
pub const GPT_X_FLOOR: f64 = 1e-8;

/// Beyond this `|z|` the extension operator is evaluated through reversed
/// polynomials in `1/z`.
const LARGE_Z: f64 = 4.0;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Generalized Pöschl-Teller on the half line.
    Gpt,
    /// PT-symmetric Scarf-II on the full line.
    ScarfII,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gpt => "gpt",
            Family::ScarfII => "scarf2",
        }
    }

    pub fn check_x(self, x: f64) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::NonFinite("x"));
        }
        if self == Family::Gpt && x < GPT_X_FLOOR {
            return Err(Error::Domain {
                family: self,
                x,
                reason: "the half-line potential requires x >= 1e-8",
            });
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gpt" => Ok(Family::Gpt),
            "scarf2" | "scarfii" | "scarf-ii" => Ok(Family::ScarfII),
            other => Err(Error::Usage(format!(
                "unknown family '{other}' (expected gpt or scarf2)"
            ))),
        }
    }
}

/// Family, strength `B`, `J₃` eigenvalue `k` and extension index `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub family: Family,
    pub b: f64,
    pub k: f64,
    pub m: u32,
}

impl PotentialParams {
    /// Builds and checks the base constraints (see [`Self::constraint_violation`]).
    pub fn new(family: Family, b: f64, k: f64, m: u32) -> Result<Self> {
        let p = Self { family, b, k, m };
        match p.constraint_violation() {
            Some(msg) => Err(Error::InvalidParams(msg)),
            None => Ok(p),
        }
    }

    /// Builds without checking; for sweeps that need to report invalid tuples.
    pub fn unchecked(family: Family, b: f64, k: f64, m: u32) -> Self {
        Self { family, b, k, m }
    }

    /// The first violated base constraint, if any.
    pub fn constraint_violation(&self) -> Option<String> {
        if !self.b.is_finite() || !self.k.is_finite() {
            return Some("B and k must be finite".into());
        }
        match self.family {
            Family::Gpt => {
                if self.k + 0.5 <= 1.0 {
                    Some(format!("k + 1/2 > 1 fails ({} <= 1)", self.k + 0.5))
                } else if self.b <= self.k + 0.5 {
                    Some(format!("B > k + 1/2 fails ({} <= {})", self.b, self.k + 0.5))
                } else {
                    None
                }
            }
            Family::ScarfII => {
                if self.b <= 0.0 {
                    Some(format!("B > 0 fails ({} <= 0)", self.b))
                } else if self.k <= 0.5 {
                    Some(format!("k > 1/2 fails ({} <= 0.5)", self.k))
                } else {
                    None
                }
            }
        }
    }

    /// Lower shifted index `a = k - 1/2`, the superpotential label.
    pub fn a(&self) -> f64 {
        self.k - 0.5
    }

    /// Continuum threshold `(k - 1/2)²`.
    pub fn threshold(&self) -> f64 {
        self.a() * self.a()
    }

    pub fn n_max(&self) -> Option<u32> {
        n_max_for(self.k)
    }

    pub fn with_k(&self, k: f64) -> Self {
        Self { k, ..*self }
    }

    pub fn with_m(&self, m: u32) -> Self {
        Self { m, ..*self }
    }
}

/// Largest integer strictly below `k - 1/2`.
pub fn n_max_for(k: f64) -> Option<u32> {
    let a = k - 0.5;
    if a.is_nan() || a <= 0.0 {
        return None;
    }
    Some((a.ceil() - 1.0) as u32)
}

/// Which closed form evaluates `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UForm {
    /// The two-term rational display, defined for `m = 1` only.
    Explicit,
    /// The Jacobi-polynomial ratio form, any `m >= 1`.
    JacobiRatio,
}

/// Anything that supplies `F`, `G`, `U` and their analytic x-derivatives.
pub trait Realization {
    fn family(&self) -> Family;
    fn f(&self, x: f64) -> Result<Complex64>;
    fn df(&self, x: f64) -> Result<Complex64>;
    fn g(&self, x: f64) -> Result<Complex64>;
    fn dg(&self, x: f64) -> Result<Complex64>;
    fn u(&self, x: f64, a: f64) -> Result<Complex64>;
    fn du(&self, x: f64, a: f64) -> Result<Complex64>;
}

/// The family's `(F, G, U)` triple at fixed `B` and extension index `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraFunctions {
    pub family: Family,
    pub b: f64,
    pub m: u32,
}

pub fn make_algebra_functions(p: &PotentialParams) -> Result<AlgebraFunctions> {
    if let Some(msg) = p.constraint_violation() {
        return Err(Error::InvalidParams(msg));
    }
    Ok(AlgebraFunctions {
        family: p.family,
        b: p.b,
        m: p.m,
    })
}

/// Auxiliary variable at `x`: either direct `(z, z')` or, for large `|z|`,
/// `(w = 1/z, t = z'/z)`.
enum Aux {
    Direct { z: Complex64, zp: Complex64 },
    Scaled { w: Complex64, t: Complex64 },
}

impl AlgebraFunctions {
    fn aux(&self, x: f64) -> Aux {
        match self.family {
            Family::Gpt => {
                if x.cosh() <= LARGE_Z {
                    Aux::Direct {
                        z: Complex64::new(x.cosh(), 0.0),
                        zp: Complex64::new(x.sinh(), 0.0),
                    }
                } else {
                    Aux::Scaled {
                        w: Complex64::new(sech(x), 0.0),
                        t: Complex64::new(x.tanh(), 0.0),
                    }
                }
            }
            Family::ScarfII => {
                if x.sinh().abs() <= LARGE_Z {
                    Aux::Direct {
                        z: I * x.sinh(),
                        zp: I * x.cosh(),
                    }
                } else {
                    Aux::Scaled {
                        w: -I * csch(x),
                        t: Complex64::new(1.0 / x.tanh(), 0.0),
                    }
                }
            }
        }
    }

    /// Default form: explicit for `m = 1`, Jacobi ratio otherwise.
    pub fn default_form(&self) -> UForm {
        if self.m == 1 {
            UForm::Explicit
        } else {
            UForm::JacobiRatio
        }
    }

    pub fn u_form(&self, form: UForm, x: f64, a: f64) -> Result<Complex64> {
        self.family.check_x(x)?;
        if self.m == 0 {
            return Ok(ZERO);
        }
        match form {
            UForm::Explicit => self.explicit(x, a).map(|(u, _)| u),
            UForm::JacobiRatio => self.jacobi_ratio(x, a).map(|(u, _)| u),
        }
    }

    pub fn du_form(&self, form: UForm, x: f64, a: f64) -> Result<Complex64> {
        self.family.check_x(x)?;
        if self.m == 0 {
            return Ok(ZERO);
        }
        match form {
            UForm::Explicit => self.explicit(x, a).map(|(_, du)| du),
            UForm::JacobiRatio => self.jacobi_ratio(x, a).map(|(_, du)| du),
        }
    }

    /// `(U, dU/dx)` from the two-term `m = 1` display.
    fn explicit(&self, x: f64, a: f64) -> Result<(Complex64, Complex64)> {
        if self.m != 1 {
            return Err(Error::InvalidParams(format!(
                "the explicit two-term form exists only for m = 1 (m = {})",
                self.m
            )));
        }
        let b2 = 2.0 * self.b;
        // 1/d1 - 1/d2 = (d2 - d1)/(d1 d2) with d2 - d1 known exactly
        let (u, du) = match self.aux(x) {
            Aux::Direct { z, zp } => {
                let d1 = z * b2 - (2.0 * a + 1.0);
                let d2 = z * b2 - (2.0 * a - 1.0);
                check_denominator(d1, x)?;
                check_denominator(d2, x)?;
                let prod = d1 * d2;
                let bracket = 2.0 / prod;
                let dbracket = -(d1 + d2) * 2.0 / (prod * prod);
                (zp * b2 * bracket, z * b2 * bracket + zp * zp * b2 * b2 * dbracket)
            }
            Aux::Scaled { w, t } => {
                let d1 = -w * (2.0 * a + 1.0) + b2;
                let d2 = -w * (2.0 * a - 1.0) + b2;
                check_denominator(d1, x)?;
                check_denominator(d2, x)?;
                let prod = d1 * d2;
                let bracket = w * 2.0 / prod;
                let dbracket = -w * (d1 + d2) * 2.0 / (prod * prod);
                (t * b2 * bracket, bracket * b2 + t * t * b2 * b2 * dbracket)
            }
        };
        Ok((u, du))
    }

    /// `(U, dU/dx)` from the Jacobi-ratio display, derivatives analytic.
    ///
    /// The two ratios agree to leading order in `1/z`, so subtracting them
    /// numerically loses digits as `|z|` grows. They are combined instead as
    /// `R = P/Q = (N1 D2 - N2 D1)/(D1 D2)` with cancelled coefficients zeroed.
    fn jacobi_ratio(&self, x: f64, a: f64) -> Result<(Complex64, Complex64)> {
        let (m, b) = (self.m, self.b);
        let c = 0.5 * (m as f64 - 2.0 * b - 1.0);
        let n1 = jacobi_tracked(JacobiParams::new(m - 1, -b + a + 0.5, -b - a - 0.5)?)?;
        let d1 = jacobi_tracked(JacobiParams::new(m, -b + a - 0.5, -b - a - 1.5)?)?;
        let n2 = jacobi_tracked(JacobiParams::new(m - 1, -b + a - 0.5, -b - a + 0.5)?)?;
        let d2 = jacobi_tracked(JacobiParams::new(m, -b + a - 1.5, -b - a - 0.5)?)?;
        let p = n1.mul(&d2).sub(&n2.mul(&d1));
        let q = d1.mul(&d2);
        let singular = Error::Singularity {
            what: "extension operator U",
            x,
        };
        let Some(dp) = p.degree() else {
            return Ok((ZERO, ZERO));
        };
        let dq = q.degree().ok_or(singular)?;
        // U = c z' R and U' = c (z R + z'^2 dR/dz), using z'' = z.
        match self.aux(x) {
            Aux::Direct { z, zp } => {
                let (pv, pd) = horner(&p.c, z);
                let (qv, qd) = horner(&q.c, z);
                check_denominator(qv, x)?;
                let r = pv / qv;
                let dr = (pd * qv - pv * qd) / (qv * qv);
                Ok((zp * c * r, (z * r + zp * zp * dr) * c))
            }
            Aux::Scaled { w, t } => {
                // R = z^e P~(w)/Q~(w) with reversed coefficients and
                // dR/dz = z^(e-1) (e P~/Q~ - w d(P~/Q~)/dw).
                let e = dp as i32 - dq as i32;
                let (pv, pd) = horner(&p.reversed(), w);
                let (qv, qd) = horner(&q.reversed(), w);
                check_denominator(qv, x)?;
                let r = pv / qv;
                let dr = (pd * qv - pv * qd) / (qv * qv);
                let z_pow = w.powi(-(e + 1));
                Ok((z_pow * t * c * r, z_pow * c * (r + t * t * (r * e as f64 - w * dr))))
            }
        }
    }
}

fn check_denominator(d: Complex64, x: f64) -> Result<()> {
    if d.norm() == 0.0 || !d.re.is_finite() || !d.im.is_finite() {
        return Err(Error::Singularity {
            what: "extension operator U",
            x,
        });
    }
    Ok(())
}

pub(crate) fn sech(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

pub(crate) fn csch(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    let v = -2.0 * e / (-2.0 * x.abs()).exp_m1();
    v.copysign(x)
}

impl Realization for AlgebraFunctions {
    fn family(&self) -> Family {
        self.family
    }

    fn f(&self, x: f64) -> Result<Complex64> {
        self.family.check_x(x)?;
        Ok(Complex64::new(
            match self.family {
                Family::Gpt => 1.0 / x.tanh(),
                Family::ScarfII => x.tanh(),
            },
            0.0,
        ))
    }

    fn df(&self, x: f64) -> Result<Complex64> {
        self.family.check_x(x)?;
        Ok(Complex64::new(
            match self.family {
                Family::Gpt => -csch(x).powi(2),
                Family::ScarfII => sech(x).powi(2),
            },
            0.0,
        ))
    }

    fn g(&self, x: f64) -> Result<Complex64> {
        self.family.check_x(x)?;
        Ok(match self.family {
            Family::Gpt => Complex64::new(self.b * csch(x), 0.0),
            Family::ScarfII => -I * (self.b * sech(x)),
        })
    }

    fn dg(&self, x: f64) -> Result<Complex64> {
        self.family.check_x(x)?;
        Ok(match self.family {
            Family::Gpt => Complex64::new(-self.b * csch(x) / x.tanh(), 0.0),
            Family::ScarfII => I * (self.b * sech(x) * x.tanh()),
        })
    }

    fn u(&self, x: f64, a: f64) -> Result<Complex64> {
        self.u_form(self.default_form(), x, a)
    }

    fn du(&self, x: f64, a: f64) -> Result<Complex64> {
        self.du_form(self.default_form(), x, a)
    }
}

/// Deliberate corruption of a realization, for exercising the residual checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// `F(x)` replaced by `tanh(2x)`.
    TanhTwoX,
}

impl std::str::FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tanh2x" => Ok(Fault::TanhTwoX),
            other => Err(Error::Usage(format!("unknown fault '{other}' (expected tanh2x)"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FaultInjected<R> {
    pub inner: R,
    pub fault: Fault,
}

impl<R: Realization> Realization for FaultInjected<R> {
    fn family(&self) -> Family {
        self.inner.family()
    }

    fn f(&self, x: f64) -> Result<Complex64> {
        self.inner.family().check_x(x)?;
        match self.fault {
            Fault::TanhTwoX => Ok(Complex64::new((2.0 * x).tanh(), 0.0)),
        }
    }

    fn df(&self, x: f64) -> Result<Complex64> {
        self.inner.family().check_x(x)?;
        match self.fault {
            Fault::TanhTwoX => Ok(Complex64::new(2.0 * sech(2.0 * x).powi(2), 0.0)),
        }
    }

    fn g(&self, x: f64) -> Result<Complex64> {
        self.inner.g(x)
    }

    fn dg(&self, x: f64) -> Result<Complex64> {
        self.inner.dg(x)
    }

    fn u(&self, x: f64, a: f64) -> Result<Complex64> {
        self.inner.u(x, a)
    }

    fn du(&self, x: f64, a: f64) -> Result<Complex64> {
        self.inner.du(x, a)
    }
}

/// Largest absolute residual over a sample set and where it occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub max: f64,
    pub at: f64,
}

impl Residual {
    fn over<F>(xs: &[f64], mut eval: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if xs.is_empty() {
            return Err(Error::EmptySamples);
        }
        let mut out = Residual { max: 0.0, at: xs[0] };
        for &x in xs {
            let r = eval(x)?;
            // NaN must surface as a failure, not be skipped by the comparison.
            if r.is_nan() || r > out.max {
                out = Residual { max: r, at: x };
                if r.is_nan() {
                    break;
                }
            }
        }
        Ok(out)
    }
}

/// `max|F' + F² - 1|` and `max|G' + FG|` over `xs`.
pub fn rest1_residuals<R: Realization + ?Sized>(af: &R, xs: &[f64]) -> Result<(Residual, Residual)> {
    let rf = Residual::over(xs, |x| {
        let f = af.f(x)?;
        Ok((af.df(x)? + f * f - 1.0).norm())
    })?;
    let rg = Residual::over(xs, |x| Ok((af.dg(x)? + af.f(x)? * af.g(x)?).norm()))?;
    Ok((rf, rg))
}

/// Left-hand side of the constraint tying `U(x, k-1/2)` to `U(x, k+1/2)`.
pub fn rest2_lhs<R: Realization + ?Sized>(af: &R, k: f64, x: f64) -> Result<Complex64> {
    let (am, ap) = (k - 0.5, k + 0.5);
    let f = af.f(x)?;
    let g = af.g(x)?;
    let um = af.u(x, am)?;
    let up = af.u(x, ap)?;
    let lower = um * um - af.du(x, am)? + um * (f * am - g) * 2.0;
    let upper = up * up + af.du(x, ap)? + up * (f * ap - g) * 2.0;
    Ok(lower - upper)
}

pub fn rest2_residual<R: Realization + ?Sized>(af: &R, k: f64, xs: &[f64]) -> Result<Residual> {
    Residual::over(xs, |x| Ok(rest2_lhs(af, k, x)?.norm()))
}

/// `V_k(x)` assembled from `F`, `G`, `U` through the Casimir realization.
pub fn casimir_potential(p: &PotentialParams, x: f64) -> Result<Complex64> {
    let af = make_algebra_functions(p)?;
    casimir_potential_with(&af, p.k, x)
}

pub fn casimir_potential_with<R: Realization + ?Sized>(af: &R, k: f64, x: f64) -> Result<Complex64> {
    let a = k - 0.5;
    let f = af.f(x)?;
    let g = af.g(x)?;
    let u = af.u(x, a)?;
    let conventional = (f * f - 1.0) * (k * k - 0.25) + af.dg(x)? * (2.0 * k) + g * g + a * a;
    let extension = u * u + (f * a - g) * u * 2.0 - af.du(x, a)?;
    Ok(conventional + extension)
}

/// Labels of one rung of the discrete ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub n: u32,
    /// Representation label, `j = n - k` so that `k = -j + n`.
    pub j: f64,
    pub k: f64,
    pub energy: f64,
}

/// `E_n = (k - 1/2)² - (n - (k - 1/2))²` for `n < k - 1/2`.
pub fn energy_closed_form(k: f64, n: u32) -> Result<f64> {
    let n_max = n_max_for(k);
    match n_max {
        Some(top) if n <= top => {
            let a = k - 0.5;
            let d = n as f64 - a;
            Ok(a * a - d * d)
        }
        _ => Err(Error::OutOfLadder { n, n_max }),
    }
}

/// Energy from the Casimir eigenvalue: `(k - 1/2)² - (j + 1/2)²`.
pub fn energy_from_casimir_label(k: f64, j: f64) -> f64 {
    let a = k - 0.5;
    a * a - (j + 0.5) * (j + 0.5)
}

pub fn bound_state_labels(p: &PotentialParams) -> Vec<BoundState> {
    let Some(top) = p.n_max() else {
        return Vec::new();
    };
    (0..=top)
        .map(|n| BoundState {
            n,
            j: n as f64 - p.k,
            k: p.k,
            energy: energy_closed_form(p.k, n).expect("n within ladder"),
        })
        .collect()
}

/// Default residual sample points: log-spaced on [1e-2, 25] for GPT, linear
/// on [-15, 15] for Scarf-II.
pub fn default_samples(family: Family, count: usize) -> Vec<f64> {
    match family {
        Family::Gpt => log_spaced(1e-2, 25.0, count),
        Family::ScarfII => lin_spaced(-15.0, 15.0, count),
    }
}

pub fn lin_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    lin_spaced(lo.ln(), hi.ln(), count).into_iter().map(f64::exp).collect()
}
