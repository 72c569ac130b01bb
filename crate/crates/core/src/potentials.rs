//! Closed-form conventional and rational potential pieces.
//!
//! All values are complex, including GPT where reality is checked rather
//! than enforced by the type. Hyperbolic reciprocals go through `sech` /
//! `csch` built on `exp(-|x|)`, so tails underflow to zero instead of
//! producing `inf/inf`.

use num_complex::Complex64;

use crate::algebra::{self, csch, sech, Family, PotentialParams};
use crate::error::{Error, Result};
use crate::specialfun::{jacobi_coefficients, polynomial_roots, JacobiParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `V_GPT` or `V_Scarf` at `a = k - 1/2`.
pub fn potential_conventional(p: &PotentialParams, x: f64) -> Result<Complex64> {
    p.family.check_x(x)?;
    let (b, a) = (p.b, p.a());
    Ok(match p.family {
        Family::Gpt => {
            let cs = csch(x);
            let coth = 1.0 / x.tanh();
            Complex64::new(
                a * a + (b * b + a * (a + 1.0)) * cs * cs - b * (2.0 * a + 1.0) * cs * coth,
                0.0,
            )
        }
        Family::ScarfII => {
            let s = sech(x);
            let t = x.tanh();
            Complex64::new(a * a - (b * b + a * (a + 1.0)) * s * s, 0.0) + I * (b * (2.0 * a + 1.0) * s * t)
        }
    })
}

/// The rational correction. Closed forms exist for `m = 1`; for `m >= 2` it is
/// the Casimir-assembled potential minus the conventional part.
pub fn potential_rational(p: &PotentialParams, x: f64) -> Result<Complex64> {
    p.family.check_x(x)?;
    let (b, k) = (p.b, p.k);
    match p.m {
        0 => Ok(Complex64::new(0.0, 0.0)),
        1 => match p.family {
            Family::Gpt => {
                // 2B cosh x - 2k = (2B - 2k sech x) / sech x
                let s = sech(x);
                let d = 2.0 * b - 2.0 * k * s;
                if d <= 0.0 {
                    return Err(Error::Singularity {
                        what: "GPT rational term",
                        x,
                    });
                }
                Ok(Complex64::new(
                    4.0 * k * s / d - 2.0 * (4.0 * b * b - 4.0 * k * k) * s * s / (d * d),
                    0.0,
                ))
            }
            Family::ScarfII => {
                // 1/(-2iB sinh x + 2k), in csch form away from the origin
                let inv = if x.abs() < 1.0 {
                    let d = Complex64::new(2.0 * k, -2.0 * b * x.sinh());
                    if d.norm() == 0.0 {
                        return Err(Error::Singularity {
                            what: "Scarf-II rational term",
                            x,
                        });
                    }
                    d.inv()
                } else {
                    let cs = csch(x);
                    cs / Complex64::new(2.0 * k * cs, -2.0 * b)
                };
                Ok(-inv * (4.0 * k) + inv * inv * (2.0 * (4.0 * k * k - 4.0 * b * b)))
            }
        },
        _ => Ok(algebra::casimir_potential(p, x)? - potential_conventional(p, x)?),
    }
}

pub fn potential_total(p: &PotentialParams, x: f64) -> Result<Complex64> {
    Ok(potential_conventional(p, x)? + potential_rational(p, x)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialEvaluation {
    pub x: f64,
    pub v_conventional: Complex64,
    pub v_rational: Complex64,
    pub v_total: Complex64,
    pub v_casimir: Complex64,
    pub params: PotentialParams,
}

impl PotentialEvaluation {
    pub fn family(&self) -> Family {
        self.params.family
    }

    /// `|v_total - v_casimir|`, relative where `|V| > 1`.
    pub fn gap(&self) -> f64 {
        (self.v_total - self.v_casimir).norm() / self.v_casimir.norm().max(1.0)
    }
}

pub fn evaluate(p: &PotentialParams, x: f64) -> Result<PotentialEvaluation> {
    let v_conventional = potential_conventional(p, x)?;
    let v_rational = potential_rational(p, x)?;
    Ok(PotentialEvaluation {
        x,
        v_conventional,
        v_rational,
        v_total: v_conventional + v_rational,
        v_casimir: algebra::casimir_potential(p, x)?,
        params: *p,
    })
}

/// Outcome of [`validate_params`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub params: PotentialParams,
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
    pub n_max: Option<u32>,
    pub threshold: f64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<PotentialParams> {
        if self.is_valid() {
            Ok(self.params)
        } else {
            Err(Error::InvalidParams(self.violations.join("; ")))
        }
    }
}

pub fn validate_params(p: &PotentialParams) -> ValidationReport {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    if let Some(msg) = p.constraint_violation() {
        violations.push(msg);
    } else if p.m >= 1 {
        if let Some(msg) = extension_singularity(p, p.a()) {
            violations.push(format!("extension denominator vanishes on the domain: {msg}"));
        }
        if let Some(msg) = extension_singularity(p, p.a() + 1.0) {
            warnings.push(format!(
                "U(x, k+1/2) is singular on the domain ({msg}); constraint and shape-invariance checks will not hold there"
            ));
        }
    }
    if p.family == Family::ScarfII {
        warnings.push(
            "Scarf-II ladder uses n < k - 1/2; additional real levels of the second quasi-parity series are reported separately"
                .into(),
        );
    }
    ValidationReport {
        params: *p,
        violations,
        warnings,
        n_max: p.n_max(),
        threshold: p.threshold(),
    }
}

/// Looks for a zero of either Jacobi denominator of `U(x, a)` on the real
/// x-axis, i.e. a real root `z >= 1` (GPT, `z = cosh x`) or a purely
/// imaginary root (Scarf-II, `z = i sinh x`).
pub fn extension_singularity(p: &PotentialParams, a: f64) -> Option<String> {
    if p.m == 0 {
        return None;
    }
    let b = p.b;
    let dens = [(-b + a - 0.5, -b - a - 1.5), (-b + a - 1.5, -b - a - 0.5)];
    for (alpha, beta) in dens {
        let jp = match JacobiParams::new(p.m, alpha, beta) {
            Ok(jp) => jp,
            Err(e) => return Some(e.to_string()),
        };
        let coeffs = match jacobi_coefficients(jp) {
            Ok(c) => c,
            Err(e) => return Some(e.to_string()),
        };
        for root in polynomial_roots(&coeffs) {
            let tol = 1e-8 * (1.0 + root.norm());
            let hit = match p.family {
                Family::Gpt => root.im.abs() <= tol && root.re >= 1.0 - tol,
                Family::ScarfII => root.re.abs() <= tol,
            };
            if hit {
                let (z, x) = match p.family {
                    Family::Gpt => (format!("{:.6}", root.re), root.re.max(1.0).acosh()),
                    Family::ScarfII => (format!("{:.6}i", root.im), root.im.asinh()),
                };
                return Some(format!(
                    "P_{}^({alpha}, {beta}) has a root at z = {z} (x = {x:.6})",
                    p.m
                ));
            }
        }
    }
    None
}
