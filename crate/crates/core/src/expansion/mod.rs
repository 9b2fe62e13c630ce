//! Ramanujan-expansion machinery: the zeta function of F_q[T], expansion
//! coefficients by three routes (truncated general sum, truncated Euler
//! product, closed form), truncated evaluation of the expansions, and
//! identity verification for the σ/τ/β/φ families.
//!
//! All sums over monic polynomials are truncated by a degree bound; the
//! enumeration cost q^{kB} is capped by an explicit tuple budget
//! (default [`DEFAULT_BUDGET`]) and exceeding it is a resource error,
//! never an OOM.

mod coeffs;
mod series;

pub use coeffs::{coeff_euler, coeff_general, coeff_special, CoeffTable, Provenance};
pub use series::{
    default_tolerance, expand_truncated, expand_truncated_sequential, verify_identity,
    wintner_diagnostic, CoeffSource, IdentityReport, WintnerDiagnostic,
};

use serde::{Deserialize, Serialize};

use crate::arith::{self, ArithFnK, FnValue};
use crate::error::{Error, Result};
use crate::poly::MonicPoly;

/// Degree bound for truncated sums over monic polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationBound {
    pub degree: u32,
}

impl TruncationBound {
    pub fn new(degree: u32) -> TruncationBound {
        TruncationBound { degree }
    }
}

/// Default cap on the number of enumerated tuples.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

pub(crate) fn check_budget(count: u128, budget: u64, what: &str) -> Result<()> {
    if count > budget as u128 {
        Err(Error::resource(format!(
            "{what} would enumerate {count} tuples, over the budget of {budget}"
        )))
    } else {
        Ok(())
    }
}

/// base^x, taking the exact integer-power route whenever possible so that
/// dyadic fixtures stay bit-exact.
pub(crate) fn pow_f(base: f64, x: f64) -> f64 {
    if x.fract() == 0.0 && x.abs() <= i32::MAX as f64 {
        base.powi(x as i32)
    } else {
        base.powf(x)
    }
}

/// ζ_A(s) = Σ_{monic f} |f|^{-s} = 1/(1 − q^{1−s}) for s > 1, evaluated
/// as a/(a−1) with a = q^{s−1} so integer s stays exactly rounded.
pub fn zeta_closed(q: u64, s: f64) -> Result<f64> {
    zeta_domain(q, s)?;
    let a = pow_f(q as f64, s - 1.0);
    Ok(a / (a - 1.0))
}

/// The partial sum of ζ_A(s) over monic polynomials of degree ≤ b: the
/// degree-d stratum contributes q^{d(1−s)}. Lies within q^{b(1−s)+1} of
/// the closed form.
pub fn zeta_partial(q: u64, s: f64, b: u32) -> Result<f64> {
    zeta_domain(q, s)?;
    let r = pow_f(q as f64, 1.0 - s);
    let mut term = 1.0;
    let mut acc = 0.0;
    for _ in 0..=b {
        acc += term;
        term *= r;
    }
    Ok(acc)
}

fn zeta_domain(q: u64, s: f64) -> Result<()> {
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    if s <= 1.0 {
        return Err(Error::domain(format!(
            "zeta of F_q[T] diverges for s <= 1 (got s = {s})"
        )));
    }
    Ok(())
}

/// The four identity families with closed-form expansion coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sigma,
    Tau,
    Beta,
    Phi,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Sigma => "sigma",
            Family::Tau => "tau",
            Family::Beta => "beta",
            Family::Phi => "phi",
        }
    }

    /// τ is σ_0; every other family keeps the requested exponent.
    pub fn effective_s(&self, s: f64) -> f64 {
        match self {
            Family::Tau => 0.0,
            _ => s,
        }
    }

    /// The normalized one-variable function g = family_s(·)/|·|^s whose
    /// gcd-composition the expansions reproduce.
    pub fn g_fn(&self, s: f64) -> ArithFnK {
        let family = *self;
        let s = self.effective_s(s);
        ArithFnK::single(true, move |g: &MonicPoly| {
            let num = match family {
                Family::Sigma | Family::Tau => arith::sigma_s(g, s),
                Family::Beta => arith::beta_s(g, s),
                Family::Phi => arith::phi_s(g, s),
            };
            FnValue::Real(num.to_f64() / pow_f(g.norm_f64(), s))
        })
    }

    /// The left-hand side value family_s(gcd)/|gcd|^s.
    pub fn lhs(&self, s: f64, gcd: &MonicPoly) -> f64 {
        let s = self.effective_s(s);
        let num = match self {
            Family::Sigma | Family::Tau => arith::sigma_s(gcd, s),
            Family::Beta => arith::beta_s(gcd, s),
            Family::Phi => arith::phi_s(gcd, s),
        };
        num.to_f64() / pow_f(gcd.norm_f64(), s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "sigma" => Ok(Family::Sigma),
            "tau" => Ok(Family::Tau),
            "beta" => Ok(Family::Beta),
            "phi" => Ok(Family::Phi),
            other => Err(Error::domain(format!(
                "unknown identity family '{other}' (expected sigma, tau, beta or phi)"
            ))),
        }
    }
}

/// Exponent data of a monic polynomial against a shared prime registry:
/// (degree of P, multiplicity) pairs.
pub(crate) type PrimeExponents = Vec<(u32, u32)>;

/// Closed-form expansion coefficient for g = family_s(·)/|·|^s as a
/// function of Q = [H_1,...,H_k] alone:
///
/// - sigma (and tau = sigma at s = 0): ζ_A(k+s)/|Q|^{k+s}, or unitary
///   ζ_A(k+s)·φ_{k+s}(Q)/|Q|^{2(k+s)};
/// - beta: (ζ_A(2(k+s))/ζ_A(k+s))·λ(Q)/|Q|^{k+s}, or unitary the same
///   ratio times λ(Q)ψ_{k+s}(Q)/|Q|^{2(k+s)};
/// - phi: (1/ζ_A(k+s))·μ(Q)/φ_{k+s}(Q), identical in both modes.
pub fn coeff_closed_form(
    family: Family,
    s: f64,
    k: usize,
    q_poly: &MonicPoly,
    unitary: bool,
) -> Result<f64> {
    let q = q_poly.field().q();
    let fact = crate::poly::factor(q_poly.as_poly())?;
    let exps: PrimeExponents = fact
        .factors()
        .iter()
        .map(|(p, e)| (p.deg() as u32, *e))
        .collect();
    coeff_closed_form_from_exponents(family, s, k, q, &exps, unitary)
}

/// Same computation from the exponent profile of Q; the tuple-walking
/// expansion uses this shape directly so it never rebuilds Q.
pub(crate) fn coeff_closed_form_from_exponents(
    family: Family,
    s: f64,
    k: usize,
    q: u64,
    exps: &PrimeExponents,
    unitary: bool,
) -> Result<f64> {
    let s = family.effective_s(s);
    let x = k as f64 + s;
    if x <= 1.0 {
        let hint = if family == Family::Tau { " (k≥2)" } else { "" };
        return Err(Error::domain(format!(
            "the {} expansion needs k + s > 1, got k = {k}, s = {s}{hint}",
            family.name()
        )));
    }
    let qf = q as f64;
    let deg_q: u32 = exps.iter().map(|(d, e)| d * e).sum();
    let norm_q_x = pow_f(qf, deg_q as f64 * x);
    let zeta_x = zeta_closed(q, x)?;
    Ok(match family {
        Family::Sigma | Family::Tau => {
            if unitary {
                // φ_x(Q) = ∏ |P|^{ex}(1 − |P|^{-x})
                let mut phi = norm_q_x;
                for (d, _) in exps {
                    phi *= 1.0 - pow_f(qf, -(*d as f64) * x);
                }
                zeta_x * phi / (norm_q_x * norm_q_x)
            } else {
                zeta_x / norm_q_x
            }
        }
        Family::Beta => {
            let big_omega: u32 = exps.iter().map(|(_, e)| e).sum();
            let lambda = if big_omega.is_multiple_of(2) { 1.0 } else { -1.0 };
            let ratio = zeta_closed(q, 2.0 * x)? / zeta_x;
            if unitary {
                let mut psi = norm_q_x;
                for (d, _) in exps {
                    psi *= 1.0 + pow_f(qf, -(*d as f64) * x);
                }
                ratio * lambda * psi / (norm_q_x * norm_q_x)
            } else {
                ratio * lambda / norm_q_x
            }
        }
        Family::Phi => {
            let squarefree = exps.iter().all(|(_, e)| *e == 1);
            if !squarefree {
                return Ok(0.0); // μ(Q) = 0
            }
            let mu = if exps.len().is_multiple_of(2) { 1.0 } else { -1.0 };
            let mut phi = norm_q_x;
            for (d, _) in exps {
                phi *= 1.0 - pow_f(qf, -(*d as f64) * x);
            }
            mu / (zeta_x * phi)
        }
    })
}
