//! Polynomial Ramanujan sums η(G,H) and their unitary variant η*(G,H).
//!
//! Each sum has two independent routes:
//!
//! - the exact divisor sum η(G,H) = Σ_{D|(G,H)} |D| μ(H/D), respectively
//!   η*(G,H) = Σ_{D||(G,H)_*} |D| μ*(H/D), carried in big integers — this
//!   is the source of truth;
//! - the defining character sum over residues D mod H with (D,H) = 1
//!   (respectively (D,H)_* = 1) of E(G,H)(D) = λ(t(G·D)), carried in
//!   complex doubles and kept for validation.
//!
//! `EtaValue` records the exact value, optionally the character-sum
//! approximation and their disagreement; whenever both routes run the
//! disagreement must stay below 1e-6·max(1,|H|) or the constructor
//! panics, since that can only be an implementation bug.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::{mobius, mobius_star};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::{
    factor, gcd, is_irreducible, residues_mod, two_pow_omega, unitary_gcd_star, MonicPoly, Poly,
};

/// Which evaluation route(s) to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaMethod {
    Divisor,
    Character,
    Both,
}

/// A Ramanujan-sum value: the exact integer, and the character-sum
/// approximation when it was requested.
#[derive(Clone, Debug)]
pub struct EtaValue {
    pub exact: BigInt,
    pub approx: Option<Complex64>,
    pub agreement: Option<f64>,
}

impl EtaValue {
    fn new(exact: BigInt, approx: Option<Complex64>, h_norm: f64) -> EtaValue {
        let agreement = approx.map(|a| {
            let e = exact.to_f64().unwrap_or(f64::NAN);
            (a - Complex64::new(e, 0.0)).norm()
        });
        if let Some(diff) = agreement {
            assert!(
                diff < 1e-6 * h_norm.max(1.0),
                "character and divisor routes disagree by {diff}"
            );
        }
        EtaValue {
            exact,
            approx,
            agreement,
        }
    }
}

/// t(A): the coefficient of T^{m-1} of A mod H, where m = deg H ≥ 1.
/// Additive in A, and zero whenever H | A.
pub fn t_coeff(a: &Poly, h: &MonicPoly) -> Result<FieldElement> {
    let m = h.deg();
    if m == 0 {
        return Err(Error::domain(
            "t is undefined for a constant modulus; η(G, 1) is handled separately",
        ));
    }
    let reduced = a.rem(h.as_poly())?;
    Ok(reduced.coeff(m - 1))
}

/// E(G,H)(D) = λ(t(G·D)), the additive character mod H evaluated at D.
pub fn eval_char(g: &Poly, h: &MonicPoly, d: &Poly) -> Result<Complex64> {
    let prod = g * d;
    Ok(t_coeff(&prod, h)?.additive_char())
}

/// η(G,H) by the requested route(s). G is arbitrary (reduced mod H
/// first); η(G, 1) = 1; η(G,H) = φ(H) when H | G.
pub fn eta(g: &Poly, h: &MonicPoly, method: EtaMethod) -> EtaValue {
    eta_impl(g, h, method, false)
}

/// η*(G,H) by the requested route(s); the character sum runs over
/// residues with (D,H)_* = 1, the divisor sum over D || (G,H)_*.
pub fn eta_star(g: &Poly, h: &MonicPoly, method: EtaMethod) -> EtaValue {
    eta_impl(g, h, method, true)
}

fn eta_impl(g: &Poly, h: &MonicPoly, method: EtaMethod, unitary: bool) -> EtaValue {
    if h.deg() == 0 {
        // single residue class, trivial character
        let approx = match method {
            EtaMethod::Divisor => None,
            _ => Some(Complex64::new(1.0, 0.0)),
        };
        return EtaValue::new(BigInt::one(), approx, 1.0);
    }
    let g_red = g.rem(h.as_poly()).expect("nonzero modulus");
    let exact = if unitary {
        eta_star_divisor_sum(&g_red, h)
    } else {
        eta_divisor_sum(&g_red, h)
    };
    let approx = match method {
        EtaMethod::Divisor => None,
        _ => Some(eta_character_sum(&g_red, h, unitary)),
    };
    EtaValue::new(exact, approx, h.norm_f64())
}

/// Σ_{D|(G,H)} |D| μ(H/D) with (G,H) the monic gcd; (0,H) = H.
fn eta_divisor_sum(g_red: &Poly, h: &MonicPoly) -> BigInt {
    let core = if g_red.is_zero() {
        h.clone()
    } else {
        gcd(g_red, h.as_poly()).expect("nonzero inputs")
    };
    let mut acc = BigInt::zero();
    for d in core.divisors() {
        let complement = h
            .as_poly()
            .div_exact(d.as_poly())
            .expect("divisor of gcd divides H");
        let mu = mobius(&MonicPoly::try_new(complement).expect("quotient of monics"));
        if mu != 0 {
            acc += BigInt::from(mu) * d.norm_int();
        }
    }
    acc
}

/// Σ_{D||(G,H)_*} |D| μ*(H/D).
fn eta_star_divisor_sum(g_red: &Poly, h: &MonicPoly) -> BigInt {
    let core = unitary_gcd_star(g_red, h);
    let mut acc = BigInt::zero();
    for d in core.unitary_divisors() {
        let complement = h
            .as_poly()
            .div_exact(d.as_poly())
            .expect("unitary divisor of (G,H)* divides H");
        let mu = mobius_star(&MonicPoly::try_new(complement).expect("quotient of monics"));
        acc += BigInt::from(mu) * d.norm_int();
    }
    acc
}

/// The defining character sum over restricted residues mod H.
fn eta_character_sum(g_red: &Poly, h: &MonicPoly, unitary: bool) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for d in residues_mod(h) {
        let coprime = if unitary {
            unitary_gcd_star(&d, h).is_one()
        } else {
            !d.is_zero() && gcd(&d, h.as_poly()).expect("nonzero H").is_one()
        };
        if !coprime {
            continue;
        }
        acc += eval_char(g_red, h, &d).expect("deg H >= 1");
    }
    acc
}

/// Closed-form η(G, P^e) (or η*(G, P^e)) for an irreducible P, from the
/// multiplicity a = ν_P(G):
///
/// - non-unitary: |P|^e − |P|^{e−1} for 1 ≤ e ≤ a, −|P|^a for e = a+1,
///   0 beyond (a = 0 gives μ(P^e));
/// - unitary: |P|^e − 1 when P^e | G, else −1.
pub fn eta_prime_power(g: &MonicPoly, p: &MonicPoly, e: u32, unitary: bool) -> Result<BigInt> {
    if !is_irreducible(p) {
        return Err(Error::domain(format!("{p} is not irreducible")));
    }
    if e < 1 {
        return Err(Error::domain("exponent must be at least 1"));
    }
    let a = factor(g.as_poly())?.multiplicity(p);
    let pn = p.norm_int();
    if unitary {
        return Ok(if a >= e {
            pn.pow(e) - BigInt::one()
        } else {
            -BigInt::one()
        });
    }
    Ok(if e <= a {
        pn.clone().pow(e) - pn.pow(e - 1)
    } else if e == a + 1 {
        -pn.pow(a)
    } else {
        BigInt::zero()
    })
}

/// Σ_{D|H} η(G,D) (or Σ_{D||H} η*(G,D)), which must equal |H| when H | G
/// and 0 otherwise; a violation is reported as an invariant failure.
pub fn divisor_sum_identity(g: &Poly, h: &MonicPoly, unitary: bool) -> Result<BigInt> {
    let divisors = if unitary {
        h.unitary_divisors()
    } else {
        h.divisors()
    };
    let mut total = BigInt::zero();
    for d in divisors {
        let value = if unitary {
            eta_star(g, &d, EtaMethod::Divisor)
        } else {
            eta(g, &d, EtaMethod::Divisor)
        };
        total += value.exact;
    }
    let expected = if h.as_poly().divides(g) {
        h.norm_int()
    } else {
        BigInt::zero()
    };
    if total != expected {
        return Err(Error::invariant(format!(
            "divisor-sum identity failed for G={g}, H={h} (unitary={unitary}): got {total}, expected {expected}"
        )));
    }
    Ok(total)
}

/// The absolute-value sums of η/η* over the (unitary) divisors of H,
/// the closed form of the unitary one and the shared upper bound.
#[derive(Clone, Debug)]
pub struct AbsSumBounds {
    /// Σ_{D||H} |η*(G,D)|.
    pub unitary_sum: BigInt,
    /// 2^{ω(H/(G,H)_*)} · |(G,H)_*|, which the unitary sum must equal.
    pub unitary_closed_form: BigInt,
    /// Σ_{D|H} |η(G,D)|.
    pub divisor_sum: BigInt,
    /// 2^{ω(H)} · |G|, an upper bound for both sums.
    pub bound: BigInt,
}

/// Compute the three absolute sums and verify the closed form and both
/// inequalities; violations are invariant failures.
pub fn abs_sum_bounds(g: &MonicPoly, h: &MonicPoly) -> Result<AbsSumBounds> {
    let mut unitary_sum = BigInt::zero();
    for d in h.unitary_divisors() {
        unitary_sum += eta_star(g.as_poly(), &d, EtaMethod::Divisor).exact.abs();
    }
    let mut divisor_sum = BigInt::zero();
    for d in h.divisors() {
        divisor_sum += eta(g.as_poly(), &d, EtaMethod::Divisor).exact.abs();
    }
    let star = unitary_gcd_star(g.as_poly(), h);
    let h_over_star = MonicPoly::try_new(h.as_poly().div_exact(star.as_poly())?)?;
    let unitary_closed_form = two_pow_omega(&h_over_star) * star.norm_int();
    let bound = two_pow_omega(h) * g.norm_int();

    if unitary_sum != unitary_closed_form {
        return Err(Error::invariant(format!(
            "unitary absolute sum {unitary_sum} differs from its closed form {unitary_closed_form} at G={g}, H={h}"
        )));
    }
    if unitary_sum > bound || divisor_sum > bound {
        return Err(Error::invariant(format!(
            "absolute sums exceed 2^ω(H)|G| = {bound} at G={g}, H={h}"
        )));
    }
    Ok(AbsSumBounds {
        unitary_sum,
        unitary_closed_form,
        divisor_sum,
        bound,
    })
}
