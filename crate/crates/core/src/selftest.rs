//! The built-in invariant suite behind `etaq selftest`.
//!
//! `Quick` covers degree ≤ 3 over F_2 with the field-level character
//! checks on F_2 and F_4; `Full` raises the bounds to degree ≤ 4 over
//! F_2 and F_3, runs the character checks on every field with q ≤ 9 and
//! adds the closed-form identity fixtures. Each check reports a
//! one-line detail (counts, worst deviations) instead of panicking, so
//! the CLI can list every failure.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::arith::{
    self, dirichlet_convolve, mobius, mobius_star, multivar_mobius_transform, unitary_basics,
    ArithFnK, FnValue,
};
use crate::expansion::{verify_identity, zeta_closed, zeta_partial, Family, TruncationBound};
use crate::field::FieldSpec;
use crate::poly::{
    factor, gcd, lcm, monic_up_to, residues_mod, unitary_gcd_star, MonicPoly, Poly,
};
use crate::ramanujan::{
    abs_sum_bounds, divisor_sum_identity, eta, eta_star, EtaMethod,
};
use crate::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfTestLevel {
    Quick,
    Full,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Run the invariant suite; one result per named check.
pub fn run(level: SelfTestLevel) -> Vec<CheckResult> {
    let full = level == SelfTestLevel::Full;
    let char_fields: Vec<(u64, u32)> = if full {
        vec![(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
    } else {
        vec![(2, 1), (2, 2)]
    };
    let ring_fields: Vec<u64> = if full { vec![2, 3] } else { vec![2] };
    let deg = if full { 4 } else { 3 };

    let mut results = Vec::new();
    let mut add = |name: &str, outcome: Result<String, String>| {
        results.push(match outcome {
            Ok(detail) => CheckResult {
                name: name.to_string(),
                passed: true,
                detail,
            },
            Err(detail) => CheckResult {
                name: name.to_string(),
                passed: false,
                detail,
            },
        });
    };

    add("field_char_additivity", char_additivity(&char_fields));
    add("field_trace_additivity", trace_additivity(&char_fields));
    add("field_char_orthogonality", char_orthogonality(&char_fields));
    add("field_trace_prime_identity", trace_prime_identity(full));
    add("poly_factor_recombination", factor_recombination(&ring_fields, if full { 6 } else { 3 }));
    add("poly_divisor_counts", divisor_counts(&ring_fields, if full { 5 } else { 3 }));
    add("poly_gcd_lcm_norms", gcd_lcm_norms(&ring_fields, deg.min(4)));
    add("poly_unitary_star_exhaustive", unitary_star_exhaustive(deg.min(4)));
    add("arith_mobius_delta", mobius_delta(&ring_fields, if full { 5 } else { 3 }));
    add("arith_inversion_roundtrip", inversion_roundtrip(if full { 3 } else { 2 }));
    add("arith_phi_dual_routes", phi_dual_routes(&ring_fields, if full { 5 } else { 3 }));
    add("arith_multiplicativity", multiplicativity(&ring_fields, deg.min(4)));
    add("arith_tau_phi_star_counts", tau_phi_star_counts(deg.min(4)));
    add("arith_unit_invariance", unit_invariance(if full { 3 } else { 2 }));
    add("arith_diagonal_transform", diagonal_transform(if full { 3 } else { 2 }));
    add("eta_dual_path_agreement", eta_dual_path(&ring_fields, deg.min(3)));
    add("eta_multiplicative_in_h", eta_multiplicative(&ring_fields));
    add("eta_periodicity", eta_periodicity(&ring_fields, deg.min(3)));
    add("eta_divisor_sum_identities", eta_divisor_sums(deg));
    add("eta_abs_sum_closed_form", eta_abs_sums(deg));
    add("eta_zero_argument_totients", eta_zero_totients(&ring_fields, deg.min(3)));
    add("zeta_partial_convergence", zeta_convergence());
    if full {
        add("expansion_corollary_fixtures", corollary_fixtures());
    }
    results
}

fn field(p: u64, n: u32) -> Arc<FieldSpec> {
    FieldSpec::new(p, n).expect("suite fields are valid")
}

fn prime_field(q: u64) -> Arc<FieldSpec> {
    field(q, 1)
}

fn char_additivity(fields: &[(u64, u32)]) -> Result<String, String> {
    let mut pairs = 0u64;
    let mut worst = 0.0f64;
    for &(p, n) in fields {
        let f = field(p, n);
        let elems: Vec<_> = f.elements().collect();
        for a in &elems {
            for b in &elems {
                let diff = ((a + b).additive_char() - a.additive_char() * b.additive_char())
                    .norm();
                worst = worst.max(diff);
                pairs += 1;
                if diff >= 1e-10 {
                    return Err(format!(
                        "λ(a+b) ≠ λ(a)λ(b) over F_{} at a={a}, b={b} (|Δ| = {diff:.3e})",
                        f.q()
                    ));
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, worst deviation {worst:.3e}"))
}

fn trace_additivity(fields: &[(u64, u32)]) -> Result<String, String> {
    let mut pairs = 0u64;
    for &(p, n) in fields {
        let f = field(p, n);
        let elems: Vec<_> = f.elements().collect();
        for a in &elems {
            for b in &elems {
                pairs += 1;
                if (a + b).trace() != (a.trace() + b.trace()) % p {
                    return Err(format!("tr not additive over F_{} at {a}, {b}", f.q()));
                }
            }
        }
    }
    Ok(format!("{pairs} pairs exact"))
}

fn char_orthogonality(fields: &[(u64, u32)]) -> Result<String, String> {
    let mut worst = 0.0f64;
    for &(p, n) in fields {
        let f = field(p, n);
        let total: Complex64 = f.elements().map(|a| a.additive_char()).sum();
        worst = worst.max(total.norm());
        if total.norm() >= 1e-9 {
            return Err(format!(
                "Σ_a λ(a) = {total} over F_{}, expected 0",
                f.q()
            ));
        }
    }
    Ok(format!("{} fields, worst |Σ| = {worst:.3e}", fields.len()))
}

fn trace_prime_identity(full: bool) -> Result<String, String> {
    let ps: &[u64] = if full { &[2, 3, 5, 7, 11, 13] } else { &[2, 3, 5] };
    for &p in ps {
        let f = prime_field(p);
        for a in f.elements() {
            if a.trace() != a.coeffs()[0] {
                return Err(format!("trace is not the identity on F_{p} at {a}"));
            }
        }
    }
    Ok(format!("checked p ∈ {ps:?}"))
}

fn factor_recombination(qs: &[u64], deg: u32) -> Result<String, String> {
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        for g in monic_up_to(&f, deg) {
            if g.deg() == 0 {
                continue;
            }
            for u in 1..q {
                let unit = f.element_from_index(u).expect("unit index");
                let a = g.as_poly().mul_scalar(&unit);
                let fact = factor(&a).map_err(|e| e.to_string())?;
                if fact.recombine() != a {
                    return Err(format!("recombination failed for {a} over F_{q}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} polynomials recombined exactly"))
}

fn divisor_counts(qs: &[u64], deg: u32) -> Result<String, String> {
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        for g in monic_up_to(&f, deg) {
            if g.deg() == 0 {
                continue;
            }
            let fact = factor(g.as_poly()).map_err(|e| e.to_string())?;
            let expected: u64 = fact.factors().iter().map(|(_, e)| *e as u64 + 1).product();
            if g.divisors().len() as u64 != expected {
                return Err(format!("divisor count mismatch at {g} over F_{q}"));
            }
            if g.unitary_divisors().len() as u64 != 1 << fact.omega() {
                return Err(format!("unitary divisor count mismatch at {g} over F_{q}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} polynomials checked"))
}

fn gcd_lcm_norms(qs: &[u64], deg: u32) -> Result<String, String> {
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        let polys: Vec<MonicPoly> = monic_up_to(&f, deg).filter(|p| p.deg() >= 1).collect();
        for a in &polys {
            for b in &polys {
                let g = gcd(a.as_poly(), b.as_poly()).map_err(|e| e.to_string())?;
                let l = lcm(&[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
                if !g.as_poly().divides(a.as_poly()) || !g.as_poly().divides(b.as_poly()) {
                    return Err(format!("gcd({a},{b}) does not divide both"));
                }
                if g.norm_int() * l.norm_int() != a.norm_int() * b.norm_int() {
                    return Err(format!("norm identity failed at ({a},{b}) over F_{q}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs"))
}

fn unitary_star_exhaustive(deg: u32) -> Result<String, String> {
    let f = prime_field(2);
    let all: Vec<MonicPoly> = monic_up_to(&f, deg).collect();
    let mut count = 0u64;
    for g in &all {
        for h in &all {
            let star = unitary_gcd_star(h.as_poly(), g);
            let brute = g
                .unitary_divisors()
                .into_iter()
                .filter(|d| d.as_poly().divides(h.as_poly()))
                .max_by_key(|d| d.deg())
                .expect("1 always qualifies");
            if star != brute {
                return Err(format!("(H,G)* mismatch at H={h}, G={g}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} pairs match exhaustive search"))
}

fn mobius_delta(qs: &[u64], deg: u32) -> Result<String, String> {
    let one = ArithFnK::constant_one(1);
    let mob = ArithFnK::single(true, |g: &MonicPoly| FnValue::from(mobius(g)));
    let mob_star = ArithFnK::single(true, |g: &MonicPoly| FnValue::from(mobius_star(g)));
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        for g in monic_up_to(&f, deg) {
            let expected = FnValue::from(if g.is_one() { 1 } else { 0 });
            let plain = dirichlet_convolve(&mob, &one, &g, false).map_err(|e| e.to_string())?;
            let star = dirichlet_convolve(&mob_star, &one, &g, true).map_err(|e| e.to_string())?;
            if plain != expected || star != expected {
                return Err(format!("μ∗1 ≠ δ at {g} over F_{q}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} arguments, both convolutions"))
}

fn inversion_roundtrip(deg: u32) -> Result<String, String> {
    let f = prime_field(2);
    let table = ArithFnK::new(2, false, |args: &[MonicPoly]| {
        let h: i64 = args
            .iter()
            .flat_map(|g| g.coeffs())
            .map(|c| c.index() as i64)
            .fold(11, |acc, v| acc.wrapping_mul(37).wrapping_add(v) % 211);
        FnValue::from(h - 100)
    });
    let polys: Vec<MonicPoly> = monic_up_to(&f, deg).collect();
    let mut count = 0u64;
    for a in &polys {
        for b in &polys {
            let mut back = FnValue::from(0);
            for da in a.divisors() {
                for db in b.divisors() {
                    let v = multivar_mobius_transform(&table, &[da.clone(), db.clone()])
                        .map_err(|e| e.to_string())?;
                    back = back + v;
                }
            }
            if back != table.eval(&[a.clone(), b.clone()]) {
                return Err(format!("(μ_2∗f)∗1_2 ≠ f at ({a},{b})"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} tuples recovered"))
}

fn phi_dual_routes(qs: &[u64], deg: u32) -> Result<String, String> {
    // phi_s asserts internally that the divisor-sum and product routes
    // agree; surviving the sweep is the check.
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        for g in monic_up_to(&f, deg) {
            for s in [0.0, 1.0, 2.0, 3.0] {
                let _ = arith::phi_s(&g, s);
                count += 1;
            }
        }
    }
    Ok(format!("{count} evaluations, both routes equal"))
}

fn multiplicativity(qs: &[u64], deg: u32) -> Result<String, String> {
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        let polys: Vec<MonicPoly> = monic_up_to(&f, deg).filter(|p| p.deg() >= 1).collect();
        for a in &polys {
            for b in &polys {
                if !gcd(a.as_poly(), b.as_poly())
                    .map_err(|e| e.to_string())?
                    .is_one()
                {
                    continue;
                }
                let ab = a.mul(b);
                for s in [0.0, 1.0, 2.0] {
                    if arith::sigma_s(&ab, s) != arith::sigma_s(a, s) * arith::sigma_s(b, s)
                        || arith::phi_s(&ab, s) != arith::phi_s(a, s) * arith::phi_s(b, s)
                        || arith::psi_s(&ab, s) != arith::psi_s(a, s) * arith::psi_s(b, s)
                        || arith::beta_s(&ab, s) != arith::beta_s(a, s) * arith::beta_s(b, s)
                    {
                        return Err(format!("an s={s} function is not multiplicative at ({a},{b})"));
                    }
                }
                let s = 1.5;
                let lhs = arith::sigma_s(&ab, s).to_f64();
                let rhs = arith::sigma_s(a, s).to_f64() * arith::sigma_s(b, s).to_f64();
                if (lhs - rhs).abs() > 1e-9 * lhs.abs().max(1.0) {
                    return Err(format!("σ_1.5 not multiplicative at ({a},{b})"));
                }
                let (ua, ub, uab) = (unitary_basics(a), unitary_basics(b), unitary_basics(&ab));
                if uab.mu_star != ua.mu_star * ub.mu_star
                    || uab.tau_star != ua.tau_star.clone() * &ub.tau_star
                    || uab.sigma_star != ua.sigma_star.clone() * &ub.sigma_star
                    || uab.phi_star != ua.phi_star.clone() * &ub.phi_star
                {
                    return Err(format!("a unitary function is not multiplicative at ({a},{b})"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} coprime pairs"))
}

fn tau_phi_star_counts(deg: u32) -> Result<String, String> {
    let f = prime_field(2);
    let mut count = 0u64;
    for g in monic_up_to(&f, deg) {
        if g.deg() == 0 {
            continue;
        }
        if arith::tau(&g) != arith::sigma_s(&g, 0.0) {
            return Err(format!("τ ≠ σ_0 at {g}"));
        }
        let fact = factor(g.as_poly()).map_err(|e| e.to_string())?;
        if fact.omega() == 1 {
            // prime power: φ*(P^e) = |P|^e − 1 against residue counting
            let direct = residues_mod(&g)
                .filter(|r| unitary_gcd_star(r, &g).is_one())
                .count();
            if unitary_basics(&g).phi_star != BigInt::from(direct) {
                return Err(format!("φ* ≠ residue count at {g}"));
            }
        }
        count += 1;
    }
    Ok(format!("{count} arguments"))
}

fn unit_invariance(deg: u32) -> Result<String, String> {
    let f = prime_field(3);
    let mut count = 0u64;
    for g in monic_up_to(&f, deg) {
        if g.deg() == 0 {
            continue;
        }
        for u in 1..3 {
            let unit = f.element_from_index(u).expect("unit");
            let scaled = g.as_poly().mul_scalar(&unit);
            let (_, renorm) = scaled.monic_normalize().map_err(|e| e.to_string())?;
            if renorm != g
                || arith::sigma_s(&renorm, 1.0) != arith::sigma_s(&g, 1.0)
                || mobius(&renorm) != mobius(&g)
            {
                return Err(format!("unit invariance failed at {g} scaled by {u}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} unit rescalings"))
}

fn diagonal_transform(deg: u32) -> Result<String, String> {
    // the 2-variable Möbius transform of g∘gcd concentrates on the
    // diagonal, where it equals μ∗g
    let f = prime_field(2);
    let mut count = 0u64;
    for g_fn in [
        ArithFnK::single(true, arith::tau),
        ArithFnK::single(true, |g: &MonicPoly| arith::sigma_s(g, 1.0)),
    ] {
        let composed = ArithFnK::compose_gcd(&g_fn, 2);
        let mob = ArithFnK::single(true, |g: &MonicPoly| FnValue::from(mobius(g)));
        let polys: Vec<MonicPoly> = monic_up_to(&f, deg).collect();
        for a in &polys {
            for b in &polys {
                let got = multivar_mobius_transform(&composed, &[a.clone(), b.clone()])
                    .map_err(|e| e.to_string())?;
                let expected = if a == b {
                    dirichlet_convolve(&mob, &g_fn, a, false).map_err(|e| e.to_string())?
                } else {
                    FnValue::from(0)
                };
                if got != expected {
                    return Err(format!("diagonal transform failed at ({a},{b})"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} tuples, exact"))
}

fn eta_dual_path(qs: &[u64], deg: u32) -> Result<String, String> {
    let mut pairs = 0u64;
    let mut worst = 0.0f64;
    for &q in qs {
        let f = prime_field(q);
        let hs: Vec<MonicPoly> = monic_up_to(&f, deg).collect();
        for h in &hs {
            let tol = 1e-6 * h.norm_f64().max(1.0);
            for g in monic_up_to(&f, deg) {
                let v = eta(g.as_poly(), h, EtaMethod::Both);
                let d = v.agreement.expect("both routes ran");
                worst = worst.max(d);
                if d >= tol {
                    return Err(format!("η dual-path gap {d:.3e} at G={g}, H={h}"));
                }
                let v = eta_star(g.as_poly(), h, EtaMethod::Both);
                let d = v.agreement.expect("both routes ran");
                worst = worst.max(d);
                if d >= tol {
                    return Err(format!("η* dual-path gap {d:.3e} at G={g}, H={h}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (G,H) pairs per sum, worst gap {worst:.3e}"))
}

fn eta_multiplicative(qs: &[u64]) -> Result<String, String> {
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        let hs: Vec<MonicPoly> = monic_up_to(&f, 2).filter(|h| h.deg() >= 1).collect();
        for h1 in &hs {
            for h2 in &hs {
                if !gcd(h1.as_poly(), h2.as_poly())
                    .map_err(|e| e.to_string())?
                    .is_one()
                {
                    continue;
                }
                let h12 = h1.mul(h2);
                for g in monic_up_to(&f, 2) {
                    let ok_plain = eta(g.as_poly(), &h12, EtaMethod::Divisor).exact
                        == eta(g.as_poly(), h1, EtaMethod::Divisor).exact
                            * eta(g.as_poly(), h2, EtaMethod::Divisor).exact;
                    let ok_star = eta_star(g.as_poly(), &h12, EtaMethod::Divisor).exact
                        == eta_star(g.as_poly(), h1, EtaMethod::Divisor).exact
                            * eta_star(g.as_poly(), h2, EtaMethod::Divisor).exact;
                    if !ok_plain || !ok_star {
                        return Err(format!("multiplicativity failed at H1={h1}, H2={h2}, G={g}"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} coprime modulus pairs"))
}

fn eta_periodicity(qs: &[u64], deg: u32) -> Result<String, String> {
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        for h in monic_up_to(&f, deg).filter(|h| h.deg() >= 1) {
            for g in monic_up_to(&f, 2) {
                let shifted = &(g.as_poly() * h.as_poly()) + g.as_poly();
                if eta(g.as_poly(), &h, EtaMethod::Divisor).exact
                    != eta(&shifted, &h, EtaMethod::Divisor).exact
                    || eta_star(g.as_poly(), &h, EtaMethod::Divisor).exact
                        != eta_star(&shifted, &h, EtaMethod::Divisor).exact
                {
                    return Err(format!("periodicity failed at G={g}, H={h}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} congruent pairs"))
}

fn eta_divisor_sums(deg: u32) -> Result<String, String> {
    let f = prime_field(2);
    let mut count = 0u64;
    let gs: Vec<Poly> = monic_up_to(&f, deg).map(|m| m.into_poly()).collect();
    for h in monic_up_to(&f, deg) {
        for g in &gs {
            divisor_sum_identity(g, &h, false).map_err(|e| e.to_string())?;
            divisor_sum_identity(g, &h, true).map_err(|e| e.to_string())?;
            count += 1;
        }
    }
    Ok(format!("{count} (G,H) pairs, both identities exact"))
}

fn eta_abs_sums(deg: u32) -> Result<String, String> {
    let f = prime_field(2);
    let mut count = 0u64;
    for h in monic_up_to(&f, deg) {
        for g in monic_up_to(&f, deg) {
            abs_sum_bounds(&g, &h).map_err(|e| e.to_string())?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs: closed form exact, bounds hold"))
}

fn eta_zero_totients(qs: &[u64], deg: u32) -> Result<String, String> {
    let mut count = 0u64;
    for &q in qs {
        let f = prime_field(q);
        let zero = Poly::zero(&f);
        for h in monic_up_to(&f, deg) {
            let phi = match arith::phi_s(&h, 1.0) {
                FnValue::Exact(v) => v,
                _ => unreachable!("integer s"),
            };
            if eta(&zero, &h, EtaMethod::Divisor).exact != phi {
                return Err(format!("η(0,H) ≠ φ(H) at H={h}"));
            }
            if eta_star(&zero, &h, EtaMethod::Divisor).exact != unitary_basics(&h).phi_star {
                return Err(format!("η*(0,H) ≠ φ*(H) at H={h}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} moduli"))
}

fn zeta_convergence() -> Result<String, String> {
    for (q, s, b) in [(2u64, 2.0f64, 10u32), (2, 3.0, 10), (3, 2.0, 10)] {
        let closed = zeta_closed(q, s).map_err(|e| e.to_string())?;
        let partial = zeta_partial(q, s, b).map_err(|e| e.to_string())?;
        let bound = (q as f64).powf(b as f64 * (1.0 - s) + 1.0);
        if (partial - closed).abs() > bound {
            return Err(format!("ζ partial out of bound at q={q}, s={s}"));
        }
    }
    Ok("three (q, s) pairs within the geometric bound".to_string())
}

fn corollary_fixtures() -> Result<String, String> {
    let bound = TruncationBound::new(4);
    let mut count = 0u64;
    for q in [2u64, 3] {
        let f = prime_field(q);
        let t = MonicPoly::var(&f);
        let t1 = MonicPoly::try_new(&Poly::var(&f) + &Poly::one(&f)).expect("monic");
        let fixtures: Vec<(Family, f64, Vec<MonicPoly>)> = vec![
            (Family::Sigma, 1.0, vec![t.clone()]),
            (Family::Sigma, 1.0, vec![t.clone(), t1.clone()]),
            (Family::Tau, 0.0, vec![t.clone(), t.clone()]),
            (Family::Beta, 1.0, vec![t.clone()]),
            (Family::Phi, 1.0, vec![t1.clone()]),
        ];
        for (family, s, gs) in fixtures {
            for unitary in [false, true] {
                let report = verify_identity(
                    family,
                    s,
                    gs.len(),
                    &gs,
                    bound,
                    unitary,
                    None,
                    DEFAULT_BUDGET,
                )
                .map_err(|e| e.to_string())?;
                if !report.pass {
                    return Err(format!(
                        "{} fixture failed over F_{q} (unitary={unitary}): residual {} > {}",
                        family.name(),
                        report.residual,
                        report.tolerance
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} identity fixtures passed at B = 4"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_is_green() {
        let results = run(SelfTestLevel::Quick);
        for r in &results {
            assert!(r.passed, "{} failed: {}", r.name, r.detail);
        }
        assert!(results.len() >= 20);
    }
}
