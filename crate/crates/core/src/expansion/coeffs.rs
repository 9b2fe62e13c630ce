//! Truncated expansion coefficients.
//!
//! For an arity-k function f and monic (H_1,...,H_k):
//!
//!   C = Σ_{M_i monic} (μ_k∗f)(M_1H_1,...,M_kH_k) / (|M_1H_1|···|M_kH_k|),
//!
//! the unitary variant restricting to (M_i, H_i) = 1. `coeff_special`
//! evaluates the collapsed form for f = g∘gcd, which depends only on
//! Q = [H_1,...,H_k]:
//!
//!   C = |Q|^{-k} Σ_M (μ∗g)(MQ) / |M|^k   (unitary: (M,Q) = 1).
//!
//! `coeff_euler` multiplies truncated local sums over irreducibles for
//! multiplicative f; for a prime dividing H_i the unitary local exponent
//! is pinned to ν_P(H_i) by coprimality.

use std::collections::HashMap;

use crate::arith::{multivar_mobius_transform, ArithFnK};
use crate::error::{Error, Result};
use crate::exec::{fold_terms, ExecMode};
use crate::poly::{factor, gcd, irreducible_sieve, lcm, monic_up_to, MonicPoly};

use super::{check_budget, pow_f, TruncationBound};

/// How a coefficient table was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    GeneralSum,
    EulerProduct,
    ClosedForm,
}

/// A table of expansion coefficients keyed by monic tuples.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    unitary: bool,
    provenance: Provenance,
    entries: HashMap<Vec<MonicPoly>, f64>,
}

impl CoeffTable {
    pub fn new(unitary: bool, provenance: Provenance) -> CoeffTable {
        CoeffTable {
            unitary,
            provenance,
            entries: HashMap::new(),
        }
    }

    pub fn unitary(&self) -> bool {
        self.unitary
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn insert(&mut self, tuple: Vec<MonicPoly>, coeff: f64) {
        self.entries.insert(tuple, coeff);
    }

    /// Missing tuples read as zero in expansions.
    pub fn get(&self, tuple: &[MonicPoly]) -> Option<f64> {
        self.entries.get(tuple).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by tuple, for deterministic serialization.
    pub fn sorted_entries(&self) -> Vec<(&Vec<MonicPoly>, f64)> {
        let mut items: Vec<_> = self.entries.iter().map(|(k, v)| (k, *v)).collect();
        items.sort_by(|(a, _), (b, _)| {
            let ka: Vec<_> = a.iter().map(|p| p.order_key()).collect();
            let kb: Vec<_> = b.iter().map(|p| p.order_key()).collect();
            ka.cmp(&kb)
        });
        items
    }
}

/// The truncated general coefficient: all M_i of degree ≤ bound, in
/// degree-lexicographic order per coordinate.
pub fn coeff_general(
    f: &ArithFnK,
    hs: &[MonicPoly],
    bound: TruncationBound,
    unitary: bool,
    budget: u64,
) -> Result<f64> {
    let k = hs.len();
    if f.arity() != k {
        return Err(Error::domain(format!(
            "coefficient tuple has {k} coordinates but f takes {}",
            f.arity()
        )));
    }
    let field = hs[0].field();
    let all: Vec<MonicPoly> = monic_up_to(field, bound.degree).collect();
    // per-coordinate M lists, coprimality-filtered in the unitary case
    let lists: Vec<Vec<&MonicPoly>> = hs
        .iter()
        .map(|h| {
            all.iter()
                .filter(|m| {
                    !unitary
                        || gcd(m.as_poly(), h.as_poly())
                            .expect("monic inputs")
                            .is_one()
                })
                .collect()
        })
        .collect();
    let total: u128 = lists.iter().map(|l| l.len() as u128).product();
    check_budget(total, budget, "coeff_general")?;

    let term = |idx: usize| -> f64 {
        let mut rest = idx;
        let mut args = Vec::with_capacity(k);
        let mut denom = 1.0;
        for (i, list) in lists.iter().enumerate() {
            let j = rest % list.len();
            rest /= list.len();
            let mh = list[j].mul(&hs[i]);
            denom *= mh.norm_f64();
            args.push(mh);
        }
        let num = multivar_mobius_transform(f, &args)
            .expect("arity checked")
            .to_f64();
        num / denom
    };
    let mut acc = 0.0;
    fold_terms(ExecMode::Default, total as usize, term, |_, v: f64| {
        acc += v;
    });
    Ok(acc)
}

/// The collapsed coefficient for f = g∘gcd, summed over monic M of
/// degree ≤ bound.
pub fn coeff_special(
    g: &ArithFnK,
    hs: &[MonicPoly],
    bound: TruncationBound,
    unitary: bool,
    budget: u64,
) -> Result<f64> {
    if g.arity() != 1 {
        return Err(Error::domain("coeff_special takes a one-variable g"));
    }
    if hs.is_empty() {
        return Err(Error::domain("coefficient tuple must be nonempty"));
    }
    let k = hs.len();
    let field = hs[0].field();
    let q_poly = lcm(hs)?;
    let ms: Vec<MonicPoly> = monic_up_to(field, bound.degree)
        .filter(|m| {
            !unitary
                || gcd(m.as_poly(), q_poly.as_poly())
                    .expect("monic inputs")
                    .is_one()
        })
        .collect();
    check_budget(ms.len() as u128, budget, "coeff_special")?;

    let term = |idx: usize| -> f64 {
        let m = &ms[idx];
        let mq = m.mul(&q_poly);
        let num = multivar_mobius_transform(g, std::slice::from_ref(&mq))
            .expect("arity checked")
            .to_f64();
        num / pow_f(m.norm_f64(), k as f64)
    };
    let mut acc = 0.0;
    fold_terms(ExecMode::Default, ms.len(), term, |_, v: f64| acc += v);
    Ok(acc / pow_f(q_poly.norm_f64(), k as f64))
}

/// Truncated Euler product over irreducibles of degree ≤
/// `prime_degree_bound`, local exponents capped at `exponent_bound`.
/// Requires f to claim multiplicativity.
pub fn coeff_euler(
    f: &ArithFnK,
    hs: &[MonicPoly],
    prime_degree_bound: u32,
    exponent_bound: u32,
    unitary: bool,
) -> Result<f64> {
    let k = hs.len();
    if f.arity() != k {
        return Err(Error::domain(format!(
            "coefficient tuple has {k} coordinates but f takes {}",
            f.arity()
        )));
    }
    if !f.is_multiplicative() {
        return Err(Error::domain(
            "the Euler-product route needs a multiplicative f",
        ));
    }
    if prime_degree_bound < 1 || exponent_bound < 1 {
        return Err(Error::domain("Euler-product bounds must be at least 1"));
    }
    let field = hs[0].field();
    let mut product = 1.0;
    for p in irreducible_sieve(field, prime_degree_bound) {
        let nus: Vec<u32> = hs
            .iter()
            .map(|h| factor(h.as_poly()).expect("monic").multiplicity(&p))
            .collect();
        // exponent ranges per coordinate
        let ranges: Vec<(u32, u32)> = nus
            .iter()
            .map(|&nu| {
                if unitary {
                    if nu >= 1 {
                        (nu, nu) // coprimality pins the exponent
                    } else {
                        (0, exponent_bound)
                    }
                } else {
                    (nu, exponent_bound.max(nu))
                }
            })
            .collect();
        let p_norm = p.norm_f64();
        let mut local = 0.0;
        let mut exps: Vec<u32> = ranges.iter().map(|(lo, _)| *lo).collect();
        'outer: loop {
            let args: Vec<MonicPoly> = exps.iter().map(|&e| p.pow(e)).collect();
            let num = multivar_mobius_transform(f, &args)?.to_f64();
            let total_exp: u32 = exps.iter().sum();
            local += num / pow_f(p_norm, total_exp as f64);
            let mut i = 0;
            loop {
                if i == k {
                    break 'outer;
                }
                if exps[i] < ranges[i].1 {
                    exps[i] += 1;
                    break;
                }
                exps[i] = ranges[i].0;
                i += 1;
            }
        }
        product *= local;
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sigma_s, tau, FnValue};
    use crate::expansion::{zeta_closed, Family, TruncationBound};
    use crate::field::FieldSpec;
    use crate::poly::parse_poly;
    use std::sync::Arc;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::new(2, 1).unwrap()
    }

    fn m(field: &Arc<FieldSpec>, s: &str) -> MonicPoly {
        MonicPoly::try_new(parse_poly(s, field).unwrap()).unwrap()
    }

    fn sigma_over_norm() -> ArithFnK {
        ArithFnK::single(true, |g: &MonicPoly| {
            FnValue::Real(sigma_s(g, 1.0).to_f64() / g.norm_f64())
        })
    }

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn general_delta_at_one() {
        // μ ∗ δ = μ, so the truncated sum Σ_{deg M ≤ B} μ(M)/|M| is 1 at
        // B = 0 and exactly 0 beyond (the degree-1 stratum cancels the
        // leading term, higher strata vanish).
        let f = f2();
        let delta = ArithFnK::delta(1);
        let ones = [MonicPoly::one(&f)];
        let c0 =
            coeff_general(&delta, &ones, TruncationBound::new(0), false, BUDGET).unwrap();
        assert_eq!(c0, 1.0);
        for b in [1u32, 2, 4] {
            let c =
                coeff_general(&delta, &ones, TruncationBound::new(b), false, BUDGET).unwrap();
            assert_eq!(c, 0.0);
        }
    }

    #[test]
    fn general_sigma_coefficient_approaches_half() {
        // limit is ζ_A(2)/|T|^2 = 0.5; the tail shrinks geometrically
        let f = f2();
        let g = ArithFnK::compose_gcd(&sigma_over_norm(), 1);
        let c = coeff_general(&g, &[m(&f, "T")], TruncationBound::new(8), false, BUDGET)
            .unwrap();
        assert!((c - 0.5).abs() < 2.0 * 0.5f64.powi(8), "got {c}");
    }

    #[test]
    fn general_two_variable_tau_partial_sum() {
        // only diagonal terms survive; hand enumeration at B = 2 gives
        // (1/4)(1 + 1/2 + 1/4) = 0.4375
        let f = f2();
        let g = ArithFnK::compose_gcd(&ArithFnK::single(true, tau), 2);
        let t = m(&f, "T");
        let c = coeff_general(
            &g,
            &[t.clone(), t.clone()],
            TruncationBound::new(2),
            false,
            BUDGET,
        )
        .unwrap();
        assert_eq!(c, 0.4375);
    }

    #[test]
    fn general_budget_guard_fires() {
        let f = f2();
        let g = ArithFnK::compose_gcd(&ArithFnK::single(true, tau), 2);
        let t = m(&f, "T");
        let err = coeff_general(
            &g,
            &[t.clone(), t.clone()],
            TruncationBound::new(4),
            false,
            10,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        assert!(err.to_string().contains("961")); // 31^2 tuples
    }

    #[test]
    fn special_geometric_partial_sums() {
        let f = f2();
        // k=1, H=T: C(B) = (1/4)·Σ_{deg M ≤ B} |M|^{-2}
        let c = coeff_special(
            &sigma_over_norm(),
            &[m(&f, "T")],
            TruncationBound::new(4),
            false,
            BUDGET,
        )
        .unwrap();
        assert_eq!(c, 31.0 / 64.0);
        assert!((c - 0.5).abs() < 0.5f64.powi(4));

        // k=2, Q=1: partial sum toward ζ_A(2) = 2
        let tau_fn = ArithFnK::single(true, tau);
        let ones = [MonicPoly::one(&f), MonicPoly::one(&f)];
        let c = coeff_special(&tau_fn, &ones, TruncationBound::new(3), false, BUDGET).unwrap();
        assert_eq!(c, 1.875);
    }

    #[test]
    fn special_unitary_limit() {
        // limit is ζ_A(2)φ_2(T)/|T|^4 = 3/8; at B = 10 the sum is the
        // exact dyadic 3/8 − 2^{−13}
        let f = f2();
        let c = coeff_special(
            &sigma_over_norm(),
            &[m(&f, "T")],
            TruncationBound::new(10),
            true,
            BUDGET,
        )
        .unwrap();
        assert_eq!(c, 0.375 - 2.0f64.powi(-13));
    }

    #[test]
    fn special_agrees_with_general_through_gcd() {
        // At bound B the general route reaches diagonal arguments of
        // degree B + min_i deg H_i while the collapsed route reaches
        // B + deg Q, so coverage is aligned with the per-tuple offset
        // deg Q − min_i deg H_i before comparing.
        let f = f2();
        let tau_fn = ArithFnK::single(true, tau);
        let cases: Vec<Vec<MonicPoly>> = vec![
            vec![m(&f, "T")],
            vec![m(&f, "T^2")],
            vec![m(&f, "T"), m(&f, "T+1")],
            vec![m(&f, "T"), m(&f, "T")],
            vec![m(&f, "T^2+T"), m(&f, "T")],
        ];
        for g in [tau_fn, sigma_over_norm()] {
            for hs in &cases {
                for unitary in [false, true] {
                    let k = hs.len();
                    let composed = ArithFnK::compose_gcd(&g, k);
                    let b = 3u32;
                    let q_poly = crate::poly::lcm(hs).unwrap();
                    let min_h = hs.iter().map(|h| h.deg() as u32).min().unwrap();
                    let offset = q_poly.deg() as u32 - min_h;
                    if b < offset {
                        continue;
                    }
                    let via_general =
                        coeff_general(&composed, hs, TruncationBound::new(b), unitary, BUDGET)
                            .unwrap();
                    let via_special = coeff_special(
                        &g,
                        hs,
                        TruncationBound::new(b - offset),
                        unitary,
                        BUDGET,
                    )
                    .unwrap();
                    assert!(
                        (via_general - via_special).abs() < 1e-9,
                        "routes disagree at {hs:?} unitary={unitary}: {via_general} vs {via_special}"
                    );
                }
            }
        }
    }

    #[test]
    fn unitary_routes_diverge_on_conflicting_exponents() {
        // For H = (T, T^2) no argument can make T a unitary divisor in
        // the first coordinate and T^2 in the second, so the general
        // unitary coefficient is an empty sum; the collapsed lcm form is
        // a different (nonzero) quantity there.
        let f = f2();
        let g = ArithFnK::single(true, tau);
        let hs = [m(&f, "T"), m(&f, "T^2")];
        let composed = ArithFnK::compose_gcd(&g, 2);
        let b = TruncationBound::new(3);
        let via_general = coeff_general(&composed, &hs, b, true, BUDGET).unwrap();
        assert_eq!(via_general, 0.0);
        let via_special = coeff_special(&g, &hs, b, true, BUDGET).unwrap();
        assert!(via_special > 0.05, "got {via_special}");
    }

    #[test]
    fn euler_zeta_product() {
        // f = (σ_1∘gcd)/|gcd| with H = 1: local sums are truncated
        // geometric series Σ_{e≤4} |P|^{-2e}; the product over primes of
        // degree ≤ 3 over F_2 has the exact value below.
        let f = f2();
        let g = ArithFnK::compose_gcd(&sigma_over_norm(), 1);
        let c = coeff_euler(&g, &[MonicPoly::one(&f)], 3, 4, false).unwrap();
        let deg1 = 1.0 + 0.25 + 0.0625 + 0.015625 + 0.00390625; // |P| = 2
        let deg2 = {
            let r = 1.0 / 16.0;
            1.0 + r + r * r + r * r * r + r * r * r * r
        };
        let deg3 = {
            let r = 1.0 / 64.0;
            1.0 + r + r * r + r * r * r + r * r * r * r
        };
        let expected = deg1 * deg1 * deg2 * deg3 * deg3;
        assert!((c - expected).abs() < 1e-14, "got {c}, expected {expected}");
        assert!((c - zeta_closed(2, 2.0).unwrap()).abs() < 0.06);
    }

    #[test]
    fn euler_delta_vanishes_at_prime_square() {
        // the local factor at T is identically zero for H = T^2
        let f = f2();
        let delta = ArithFnK::delta(1);
        for unitary in [false, true] {
            let c = coeff_euler(&delta, &[m(&f, "T^2")], 3, 4, unitary).unwrap();
            assert_eq!(c, 0.0);
        }
    }

    #[test]
    fn euler_agrees_with_general() {
        let f = f2();
        let g = ArithFnK::compose_gcd(&ArithFnK::single(true, tau), 2);
        let hs = [m(&f, "T"), MonicPoly::one(&f)];
        let via_euler = coeff_euler(&g, &hs, 3, 4, false).unwrap();
        let via_general =
            coeff_general(&g, &hs, TruncationBound::new(4), false, BUDGET).unwrap();
        // both approximate ζ_A(2)/|T|^2 = 0.5; compare against the sum of
        // their geometric tails
        let tail = 2.0 * 0.5f64.powi(4) + 2.0 * 0.5f64.powi(3);
        assert!(
            (via_euler - via_general).abs() < tail,
            "{via_euler} vs {via_general}"
        );
        assert!((via_euler - 0.5).abs() < 0.02);
    }

    #[test]
    fn sigma_special_matches_closed_form_at_depth_eight() {
        let f = f2();
        let g = Family::Sigma.g_fn(1.0);
        let bound = TruncationBound::new(8);
        for q_name in ["1", "T", "T+1", "T^2"] {
            let q_poly = m(&f, q_name);
            for unitary in [false, true] {
                let closed =
                    crate::expansion::coeff_closed_form(Family::Sigma, 1.0, 1, &q_poly, unitary)
                        .unwrap();
                let partial =
                    coeff_special(&g, std::slice::from_ref(&q_poly), bound, unitary, BUDGET)
                        .unwrap();
                assert!(
                    (closed - partial).abs() < 2.0f64.powi(-7),
                    "Q={q_name} unitary={unitary}: {closed} vs {partial}"
                );
            }
        }
    }

    #[test]
    fn euler_requires_multiplicative() {
        let f = f2();
        let not_mult = ArithFnK::new(1, false, |_| FnValue::one());
        assert!(coeff_euler(&not_mult, &[m(&f, "T")], 2, 2, false).is_err());
    }

    #[test]
    fn table_round_trip() {
        let f = f2();
        let mut table = CoeffTable::new(false, Provenance::ClosedForm);
        table.insert(vec![m(&f, "T")], 0.5);
        table.insert(vec![m(&f, "T+1")], 0.25);
        assert_eq!(table.get(&[m(&f, "T")]), Some(0.5));
        assert_eq!(table.get(&[m(&f, "T^2")]), None);
        assert_eq!(table.len(), 2);
        let sorted = table.sorted_entries();
        assert_eq!(sorted[0].1, 0.5);
    }
}
