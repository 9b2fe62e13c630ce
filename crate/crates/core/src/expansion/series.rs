//! Truncated evaluation of the Ramanujan expansions and identity
//! verification.
//!
//! The right-hand side of an expansion is the sum over monic tuples
//! (H_1,...,H_k) of coefficient × η(G_1,H_1)···η(G_k,H_k) (η* in the
//! unitary case). Tuples are truncated by max_i deg H_i ≤ B and reported
//! as cumulative partial sums per degree stratum. Terms are computed in
//! a fixed tuple order and reduced sequentially, so the reported partial
//! sums are bit-stable regardless of worker count.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{multivar_mobius_transform, ArithFnK};
use crate::error::{Error, Result};
use crate::exec::{fold_terms, ExecMode};
use crate::poly::{factor, gcd_many, monic_up_to, MonicPoly};
use crate::ramanujan::{eta, eta_star, EtaMethod};

use super::{
    check_budget, coeff_closed_form_from_exponents, pow_f, CoeffTable, Family, PrimeExponents,
    TruncationBound,
};

/// Where expansion coefficients come from.
#[derive(Clone, Debug)]
pub enum CoeffSource<'a> {
    /// Closed-form coefficient of the given family, evaluated at
    /// Q = [H_1,...,H_k]. In the unitary mode a tuple only carries this
    /// coefficient when every H_i is a unitary divisor of Q; the
    /// coefficient sum is empty (zero) otherwise.
    ClosedForm { family: Family, s: f64 },
    /// Precomputed table; missing tuples read as zero.
    Table(&'a CoeffTable),
}

/// Verification record for one identity instance.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub q: u64,
    pub k: usize,
    pub s: f64,
    pub unitary: bool,
    #[serde(rename = "G")]
    pub g: Vec<String>,
    pub lhs: f64,
    /// Cumulative right-hand sides per degree bound b = 0..=B.
    pub partials: Vec<(u32, f64)>,
    /// |partial − lhs| per degree bound.
    pub residuals: Vec<f64>,
    /// The final residual, compared against the tolerance.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Truncated Wintner-type summability diagnostic; no convergence verdict
/// is implied.
#[derive(Clone, Debug, Serialize)]
pub struct WintnerDiagnostic {
    /// Σ 2^{ω(G_1)+...+ω(G_k)} |(μ_k∗f)| / (|G_1|···|G_k|) over the box.
    pub with_omega_factor: f64,
    /// The same sum without the 2^ω factor; reported for multiplicative f.
    pub plain: Option<f64>,
    pub tuples: u64,
}

/// Cumulative partial sums (b, Σ over tuples with max deg ≤ b) of the
/// expansion RHS at (G_1,...,G_k); η values come from the exact divisor
/// path. Parallel when the `parallel` feature is on.
pub fn expand_truncated(
    gs: &[MonicPoly],
    source: &CoeffSource,
    bound: TruncationBound,
    unitary: bool,
    budget: u64,
) -> Result<Vec<(u32, f64)>> {
    expand_impl(gs, source, bound, unitary, budget, ExecMode::Default)
}

/// Sequential reference evaluation; bit-identical to [`expand_truncated`].
pub fn expand_truncated_sequential(
    gs: &[MonicPoly],
    source: &CoeffSource,
    bound: TruncationBound,
    unitary: bool,
    budget: u64,
) -> Result<Vec<(u32, f64)>> {
    expand_impl(gs, source, bound, unitary, budget, ExecMode::Sequential)
}

fn expand_impl(
    gs: &[MonicPoly],
    source: &CoeffSource,
    bound: TruncationBound,
    unitary: bool,
    budget: u64,
    mode: ExecMode,
) -> Result<Vec<(u32, f64)>> {
    let k = gs.len();
    if k == 0 {
        return Err(Error::domain("expansion needs at least one coordinate"));
    }
    if let CoeffSource::Table(table) = source {
        if table.unitary() != unitary {
            return Err(Error::domain(
                "coefficient table was built for the other unitary mode",
            ));
        }
    }
    let field = gs[0].field();
    let hs: Vec<MonicPoly> = monic_up_to(field, bound.degree).collect();
    let n = hs.len();
    let total: u128 = (n as u128).pow(k as u32);
    check_budget(total, budget, "expand_truncated")?;

    let degrees: Vec<u32> = hs.iter().map(|h| h.deg() as u32).collect();

    // η(G_i, H) for every H in the list, exact divisor path
    let eta_tables: Vec<Vec<f64>> = gs
        .iter()
        .map(|g| {
            crate::exec::map_range(mode, 0, n, |j| {
                let v = if unitary {
                    eta_star(g.as_poly(), &hs[j], EtaMethod::Divisor)
                } else {
                    eta(g.as_poly(), &hs[j], EtaMethod::Divisor)
                };
                num_traits::ToPrimitive::to_f64(&v.exact).expect("desk-scale η")
            })
        })
        .collect();

    // factorizations against a shared prime registry, for merged-lcm
    // closed-form coefficients
    let mut prime_ids: HashMap<MonicPoly, usize> = HashMap::new();
    let mut prime_degrees: Vec<u32> = Vec::new();
    let factored: Vec<Vec<(usize, u32)>> = hs
        .iter()
        .map(|h| {
            let mut exps: Vec<(usize, u32)> = factor(h.as_poly())
                .expect("monic")
                .factors()
                .iter()
                .map(|(p, e)| {
                    let next = prime_ids.len();
                    let id = *prime_ids.entry(p.clone()).or_insert(next);
                    if id == prime_degrees.len() {
                        prime_degrees.push(p.deg() as u32);
                    }
                    (id, *e)
                })
                .collect();
            exps.sort_unstable();
            exps
        })
        .collect();

    // validate family-side conditions once, at Q = 1
    if let CoeffSource::ClosedForm { family, s } = source {
        coeff_closed_form_from_exponents(*family, *s, k, field.q(), &Vec::new(), unitary)?;
    }

    let coeff_of = |tuple_idx: &[usize]| -> f64 {
        match source {
            CoeffSource::ClosedForm { family, s } => {
                // merge exponent profiles: ν_P(Q) = max_i ν_P(H_i)
                let mut merged: Vec<(usize, u32)> = Vec::new();
                for &j in tuple_idx {
                    for &(id, e) in &factored[j] {
                        match merged.iter_mut().find(|(mid, _)| *mid == id) {
                            Some((_, me)) => *me = (*me).max(e),
                            None => merged.push((id, e)),
                        }
                    }
                }
                if unitary {
                    // The Q-only closed form is the coefficient of a tuple
                    // only when every H_i is a unitary divisor of Q; a
                    // coordinate whose exponent at some prime falls short
                    // of ν_P(Q) contributes an empty coefficient sum (no
                    // argument makes both H_i unitary divisors), so its
                    // coefficient is zero.
                    let compatible = tuple_idx.iter().all(|&j| {
                        factored[j].iter().all(|&(id, e)| {
                            merged
                                .iter()
                                .find(|(mid, _)| *mid == id)
                                .is_some_and(|&(_, me)| me == e)
                        })
                    });
                    if !compatible {
                        return 0.0;
                    }
                }
                let exps: PrimeExponents = merged
                    .iter()
                    .map(|&(id, e)| (prime_degrees[id], e))
                    .collect();
                coeff_closed_form_from_exponents(*family, *s, k, field.q(), &exps, unitary)
                    .expect("side conditions pre-checked")
            }
            CoeffSource::Table(table) => {
                let tuple: Vec<MonicPoly> = tuple_idx.iter().map(|&j| hs[j].clone()).collect();
                table.get(&tuple).unwrap_or(0.0)
            }
        }
    };

    let term = |idx: usize| -> (u32, f64) {
        let mut rest = idx;
        let mut tuple_idx = vec![0usize; k];
        let mut max_deg = 0u32;
        let mut eta_prod = 1.0;
        for i in 0..k {
            let j = rest % n;
            rest /= n;
            tuple_idx[i] = j;
            max_deg = max_deg.max(degrees[j]);
            eta_prod *= eta_tables[i][j];
        }
        if eta_prod == 0.0 {
            return (max_deg, 0.0);
        }
        (max_deg, coeff_of(&tuple_idx) * eta_prod)
    };

    let mut strata = vec![0.0f64; bound.degree as usize + 1];
    fold_terms(mode, total as usize, term, |_, (b, v): (u32, f64)| {
        strata[b as usize] += v;
    });
    let mut partials = Vec::with_capacity(strata.len());
    let mut acc = 0.0;
    for (b, v) in strata.iter().enumerate() {
        acc += v;
        partials.push((b as u32, acc));
    }
    Ok(partials)
}

/// Default verification tolerance: the geometric tail allowance
/// max(1e-6, 4·q^{−(B − max deg G_i)}).
pub fn default_tolerance(q: u64, bound: u32, max_deg_g: u32) -> f64 {
    let tail = 4.0 * pow_f(q as f64, max_deg_g as f64 - bound as f64);
    tail.max(1e-6)
}

/// Verify one closed-form expansion identity: compute the left-hand side
/// at gcd(G_1,...,G_k), the truncated right-hand side, and compare.
///
/// Side conditions are enforced up front: k + s must exceed 1, which for
/// the τ family means k ≥ 2.
#[allow(clippy::too_many_arguments)]
pub fn verify_identity(
    family: Family,
    s: f64,
    k: usize,
    gs: &[MonicPoly],
    bound: TruncationBound,
    unitary: bool,
    tolerance: Option<f64>,
    budget: u64,
) -> Result<IdentityReport> {
    if gs.len() != k {
        return Err(Error::domain(format!(
            "expected {k} G arguments, got {}",
            gs.len()
        )));
    }
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let s = family.effective_s(s);
    let field = gs[0].field();
    let q = field.q();
    // rejects k + s <= 1 (τ with k < 2 in particular)
    coeff_closed_form_from_exponents(family, s, k, q, &Vec::new(), unitary)?;

    let gcd_g = gcd_many(gs)?;
    let lhs = family.lhs(s, &gcd_g);
    let source = CoeffSource::ClosedForm { family, s };
    let partials = expand_truncated(gs, &source, bound, unitary, budget)?;
    let residuals: Vec<f64> = partials.iter().map(|(_, v)| (v - lhs).abs()).collect();
    let residual = *residuals.last().expect("at least the b=0 stratum");
    let max_deg_g = gs.iter().map(|g| g.deg() as u32).max().unwrap_or(0);
    let tolerance = tolerance.unwrap_or_else(|| default_tolerance(q, bound.degree, max_deg_g));
    Ok(IdentityReport {
        identity: family.name().to_string(),
        q,
        k,
        s,
        unitary,
        g: gs.iter().map(|g| g.to_string()).collect(),
        lhs,
        partials,
        residuals,
        residual,
        tolerance,
        pass: residual < tolerance,
    })
}

/// Truncated value of the summability-hypothesis sum
/// Σ 2^{Σω(G_i)} |(μ_k∗f)(G_1,...,G_k)| / ∏|G_i| over the degree box in
/// the given field, plus the variant without the 2^ω factor when f
/// claims multiplicativity. Diagnostic only — no convergence verdict.
pub fn wintner_diagnostic(
    f: &ArithFnK,
    field: &std::sync::Arc<crate::field::FieldSpec>,
    bound: TruncationBound,
    budget: u64,
) -> Result<WintnerDiagnostic> {
    let k = f.arity();
    let gs: Vec<MonicPoly> = monic_up_to(field, bound.degree).collect();
    let n = gs.len();
    let total: u128 = (n as u128).pow(k as u32);
    check_budget(total, budget, "wintner_diagnostic")?;
    let omegas: Vec<u32> = gs
        .iter()
        .map(|g| factor(g.as_poly()).expect("monic").omega())
        .collect();
    let norms: Vec<f64> = gs.iter().map(MonicPoly::norm_f64).collect();

    let term = |idx: usize| -> (f64, f64) {
        let mut rest = idx;
        let mut args = Vec::with_capacity(k);
        let mut norm_prod = 1.0;
        let mut omega_sum = 0u32;
        for _ in 0..k {
            let j = rest % n;
            rest /= n;
            args.push(gs[j].clone());
            norm_prod *= norms[j];
            omega_sum += omegas[j];
        }
        let transformed = multivar_mobius_transform(f, &args)
            .expect("arity checked")
            .to_f64()
            .abs();
        let plain = transformed / norm_prod;
        (pow_f(2.0, omega_sum as f64) * plain, plain)
    };
    let mut with_omega = 0.0;
    let mut plain = 0.0;
    fold_terms(ExecMode::Default, total as usize, term, |_, (w, p): (f64, f64)| {
        with_omega += w;
        plain += p;
    });
    Ok(WintnerDiagnostic {
        with_omega_factor: with_omega,
        plain: f.is_multiplicative().then_some(plain),
        tuples: total as u64,
    })
}
