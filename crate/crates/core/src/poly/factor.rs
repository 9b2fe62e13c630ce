//! Factorization, the irreducible sieve, and the divisor lattices.
//!
//! Degrees are desk-scale, so factorization is plain trial division in
//! degree order: every divisor found that way is automatically
//! irreducible because all smaller-degree factors were stripped first.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

use super::{monic_of_degree, MonicPoly, Poly};

/// Unit times a product of distinct monic irreducible prime powers,
/// sorted by (degree, lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    unit: FieldElement,
    factors: Vec<(MonicPoly, u32)>,
}

impl Factorization {
    pub fn unit(&self) -> &FieldElement {
        &self.unit
    }

    pub fn factors(&self) -> &[(MonicPoly, u32)] {
        &self.factors
    }

    /// Number of distinct monic irreducible divisors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Number of prime divisors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Multiplicity of a given prime.
    pub fn multiplicity(&self, prime: &MonicPoly) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| p == prime)
            .map_or(0, |(_, e)| *e)
    }

    /// Multiply the unit and prime powers back together.
    pub fn recombine(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (p, e) in &self.factors {
            for _ in 0..*e {
                acc = &acc * p.as_poly();
            }
        }
        acc
    }
}

/// Complete factorization of a nonzero polynomial.
pub fn factor(a: &Poly) -> Result<Factorization> {
    let (unit, monic) = a.monic_normalize()?;
    let field = Arc::clone(a.field());
    let mut rem = monic.into_poly();
    let mut factors: Vec<(MonicPoly, u32)> = Vec::new();
    let mut d = 1u32;
    while rem.degree().unwrap_or(0) >= 2 * d as usize {
        for cand in monic_of_degree(&field, d) {
            if rem.degree().unwrap_or(0) < 2 * d as usize {
                break;
            }
            let mut e = 0u32;
            loop {
                let (q, r) = rem.div_rem(cand.as_poly())?;
                if r.is_zero() {
                    rem = q;
                    e += 1;
                } else {
                    break;
                }
            }
            if e > 0 {
                factors.push((cand, e));
            }
        }
        d += 1;
    }
    if rem.degree().unwrap_or(0) >= 1 {
        factors.push((MonicPoly::try_new(rem)?, 1));
    }
    Ok(Factorization { unit, factors })
}

/// All monic irreducibles of degree ≤ max_degree, by the sieve: a monic
/// polynomial with no irreducible divisor of degree ≤ half its own degree
/// is irreducible.
pub fn irreducible_sieve(field: &Arc<FieldSpec>, max_degree: u32) -> Vec<MonicPoly> {
    let mut found: Vec<MonicPoly> = Vec::new();
    for d in 1..=max_degree {
        for cand in monic_of_degree(field, d) {
            let divisible = found
                .iter()
                .take_while(|p| 2 * p.deg() <= d as usize)
                .any(|p| p.as_poly().divides(cand.as_poly()));
            if !divisible {
                found.push(cand);
            }
        }
    }
    found
}

/// Trial-division irreducibility test.
pub fn is_irreducible(m: &MonicPoly) -> bool {
    let deg = m.deg();
    if deg == 0 {
        return false;
    }
    for d in 1..=(deg / 2) as u32 {
        for cand in monic_of_degree(m.field(), d) {
            if cand.as_poly().divides(m.as_poly()) {
                return false;
            }
        }
    }
    true
}

/// lcm of monic polynomials via their prime decompositions; 1 for an
/// empty list.
pub fn lcm(items: &[MonicPoly]) -> Result<MonicPoly> {
    let field = match items.first() {
        Some(first) => Arc::clone(first.field()),
        None => return Err(Error::domain("lcm of an empty list")),
    };
    let mut merged: Vec<(MonicPoly, u32)> = Vec::new();
    for item in items {
        for (p, e) in factor(item.as_poly())?.factors {
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, me)) => *me = (*me).max(e),
                None => merged.push((p, e)),
            }
        }
    }
    merged.sort_by_key(|(a, _)| a.order_key());
    let mut acc = Poly::one(&field);
    for (p, e) in merged {
        acc = &acc * p.pow(e).as_poly();
    }
    MonicPoly::try_new(acc)
}

impl MonicPoly {
    /// All monic divisors, sorted by (degree, lexicographic); the count is
    /// ∏(e_i + 1). With `unitary` it is the 2^ω divisors D with
    /// (D, G/D) = 1.
    pub fn divisors_sorted(&self, unitary: bool) -> Vec<MonicPoly> {
        let mut out: Vec<MonicPoly> = self
            .divisor_exponent_walk(unitary)
            .into_iter()
            .map(|(d, _)| d)
            .collect();
        out.sort_by_key(|a| a.order_key());
        out
    }

    pub fn divisors(&self) -> Vec<MonicPoly> {
        self.divisors_sorted(false)
    }

    pub fn unitary_divisors(&self) -> Vec<MonicPoly> {
        self.divisors_sorted(true)
    }

    /// Walk all divisors by exponent counters; also returns each
    /// divisor's exponent vector relative to the factor list.
    fn divisor_exponent_walk(&self, unitary: bool) -> Vec<(MonicPoly, Vec<u32>)> {
        let field = Arc::clone(self.field());
        let fact = factor(self.as_poly()).expect("monic polynomials are nonzero");
        let primes = fact.factors();
        // prime_powers[i][j] = P_i^j
        let prime_powers: Vec<Vec<MonicPoly>> = primes
            .iter()
            .map(|(p, e)| (0..=*e).map(|j| p.pow(j)).collect())
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; primes.len()];
        loop {
            let mut acc = Poly::one(&field);
            for (i, &e) in exps.iter().enumerate() {
                acc = &acc * prime_powers[i][e as usize].as_poly();
            }
            out.push((MonicPoly::try_new(acc).expect("product of monics"), exps.clone()));
            // advance the mixed-radix counter
            let mut i = 0;
            loop {
                if i == primes.len() {
                    return out;
                }
                let cap = primes[i].1;
                if unitary {
                    exps[i] = if exps[i] == 0 { cap } else { 0 };
                    if exps[i] != 0 {
                        break;
                    }
                } else {
                    exps[i] += 1;
                    if exps[i] <= cap {
                        break;
                    }
                    exps[i] = 0;
                }
                i += 1;
            }
        }
    }
}

/// All pairs (D, G/D) over monic divisors D of G, sorted by D.
pub fn divisor_pairs(g: &MonicPoly) -> Vec<(MonicPoly, MonicPoly)> {
    g.divisors()
        .into_iter()
        .map(|d| {
            let c = g.div_exact(&d).expect("divisor divides");
            (d, c)
        })
        .collect()
}

/// All pairs (D, μ(G/D)) with μ(G/D) ≠ 0: exactly the 2^ω divisors whose
/// complement is squarefree.
pub fn divisor_complement_mobius(g: &MonicPoly) -> Vec<(MonicPoly, i64)> {
    let field = Arc::clone(g.field());
    let fact = factor(g.as_poly()).expect("monic polynomials are nonzero");
    let primes = fact.factors();
    let prime_powers: Vec<Vec<MonicPoly>> = primes
        .iter()
        .map(|(p, e)| (0..=*e).map(|j| p.pow(j)).collect())
        .collect();
    let k = primes.len();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        // bit i set: exponent drops by one at P_i, contributing a sign
        let mut acc = Poly::one(&field);
        let mut sign = 1i64;
        for (i, (_, e)) in primes.iter().enumerate() {
            let drop = (mask >> i) & 1 == 1;
            let exp = if drop { e - 1 } else { *e };
            sign = if drop { -sign } else { sign };
            acc = &acc * prime_powers[i][exp as usize].as_poly();
        }
        out.push((MonicPoly::try_new(acc).expect("product of monics"), sign));
    }
    out
}

/// (A, B)_*: the highest-degree D with D | A and D || B, computed as the
/// product of the prime powers P^{ν_P(B)} of B that divide A. A = 0 is
/// divisible by everything, so (0, B)_* = B.
pub fn unitary_gcd_star(a: &Poly, b: &MonicPoly) -> MonicPoly {
    let field = Arc::clone(b.field());
    let fact = factor(b.as_poly()).expect("monic polynomials are nonzero");
    let mut acc = Poly::one(&field);
    for (p, e) in fact.factors() {
        let pp = p.pow(*e);
        if a.is_zero() || pp.as_poly().divides(a) {
            acc = &acc * pp.as_poly();
        }
    }
    MonicPoly::try_new(acc).expect("product of monics")
}

/// 2^ω(G) as an exact integer.
pub fn two_pow_omega(g: &MonicPoly) -> BigInt {
    let omega = factor(g.as_poly())
        .expect("monic polynomials are nonzero")
        .omega();
    BigInt::one() << omega
}
