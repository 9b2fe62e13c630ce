//! Exact arithmetic and combinatorics in A = F_q[T].
//!
//! `Poly` stores coefficients lowest degree first with no trailing zeros;
//! the empty vector is the zero polynomial. `MonicPoly` wraps a `Poly`
//! whose leading coefficient is 1 — the canonical representatives on
//! which every arithmetic function is evaluated.

mod factor;
mod parse;

pub use factor::{
    divisor_complement_mobius, divisor_pairs, factor, irreducible_sieve, is_irreducible, lcm,
    two_pow_omega, unitary_gcd_star, Factorization,
};
pub use parse::parse_poly;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// A dense univariate polynomial over F_q, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Arc<FieldSpec>,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(field: &Arc<FieldSpec>) -> Poly {
        Poly {
            field: Arc::clone(field),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Poly {
        Poly::constant(field.one())
    }

    /// The variable T.
    pub fn var(field: &Arc<FieldSpec>) -> Poly {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = Arc::clone(c.field());
        Poly::from_coeffs(&field, vec![c])
    }

    /// c·T^deg.
    pub fn monomial(c: FieldElement, deg: usize) -> Poly {
        let field = Arc::clone(c.field());
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(&field, coeffs)
    }

    /// Build from coefficients, trimming trailing zeros.
    pub fn from_coeffs(field: &Arc<FieldSpec>, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of T^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    pub fn mul_scalar(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly::from_coeffs(
            &self.field,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    /// Quotient and remainder with deg R < deg divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero(
                "division by the zero polynomial".into(),
            ));
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let lead_inv = divisor.leading().unwrap().inverse()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let factor = &top * &lead_inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let sub = d * &factor;
                rem[i + j] = &rem[i + j] - &sub;
            }
            quot[i] = factor;
        }
        Ok((
            Poly::from_coeffs(&self.field, quot),
            Poly::from_coeffs(&self.field, rem),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact division; an invariant failure if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::invariant(format!(
                "expected {divisor} to divide {self}"
            )))
        }
    }

    /// Does `self` divide `multiple`?
    pub fn divides(&self, multiple: &Poly) -> bool {
        if self.is_zero() {
            return multiple.is_zero();
        }
        multiple.rem(self).expect("nonzero divisor").is_zero()
    }

    /// Split a nonzero polynomial as unit · monic.
    pub fn monic_normalize(&self) -> Result<(FieldElement, MonicPoly)> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::domain("cannot normalize the zero polynomial"))?
            .clone();
        let inv = lead.inverse()?;
        let monic = self.mul_scalar(&inv);
        Ok((lead, MonicPoly(monic)))
    }

    /// |A| = q^deg A as an exact integer; the zero polynomial has no norm.
    pub fn norm(&self) -> Result<BigInt> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::domain("the zero polynomial has no norm"))?;
        Ok(BigInt::from(self.field.q()).pow(deg as u32))
    }

    /// Sorting key realizing the (degree, lexicographic) order used for
    /// enumeration: coefficient indices from the highest power down.
    pub(crate) fn order_key(&self) -> (usize, Vec<u64>) {
        let deg = self.coeffs.len(); // 0 for the zero polynomial, sorts first
        let key = self.coeffs.iter().rev().map(FieldElement::index).collect();
        (deg, key)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.field, coeffs)
    }
}

/// A monic polynomial; the canonical representative of its unit class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly(Poly);

impl MonicPoly {
    pub fn try_new(p: Poly) -> Result<MonicPoly> {
        if p.is_monic() {
            Ok(MonicPoly(p))
        } else {
            Err(Error::domain(format!("{p} is not monic")))
        }
    }

    pub fn one(field: &Arc<FieldSpec>) -> MonicPoly {
        MonicPoly(Poly::one(field))
    }

    /// The monic linear polynomial T.
    pub fn var(field: &Arc<FieldSpec>) -> MonicPoly {
        MonicPoly(Poly::var(field))
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn deg(&self) -> usize {
        self.0.degree().expect("monic polynomials are nonzero")
    }

    /// Exact norm q^deg.
    pub fn norm_int(&self) -> BigInt {
        self.0.norm().expect("monic polynomials are nonzero")
    }

    pub fn norm_f64(&self) -> f64 {
        (self.0.field.q() as f64).powi(self.deg() as i32)
    }

    pub fn pow(&self, e: u32) -> MonicPoly {
        let mut acc = Poly::one(&self.0.field);
        for _ in 0..e {
            acc = &acc * &self.0;
        }
        MonicPoly(acc)
    }

    pub fn mul(&self, rhs: &MonicPoly) -> MonicPoly {
        MonicPoly(&self.0 * &rhs.0)
    }

    /// Exact quotient by a monic divisor.
    pub fn div_exact(&self, divisor: &MonicPoly) -> Result<MonicPoly> {
        Ok(MonicPoly(self.0.div_exact(&divisor.0)?))
    }
}

impl std::ops::Deref for MonicPoly {
    type Target = Poly;

    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl std::fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Greatest common monic divisor; an error only when both inputs are zero.
pub fn gcd(a: &Poly, b: &Poly) -> Result<MonicPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::domain("gcd(0, 0) is undefined"));
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic_normalize()?.1)
}

/// gcd of a nonempty list of monic polynomials.
pub fn gcd_many(items: &[MonicPoly]) -> Result<MonicPoly> {
    let (first, rest) = items
        .split_first()
        .ok_or_else(|| Error::domain("gcd of an empty list"))?;
    let mut acc = first.clone();
    for item in rest {
        acc = gcd(acc.as_poly(), item.as_poly())?;
    }
    Ok(acc)
}

/// Number of monic polynomials of degree exactly d.
pub fn monic_count(field: &Arc<FieldSpec>, d: u32) -> u64 {
    field.q().pow(d)
}

/// The monic polynomial of degree d whose coefficient vector is the
/// base-q expansion of `idx` (coefficient of T^j is digit j). Successive
/// indices walk degree-d monics in the canonical lexicographic order.
pub fn monic_from_index(field: &Arc<FieldSpec>, d: u32, idx: u64) -> MonicPoly {
    let q = field.q();
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    let mut rest = idx;
    for _ in 0..d {
        coeffs.push(field.element_from_index(rest % q).expect("digit < q"));
        rest /= q;
    }
    debug_assert_eq!(rest, 0, "index out of range");
    coeffs.push(field.one());
    MonicPoly(Poly::from_coeffs(field, coeffs))
}

/// All monic polynomials of degree exactly d, in lexicographic order.
pub fn monic_of_degree(field: &Arc<FieldSpec>, d: u32) -> impl Iterator<Item = MonicPoly> {
    let field = Arc::clone(field);
    (0..monic_count(&field, d)).map(move |i| monic_from_index(&field, d, i))
}

/// All monic polynomials of degree ≤ d, in (degree, lexicographic) order.
pub fn monic_up_to(field: &Arc<FieldSpec>, d: u32) -> impl Iterator<Item = MonicPoly> {
    let field = Arc::clone(field);
    (0..=d).flat_map(move |deg| monic_of_degree(&field, deg))
}

/// All q^{deg H} residues mod H (every polynomial of degree < deg H),
/// in index order starting from 0.
pub fn residues_mod(h: &MonicPoly) -> impl Iterator<Item = Poly> {
    let field = Arc::clone(h.field());
    let m = h.deg() as u32;
    let q = field.q();
    let count = q.pow(m);
    (0..count).map(move |idx| {
        let mut coeffs = Vec::with_capacity(m as usize);
        let mut rest = idx;
        for _ in 0..m {
            coeffs.push(field.element_from_index(rest % q).expect("digit < q"));
            rest /= q;
        }
        Poly::from_coeffs(&field, coeffs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::new(2, 1).unwrap()
    }

    fn f3() -> Arc<FieldSpec> {
        FieldSpec::new(3, 1).unwrap()
    }

    fn p(field: &Arc<FieldSpec>, s: &str) -> Poly {
        parse_poly(s, field).unwrap()
    }

    fn m(field: &Arc<FieldSpec>, s: &str) -> MonicPoly {
        MonicPoly::try_new(p(field, s)).unwrap()
    }

    #[test]
    fn mul_and_divmod() {
        let f = f2();
        let t = p(&f, "T");
        let t1 = p(&f, "T+1");
        assert_eq!(&t * &t1, p(&f, "T^2+T"));

        let (q, r) = p(&f, "T^2+T").div_rem(&t).unwrap();
        assert_eq!(q, p(&f, "T+1"));
        assert!(r.is_zero());

        // T(T+1) = T^2+T ≡ T mod T^2
        let rem = (&t * &t1).rem(&p(&f, "T^2")).unwrap();
        assert_eq!(rem, t);
    }

    #[test]
    fn div_rem_invariant() {
        let f = f3();
        let a = p(&f, "2*T^3+T+1");
        let b = p(&f, "T^2+2");
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn division_by_zero_poly() {
        let f = f2();
        assert!(matches!(
            p(&f, "T").div_rem(&Poly::zero(&f)),
            Err(Error::DivisionByZero(_))
        ));
    }

    #[test]
    fn monic_normalization() {
        let f = f3();
        let (unit, monic) = p(&f, "2*T+1").monic_normalize().unwrap();
        assert_eq!(unit, f.scalar(2));
        assert_eq!(monic.as_poly(), &p(&f, "T+2"));

        let (unit, monic) = p(&f2(), "T^2+1").monic_normalize().unwrap();
        assert!(unit.is_one());
        assert_eq!(monic.to_string(), "T^2+1");

        let (unit, monic) = p(&f, "2").monic_normalize().unwrap();
        assert_eq!(unit, f.scalar(2));
        assert!(monic.is_one());

        assert!(Poly::zero(&f).monic_normalize().is_err());
    }

    #[test]
    fn gcd_examples() {
        let f = f2();
        let g = gcd(&p(&f, "T^2+T"), &p(&f, "T^2+1")).unwrap();
        assert_eq!(g.to_string(), "T+1");

        let g = gcd(&p(&f, "T"), &p(&f, "T^2")).unwrap();
        assert_eq!(g.to_string(), "T");

        assert!(gcd(&Poly::zero(&f), &Poly::zero(&f)).is_err());
        // gcd with one zero argument is the other, normalized
        let g = gcd(&Poly::zero(&f), &p(&f, "T^2")).unwrap();
        assert_eq!(g.to_string(), "T^2");
    }

    #[test]
    fn lcm_examples() {
        let f = f2();
        let l = lcm(&[m(&f, "T"), m(&f, "T+1")]).unwrap();
        assert_eq!(l.to_string(), "T^2+T");

        let l = lcm(&[m(&f, "T^2"), m(&f, "T")]).unwrap();
        assert_eq!(l.to_string(), "T^2");
    }

    #[test]
    fn gcd_lcm_norm_identity() {
        let f = f2();
        let polys: Vec<MonicPoly> = monic_up_to(&f, 4).filter(|x| x.deg() >= 1).collect();
        for a in &polys {
            for b in &polys {
                let g = gcd(a.as_poly(), b.as_poly()).unwrap();
                let l = lcm(&[a.clone(), b.clone()]).unwrap();
                assert!(g.as_poly().divides(a.as_poly()));
                assert!(g.as_poly().divides(b.as_poly()));
                assert_eq!(
                    g.norm_int() * l.norm_int(),
                    a.norm_int() * b.norm_int(),
                    "norm identity failed for {a}, {b}"
                );
            }
        }
    }

    #[test]
    fn enumeration_order() {
        let f = f2();
        let deg1: Vec<String> = monic_of_degree(&f, 1).map(|x| x.to_string()).collect();
        assert_eq!(deg1, ["T", "T+1"]);

        let deg2: Vec<String> = monic_of_degree(&f, 2).map(|x| x.to_string()).collect();
        assert_eq!(deg2, ["T^2", "T^2+1", "T^2+T", "T^2+T+1"]);

        let f3 = f3();
        assert_eq!(monic_of_degree(&f3, 3).count(), 27);
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let f = f3();
        let all: Vec<MonicPoly> = monic_up_to(&f, 3).collect();
        assert_eq!(all.len(), (1 + 3 + 9 + 27) as usize);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn residues_example() {
        let f = f2();
        let h = m(&f, "T^2");
        let rs: Vec<String> = residues_mod(&h).map(|r| r.to_string()).collect();
        assert_eq!(rs, ["0", "1", "T", "T+1"]);
    }

    #[test]
    fn norm_examples() {
        let f = f2();
        assert_eq!(p(&f, "T").norm().unwrap(), BigInt::from(2));
        assert_eq!(p(&f, "T^2+T+1").norm().unwrap(), BigInt::from(4));
        assert_eq!(p(&f3(), "T").norm().unwrap(), BigInt::from(3));
        assert!(Poly::zero(&f).norm().is_err());
    }
}
