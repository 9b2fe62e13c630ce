//! Arithmetic functions of one and several variables on monic
//! polynomials, with Dirichlet and unitary convolution and the
//! multi-variable Möbius transform.
//!
//! Values are carried as [`FnValue`]: exact big integers whenever the
//! function is integer-valued, `f64` otherwise. Mixing an exact value
//! with a real one demotes the result to real, so precision loss is
//! always explicit in the type.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{
    divisor_complement_mobius, divisor_pairs, factor, MonicPoly,
};

/// An arithmetic-function value: exact integer or double-precision real.
#[derive(Clone, Debug, PartialEq)]
pub enum FnValue {
    Exact(BigInt),
    Real(f64),
}

impl FnValue {
    pub fn zero() -> FnValue {
        FnValue::Exact(BigInt::zero())
    }

    pub fn one() -> FnValue {
        FnValue::Exact(BigInt::one())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, FnValue::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            FnValue::Exact(v) => v.to_f64().unwrap_or(f64::NAN),
            FnValue::Real(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigInt> {
        match self {
            FnValue::Exact(v) => Some(v),
            FnValue::Real(_) => None,
        }
    }
}

impl From<i64> for FnValue {
    fn from(v: i64) -> FnValue {
        FnValue::Exact(BigInt::from(v))
    }
}

impl From<BigInt> for FnValue {
    fn from(v: BigInt) -> FnValue {
        FnValue::Exact(v)
    }
}

impl From<f64> for FnValue {
    fn from(v: f64) -> FnValue {
        FnValue::Real(v)
    }
}

impl std::ops::Add for FnValue {
    type Output = FnValue;

    fn add(self, rhs: FnValue) -> FnValue {
        match (self, rhs) {
            (FnValue::Exact(a), FnValue::Exact(b)) => FnValue::Exact(a + b),
            (a, b) => FnValue::Real(a.to_f64() + b.to_f64()),
        }
    }
}

impl std::ops::Mul for FnValue {
    type Output = FnValue;

    fn mul(self, rhs: FnValue) -> FnValue {
        match (self, rhs) {
            (FnValue::Exact(a), FnValue::Exact(b)) => FnValue::Exact(a * b),
            (a, b) => FnValue::Real(a.to_f64() * b.to_f64()),
        }
    }
}

impl std::ops::Neg for FnValue {
    type Output = FnValue;

    fn neg(self) -> FnValue {
        match self {
            FnValue::Exact(a) => FnValue::Exact(-a),
            FnValue::Real(x) => FnValue::Real(-x),
        }
    }
}

impl fmt::Display for FnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnValue::Exact(v) => write!(f, "{v}"),
            FnValue::Real(x) => write!(f, "{x}"),
        }
    }
}

type EvalFn = Arc<dyn Fn(&[MonicPoly]) -> FnValue + Send + Sync>;

/// An arithmetic function of k variables on monic polynomials, evaluated
/// through a shared closure. The multiplicativity flag is a claim by the
/// constructor, consumed by the Euler-product coefficient route.
#[derive(Clone)]
pub struct ArithFnK {
    arity: usize,
    multiplicative: bool,
    eval: EvalFn,
}

impl ArithFnK {
    pub fn new<F>(arity: usize, multiplicative: bool, eval: F) -> ArithFnK
    where
        F: Fn(&[MonicPoly]) -> FnValue + Send + Sync + 'static,
    {
        assert!(arity >= 1, "arity must be at least 1");
        ArithFnK {
            arity,
            multiplicative,
            eval: Arc::new(eval),
        }
    }

    /// A one-variable function from a closure on a single polynomial.
    pub fn single<F>(multiplicative: bool, eval: F) -> ArithFnK
    where
        F: Fn(&MonicPoly) -> FnValue + Send + Sync + 'static,
    {
        ArithFnK::new(1, multiplicative, move |args| eval(&args[0]))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn eval(&self, args: &[MonicPoly]) -> FnValue {
        assert_eq!(args.len(), self.arity, "arity mismatch");
        (self.eval)(args)
    }

    /// The constant 1 function of k variables.
    pub fn constant_one(k: usize) -> ArithFnK {
        ArithFnK::new(k, true, |_| FnValue::one())
    }

    /// δ_k, the unity of the k-variable Dirichlet convolution: 1 at
    /// (1, ..., 1) and 0 elsewhere.
    pub fn delta(k: usize) -> ArithFnK {
        ArithFnK::new(k, true, |args| {
            if args.iter().all(|g| g.is_one()) {
                FnValue::one()
            } else {
                FnValue::zero()
            }
        })
    }

    /// μ_k(G_1,...,G_k) = μ(G_1)···μ(G_k), the convolution inverse of 1.
    pub fn mobius_k(k: usize) -> ArithFnK {
        ArithFnK::new(k, true, |args| {
            let mut acc = 1i64;
            for g in args {
                let m = mobius(g);
                if m == 0 {
                    return FnValue::zero();
                }
                acc *= m;
            }
            FnValue::from(acc)
        })
    }

    /// f(G_1,...,G_k) = g((G_1,...,G_k)) for a one-variable g.
    pub fn compose_gcd(g: &ArithFnK, k: usize) -> ArithFnK {
        assert_eq!(g.arity(), 1, "compose_gcd needs a one-variable function");
        let g = g.clone();
        ArithFnK::new(k, g.is_multiplicative(), move |args| {
            let d = crate::poly::gcd_many(args).expect("nonempty tuple of monics");
            g.eval(std::slice::from_ref(&d))
        })
    }
}

impl fmt::Debug for ArithFnK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithFnK")
            .field("arity", &self.arity)
            .field("multiplicative", &self.multiplicative)
            .finish_non_exhaustive()
    }
}

/// μ(G): 0 unless G is squarefree, else (−1)^{#prime factors}.
pub fn mobius(g: &MonicPoly) -> i64 {
    let fact = factor(g.as_poly()).expect("monic polynomials are nonzero");
    if !fact.is_squarefree() {
        0
    } else if fact.omega().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// μ*(G) = (−1)^{ω(G)}, the unitary analogue of μ.
pub fn mobius_star(g: &MonicPoly) -> i64 {
    if counts(g).omega.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Prime-factor counts and the Liouville sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    /// Distinct monic irreducible divisors.
    pub omega: u32,
    /// Prime divisors with multiplicity.
    pub big_omega: u32,
    /// λ(G) = (−1)^Ω(G).
    pub liouville: i64,
}

pub fn counts(g: &MonicPoly) -> Counts {
    let fact = factor(g.as_poly()).expect("monic polynomials are nonzero");
    let big_omega = fact.big_omega();
    Counts {
        omega: fact.omega(),
        big_omega,
        liouville: if big_omega.is_multiple_of(2) { 1 } else { -1 },
    }
}

pub fn liouville(g: &MonicPoly) -> i64 {
    counts(g).liouville
}

/// Interpret s as a nonnegative integer exponent when it is one.
fn integer_exponent(s: f64) -> Option<u32> {
    if s >= 0.0 && s.fract() == 0.0 && s <= u32::MAX as f64 {
        Some(s as u32)
    } else {
        None
    }
}

/// |D|^s as f64, exact whenever s is a small integer.
fn norm_pow_f64(d: &MonicPoly, s: f64) -> f64 {
    let base = d.field().q() as f64;
    let exp = d.deg() as f64 * s;
    if exp.fract() == 0.0 && exp.abs() < i32::MAX as f64 {
        base.powi(exp as i32)
    } else {
        base.powf(exp)
    }
}

/// σ_s(G) = Σ_{D|G} |D|^s; exact for nonnegative integer s, σ_0 = τ.
pub fn sigma_s(g: &MonicPoly, s: f64) -> FnValue {
    match integer_exponent(s) {
        Some(t) => {
            let mut acc = BigInt::zero();
            for d in g.divisors() {
                acc += d.norm_int().pow(t);
            }
            FnValue::Exact(acc)
        }
        None => {
            let acc: f64 = g.divisors().iter().map(|d| norm_pow_f64(d, s)).sum();
            FnValue::Real(acc)
        }
    }
}

/// τ(G), the number of monic divisors.
pub fn tau(g: &MonicPoly) -> FnValue {
    sigma_s(g, 0.0)
}

/// The Jordan totient φ_s(G) = Σ_{D|G} μ(G/D)|D|^s = |G|^s ∏_{P|G}(1 − |P|^{−s}).
///
/// Both routes are evaluated and compared on every call: exactly for
/// nonnegative integer s, within 1e-9 relative otherwise. φ_1 counts the
/// units mod G.
pub fn phi_s(g: &MonicPoly, s: f64) -> FnValue {
    let fact = factor(g.as_poly()).expect("monic polynomials are nonzero");
    match integer_exponent(s) {
        Some(t) => {
            // product of |P|^{et} − |P|^{(e−1)t} over prime powers
            let mut prod = BigInt::one();
            for (p, e) in fact.factors() {
                let n = p.norm_int();
                prod *= n.clone().pow(e * t) - n.pow((e - 1) * t);
            }
            let mut sum = BigInt::zero();
            for (d, mu) in divisor_complement_mobius(g) {
                sum += BigInt::from(mu) * d.norm_int().pow(t);
            }
            assert_eq!(prod, sum, "totient routes disagree at {g}, s={s}");
            FnValue::Exact(prod)
        }
        None => {
            let mut prod = norm_pow_f64(g, s);
            for (p, _) in fact.factors() {
                prod *= 1.0 - norm_pow_f64(p, -s);
            }
            let sum: f64 = divisor_complement_mobius(g)
                .into_iter()
                .map(|(d, mu)| mu as f64 * norm_pow_f64(&d, s))
                .sum();
            let scale = prod.abs().max(sum.abs()).max(1.0);
            assert!(
                (prod - sum).abs() <= 1e-9 * scale,
                "totient routes disagree at {g}, s={s}: {prod} vs {sum}"
            );
            FnValue::Real(prod)
        }
    }
}

/// ψ_s(G) = |G|^s ∏_{P|G}(1 + |P|^{−s}); ψ_s(1) = 1.
pub fn psi_s(g: &MonicPoly, s: f64) -> FnValue {
    let fact = factor(g.as_poly()).expect("monic polynomials are nonzero");
    match integer_exponent(s) {
        Some(t) => {
            let mut prod = BigInt::one();
            for (p, e) in fact.factors() {
                let n = p.norm_int();
                prod *= n.clone().pow(e * t) + n.pow((e - 1) * t);
            }
            FnValue::Exact(prod)
        }
        None => {
            let mut prod = norm_pow_f64(g, s);
            for (p, _) in fact.factors() {
                prod *= 1.0 + norm_pow_f64(p, -s);
            }
            FnValue::Real(prod)
        }
    }
}

/// β_s(G) = Σ_{D|G} |D|^s λ(G/D).
pub fn beta_s(g: &MonicPoly, s: f64) -> FnValue {
    match integer_exponent(s) {
        Some(t) => {
            let mut acc = BigInt::zero();
            for (d, c) in divisor_pairs(g) {
                acc += BigInt::from(liouville(&c)) * d.norm_int().pow(t);
            }
            FnValue::Exact(acc)
        }
        None => {
            let acc: f64 = divisor_pairs(g)
                .into_iter()
                .map(|(d, c)| liouville(&c) as f64 * norm_pow_f64(&d, s))
                .sum();
            FnValue::Real(acc)
        }
    }
}

/// The four basic unitary-divisor functions, all multiplicative with
/// prime-power values μ*(P^e) = −1, τ*(P^e) = 2, σ*(P^e) = |P|^e + 1,
/// φ*(P^e) = |P|^e − 1; the value at G = 1 is (1, 1, 1, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryBasics {
    pub mu_star: i64,
    pub tau_star: BigInt,
    pub sigma_star: BigInt,
    pub phi_star: BigInt,
}

pub fn unitary_basics(g: &MonicPoly) -> UnitaryBasics {
    let fact = factor(g.as_poly()).expect("monic polynomials are nonzero");
    let omega = fact.omega();
    let mut sigma_star = BigInt::one();
    let mut phi_star = BigInt::one();
    for (p, e) in fact.factors() {
        let n = p.norm_int().pow(*e);
        sigma_star *= n.clone() + 1;
        phi_star *= n - 1;
    }
    UnitaryBasics {
        mu_star: if omega.is_multiple_of(2) { 1 } else { -1 },
        tau_star: BigInt::one() << omega,
        sigma_star,
        phi_star,
    }
}

/// (f ∗ g)(G) = Σ_{D|G} f(D) g(G/D), restricted to unitary divisors
/// D || G when the flag is set.
pub fn dirichlet_convolve(
    f: &ArithFnK,
    g: &ArithFnK,
    point: &MonicPoly,
    unitary: bool,
) -> Result<FnValue> {
    if f.arity() != 1 || g.arity() != 1 {
        return Err(Error::domain(
            "dirichlet_convolve requires one-variable functions",
        ));
    }
    let mut acc = FnValue::zero();
    for (d, c) in divisor_pairs(point) {
        if unitary && !crate::poly::gcd(d.as_poly(), c.as_poly())?.is_one() {
            continue;
        }
        acc = acc
            + f.eval(std::slice::from_ref(&d)) * g.eval(std::slice::from_ref(&c));
    }
    Ok(acc)
}

/// The k-variable Dirichlet convolution
/// (f ∗ g)(G_1,...,G_k) = Σ_{D_i|G_i} f(D_1,...,D_k) g(G_1/D_1,...,G_k/D_k).
pub fn multivar_convolve(f: &ArithFnK, g: &ArithFnK, args: &[MonicPoly]) -> Result<FnValue> {
    let k = args.len();
    if f.arity() != k || g.arity() != k {
        return Err(Error::domain(format!(
            "convolution arity mismatch: point has {k} coordinates, functions take {} and {}",
            f.arity(),
            g.arity()
        )));
    }
    let lists: Vec<Vec<(MonicPoly, MonicPoly)>> = args.iter().map(divisor_pairs).collect();
    let mut acc = FnValue::zero();
    let mut idx = vec![0usize; k];
    loop {
        let mut ds = Vec::with_capacity(k);
        let mut cs = Vec::with_capacity(k);
        for (i, &j) in idx.iter().enumerate() {
            let (d, c) = &lists[i][j];
            ds.push(d.clone());
            cs.push(c.clone());
        }
        acc = acc + f.eval(&ds) * g.eval(&cs);
        let mut i = 0;
        loop {
            if i == k {
                return Ok(acc);
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// (μ_k ∗ f)(G_1,...,G_k) = Σ_{D_i|G_i} μ(G_1/D_1)···μ(G_k/D_k) f(D_1,...,D_k).
///
/// Only the 2^{ω(G_1)+...+ω(G_k)} terms with a squarefree complement are
/// visited. Convolving the result back with the constant 1 function of k
/// variables recovers f.
pub fn multivar_mobius_transform(f: &ArithFnK, args: &[MonicPoly]) -> Result<FnValue> {
    let k = args.len();
    if f.arity() != k {
        return Err(Error::domain(format!(
            "transform arity mismatch: point has {k} coordinates, function takes {}",
            f.arity()
        )));
    }
    let lists: Vec<Vec<(MonicPoly, i64)>> =
        args.iter().map(divisor_complement_mobius).collect();
    let mut acc = FnValue::zero();
    let mut idx = vec![0usize; k];
    loop {
        let mut ds = Vec::with_capacity(k);
        let mut sign = 1i64;
        for (i, &j) in idx.iter().enumerate() {
            let (d, mu) = &lists[i][j];
            ds.push(d.clone());
            sign *= mu;
        }
        acc = acc + f.eval(&ds) * FnValue::from(sign);
        let mut i = 0;
        loop {
            if i == k {
                return Ok(acc);
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::{monic_up_to, parse_poly, residues_mod, unitary_gcd_star};

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::new(2, 1).unwrap()
    }

    fn m(field: &Arc<FieldSpec>, s: &str) -> MonicPoly {
        MonicPoly::try_new(parse_poly(s, field).unwrap()).unwrap()
    }

    fn exact(v: i64) -> FnValue {
        FnValue::from(v)
    }

    #[test]
    fn mobius_examples() {
        let f = f2();
        assert_eq!(mobius(&m(&f, "T^2+T+1")), -1);
        assert_eq!(mobius(&m(&f, "T^2+1")), 0); // (T+1)^2
        assert_eq!(mobius(&m(&f, "T^2+T")), 1);
    }

    #[test]
    fn counts_examples() {
        let f = f2();
        assert_eq!(
            counts(&m(&f, "T^2+T")),
            Counts { omega: 2, big_omega: 2, liouville: 1 }
        );
        assert_eq!(
            counts(&m(&f, "T^2")),
            Counts { omega: 1, big_omega: 2, liouville: 1 }
        );
        assert_eq!(
            counts(&MonicPoly::one(&f)),
            Counts { omega: 0, big_omega: 0, liouville: 1 }
        );
    }

    #[test]
    fn sigma_examples() {
        let f = f2();
        assert_eq!(sigma_s(&m(&f, "T^2"), 1.0), exact(7));
        assert_eq!(sigma_s(&m(&f, "T^2"), 0.0), exact(3));
        assert_eq!(sigma_s(&m(&f, "T^2+T"), 1.0), exact(9));
        assert_eq!(tau(&m(&f, "T^2")), exact(3));
    }

    #[test]
    fn phi_examples() {
        let f = f2();
        assert_eq!(phi_s(&m(&f, "T^2"), 1.0), exact(2));
        assert_eq!(phi_s(&m(&f, "T"), 2.0), exact(3));
        assert_eq!(phi_s(&MonicPoly::one(&f), 1.0), exact(1));
    }

    #[test]
    fn phi_1_counts_coprime_residues() {
        let f = f2();
        for g in monic_up_to(&f, 4) {
            if g.deg() == 0 {
                continue;
            }
            let by_formula = phi_s(&g, 1.0);
            let by_count = residues_mod(&g)
                .filter(|r| {
                    !r.is_zero() && crate::poly::gcd(r, g.as_poly()).unwrap().is_one()
                })
                .count();
            assert_eq!(by_formula, exact(by_count as i64), "φ mismatch at {g}");
        }
    }

    #[test]
    fn psi_examples() {
        let f = f2();
        assert_eq!(psi_s(&m(&f, "T^2"), 1.0), exact(6));
        assert_eq!(psi_s(&m(&f, "T"), 1.0), exact(3));
        assert_eq!(psi_s(&MonicPoly::one(&f), 1.0), exact(1));
    }

    #[test]
    fn beta_examples() {
        let f = f2();
        assert_eq!(beta_s(&m(&f, "T"), 1.0), exact(1));
        assert_eq!(beta_s(&m(&f, "T^2"), 0.0), exact(1));
        assert_eq!(beta_s(&MonicPoly::one(&f), 1.0), exact(1));
    }

    #[test]
    fn unitary_basics_examples() {
        let f = f2();
        let u = unitary_basics(&m(&f, "T^2"));
        assert_eq!(
            (u.mu_star, u.tau_star, u.sigma_star, u.phi_star),
            (-1, BigInt::from(2), BigInt::from(5), BigInt::from(3))
        );
        let u = unitary_basics(&m(&f, "T^2+T"));
        assert_eq!(
            (u.mu_star, u.tau_star, u.sigma_star, u.phi_star),
            (1, BigInt::from(4), BigInt::from(9), BigInt::from(1))
        );
        let u = unitary_basics(&MonicPoly::one(&f));
        assert_eq!(
            (u.mu_star, u.tau_star, u.sigma_star, u.phi_star),
            (1, BigInt::from(1), BigInt::from(1), BigInt::from(1))
        );
    }

    #[test]
    fn phi_star_matches_residue_count() {
        let f = f2();
        for g in monic_up_to(&f, 4) {
            if g.deg() == 0 {
                continue;
            }
            if factor(g.as_poly()).unwrap().omega() != 1 {
                continue; // prime powers only
            }
            let by_count = residues_mod(&g)
                .filter(|r| unitary_gcd_star(r, &g).is_one())
                .count();
            assert_eq!(
                unitary_basics(&g).phi_star,
                BigInt::from(by_count),
                "φ* mismatch at {g}"
            );
        }
    }

    #[test]
    fn convolution_examples() {
        let f = f2();
        let mob = ArithFnK::single(true, |g| FnValue::from(mobius(g)));
        let one = ArithFnK::constant_one(1);
        // μ ∗ 1 = δ
        assert_eq!(
            dirichlet_convolve(&mob, &one, &m(&f, "T^2"), false).unwrap(),
            exact(0)
        );
        let sig = ArithFnK::single(true, |g| sigma_s(g, 1.0));
        assert_eq!(
            dirichlet_convolve(&mob, &sig, &m(&f, "T"), false).unwrap(),
            exact(2)
        );
        // unitary: μ* × 1 vanishes away from 1
        let mob_star = ArithFnK::single(true, |g| FnValue::from(mobius_star(g)));
        assert_eq!(
            dirichlet_convolve(&mob_star, &one, &m(&f, "T^2"), true).unwrap(),
            exact(0)
        );
    }

    #[test]
    fn mobius_sums_vanish_off_one() {
        let f = f2();
        let one = ArithFnK::constant_one(1);
        let mob = ArithFnK::single(true, |g| FnValue::from(mobius(g)));
        let mob_star = ArithFnK::single(true, |g| FnValue::from(mobius_star(g)));
        for g in monic_up_to(&f, 5) {
            let expected = if g.is_one() { 1 } else { 0 };
            assert_eq!(
                dirichlet_convolve(&mob, &one, &g, false).unwrap(),
                exact(expected)
            );
            assert_eq!(
                dirichlet_convolve(&mob_star, &one, &g, true).unwrap(),
                exact(expected)
            );
        }
    }

    #[test]
    fn multivar_transform_examples() {
        let f = f2();
        let tau_gcd = ArithFnK::compose_gcd(&ArithFnK::single(true, tau), 2);
        let t = m(&f, "T");
        assert_eq!(
            multivar_mobius_transform(&tau_gcd, &[t.clone(), t.clone()]).unwrap(),
            exact(1)
        );

        let one2 = ArithFnK::constant_one(2);
        assert_eq!(
            multivar_mobius_transform(&one2, &[t.clone(), MonicPoly::one(&f)]).unwrap(),
            exact(0)
        );

        let delta2 = ArithFnK::delta(2);
        assert_eq!(
            multivar_mobius_transform(&delta2, &[MonicPoly::one(&f), MonicPoly::one(&f)])
                .unwrap(),
            exact(1)
        );
    }

    #[test]
    fn transform_inverts_summation() {
        // (μ_k ∗ f) ∗ 1_k = f for a deterministic pseudo-random f
        let f = f2();
        let table = ArithFnK::new(2, false, |args: &[MonicPoly]| {
            let h: i64 = args
                .iter()
                .flat_map(|g| g.coeffs())
                .map(|c| c.index() as i64)
                .fold(17, |acc, v| acc.wrapping_mul(31).wrapping_add(v) % 101);
            FnValue::from(h - 50)
        });
        let polys: Vec<MonicPoly> = monic_up_to(&f, 3).collect();
        for a in &polys {
            for b in &polys {
                let args = [a.clone(), b.clone()];
                let mut back = FnValue::zero();
                for (da, _) in divisor_pairs(a) {
                    for (db, _) in divisor_pairs(b) {
                        back = back
                            + multivar_mobius_transform(&table, &[da.clone(), db.clone()])
                                .unwrap();
                    }
                }
                assert_eq!(back, table.eval(&args), "inversion failed at ({a}, {b})");
            }
        }
    }

    #[test]
    fn multiplicativity_on_coprime_pairs() {
        let f = f2();
        let polys: Vec<MonicPoly> = monic_up_to(&f, 4).filter(|p| p.deg() >= 1).collect();
        for a in &polys {
            for b in &polys {
                if !crate::poly::gcd(a.as_poly(), b.as_poly()).unwrap().is_one() {
                    continue;
                }
                let ab = a.mul(b);
                for s in [0.0, 1.0, 2.0, 3.0] {
                    assert_eq!(
                        sigma_s(&ab, s),
                        sigma_s(a, s) * sigma_s(b, s),
                        "σ_{s} at {a},{b}"
                    );
                    assert_eq!(phi_s(&ab, s), phi_s(a, s) * phi_s(b, s));
                    assert_eq!(psi_s(&ab, s), psi_s(a, s) * psi_s(b, s));
                    assert_eq!(beta_s(&ab, s), beta_s(a, s) * beta_s(b, s));
                }
                // real exponent within 1e-9 relative
                let s = 1.5;
                let lhs = sigma_s(&ab, s).to_f64();
                let rhs = sigma_s(a, s).to_f64() * sigma_s(b, s).to_f64();
                assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));

                let ua = unitary_basics(a);
                let ub = unitary_basics(b);
                let uab = unitary_basics(&ab);
                assert_eq!(uab.mu_star, ua.mu_star * ub.mu_star);
                assert_eq!(uab.tau_star, ua.tau_star * ub.tau_star);
                assert_eq!(uab.sigma_star, ua.sigma_star * ub.sigma_star);
                assert_eq!(uab.phi_star, ua.phi_star * ub.phi_star);
            }
        }
    }

    #[test]
    fn unit_invariance_via_normalization() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        for g in monic_up_to(&f3, 3) {
            if g.deg() == 0 {
                continue;
            }
            for u in 1..3 {
                let unit = f3.element_from_index(u).unwrap();
                let scaled = g.as_poly().mul_scalar(&unit);
                let (_, renorm) = scaled.monic_normalize().unwrap();
                assert_eq!(renorm, g);
                assert_eq!(sigma_s(&renorm, 1.0), sigma_s(&g, 1.0));
                assert_eq!(mobius(&renorm), mobius(&g));
            }
        }
    }

    #[test]
    fn mixed_values_demote_to_real() {
        let v = FnValue::from(2) * FnValue::Real(0.5);
        assert_eq!(v, FnValue::Real(1.0));
        assert!(!v.is_exact());
    }
}
