//! The coefficient field F_q = F_{p^n}.
//!
//! Elements are residues in F_p[x]/(modulus) stored as coefficient
//! vectors of length n, every entry reduced mod p. For n = 1 the modulus
//! is absent and elements are single residues mod p. The module also
//! provides the trace map down to F_p and the complex additive character
//! a ↦ exp(2πi·tr(a)/p) that underlies the character-sum path of the
//! Ramanujan sums.
//!
//! Everything is immutable after construction; `FieldSpec` is shared via
//! `Arc` and all operations are pure.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the characteristic; keeps every enumeration desk-scale.
pub const DEFAULT_MAX_PRIME: u64 = 13;
/// Default cap on the extension degree.
pub const DEFAULT_MAX_EXTENSION: u32 = 3;

/// A finite field F_{p^n}, with the reduction modulus for n > 1.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    /// Monic irreducible over F_p, lowest coefficient first, length n+1.
    /// `None` exactly when n == 1.
    modulus: Option<Vec<u64>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.n.hash(state);
    }
}

impl FieldSpec {
    /// Construct F_{p^n} under the default size caps.
    pub fn new(p: u64, n: u32) -> Result<Arc<FieldSpec>> {
        Self::with_caps(p, n, DEFAULT_MAX_PRIME, DEFAULT_MAX_EXTENSION)
    }

    /// Construct F_{p^n} with explicit caps on p and n.
    ///
    /// The modulus for n > 1 is the lexicographically smallest monic
    /// irreducible of degree n over F_p, coefficients compared lowest
    /// first, so construction is deterministic.
    pub fn with_caps(p: u64, n: u32, max_p: u64, max_n: u32) -> Result<Arc<FieldSpec>> {
        if n < 1 {
            return Err(Error::domain(format!("extension degree must be >= 1, got {n}")));
        }
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if p > max_p {
            return Err(Error::domain(format!(
                "characteristic {p} exceeds the cap {max_p}"
            )));
        }
        if n > max_n {
            return Err(Error::domain(format!(
                "extension degree {n} exceeds the cap {max_n}"
            )));
        }
        let q = p
            .checked_pow(n)
            .ok_or_else(|| Error::domain(format!("p^n overflows for p={p}, n={n}")))?;
        let modulus = if n > 1 {
            Some(smallest_irreducible(p, n))
        } else {
            None
        };
        Ok(Arc::new(FieldSpec { p, n, q, modulus }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Reduction modulus for n > 1, lowest coefficient first.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Canonical text form of the modulus, e.g. `x^2+x+1`.
    pub fn modulus_string(&self) -> Option<String> {
        self.modulus.as_ref().map(|m| format_x_poly(m))
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: Arc::clone(self),
            coeffs: vec![0; self.n as usize],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.element_from_index(1).expect("1 < q")
    }

    /// The generator x of the extension; an error for prime fields.
    pub fn generator(self: &Arc<Self>) -> Result<FieldElement> {
        if self.n == 1 {
            return Err(Error::domain("prime field has no extension generator"));
        }
        self.element_from_index(self.p)
    }

    /// Element from a base-p scalar residue.
    pub fn scalar(self: &Arc<Self>, value: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n as usize];
        coeffs[0] = value % self.p;
        FieldElement {
            field: Arc::clone(self),
            coeffs,
        }
    }

    /// The element whose coefficient vector is the base-p expansion of
    /// `idx` (coefficient of x^i is digit i). Indices enumerate the field
    /// in a fixed total order used everywhere a canonical ordering of
    /// F_q is needed.
    pub fn element_from_index(self: &Arc<Self>, idx: u64) -> Result<FieldElement> {
        if idx >= self.q {
            return Err(Error::domain(format!(
                "element index {idx} out of range for field of order {}",
                self.q
            )));
        }
        let mut coeffs = vec![0; self.n as usize];
        let mut rest = idx;
        for c in coeffs.iter_mut() {
            *c = rest % self.p;
            rest /= self.p;
        }
        Ok(FieldElement {
            field: Arc::clone(self),
            coeffs,
        })
    }

    /// All q elements in index order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> {
        let field = Arc::clone(self);
        (0..self.q).map(move |i| field.element_from_index(i).expect("index < q"))
    }
}

/// An element of F_q as a residue polynomial in the generator x.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Arc<FieldSpec>,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Coefficients over F_p, lowest power of x first; length n.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Position of this element in the canonical enumeration of F_q.
    pub fn index(&self) -> u64 {
        let p = self.field.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.same_field(other),
            "field mismatch: F_{} vs F_{}",
            self.field.q,
            other.field.q
        );
    }

    /// Checked addition; a domain error on mismatched fields.
    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked(other).map(|_| self + other)
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked(other).map(|_| self - other)
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked(other).map(|_| self * other)
    }

    fn checked(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "elements of different fields: F_{} and F_{}",
                self.field.q, other.field.q
            )))
        }
    }

    /// Multiplicative inverse; division-by-zero error for 0.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of 0 in F_q".into()));
        }
        Ok(self.pow(self.field.q - 2))
    }

    /// Nonnegative integer power; 0^0 = 1.
    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Frobenius endomorphism a ↦ a^p.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.p)
    }

    /// Trace down to F_p: a + a^p + ... + a^{p^{n-1}}, returned as the
    /// residue in [0, p). The result always lands in the prime subfield.
    pub fn trace(&self) -> u64 {
        let mut total = self.clone();
        let mut power = self.clone();
        for _ in 1..self.field.n {
            power = power.frobenius();
            total = &total + &power;
        }
        assert!(
            total.is_scalar(),
            "trace of {self} escaped the prime subfield"
        );
        total.coeffs[0]
    }

    /// The additive character value exp(2πi·tr(a)/p).
    pub fn additive_char(&self) -> Complex64 {
        let angle = std::f64::consts::TAU * (self.trace() as f64) / (self.field.p as f64);
        Complex64::from_polar(1.0, angle)
    }

    /// True when the representation is a single x-power with coefficient
    /// 1 (including x itself); such elements print without parentheses.
    pub(crate) fn is_unit_monomial(&self) -> bool {
        let nonzero: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != 0)
            .collect();
        nonzero.len() == 1 && nonzero[0] >= 1 && self.coeffs[nonzero[0]] == 1
    }

    /// True when every x-term prints as a standalone term (unit powers of
    /// x plus an optional constant), so the element can appear unbracketed
    /// as a constant term of a T-polynomial.
    pub(crate) fn is_bare_sum_safe(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0 || c == 1)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.n == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{}", format_x_poly(&self.coeffs))
        }
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.p;
        let n = self.field.n as usize;
        if n == 1 {
            return FieldElement {
                field: Arc::clone(&self.field),
                coeffs: vec![(self.coeffs[0] * rhs.coeffs[0]) % p],
            };
        }
        let modulus = self.field.modulus.as_ref().expect("n > 1 has modulus");
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        // x^n ≡ -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        for i in (n..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..n {
                let sub = (modulus[j] * c) % p;
                prod[i - n + j] = (prod[i - n + j] + p * p - sub) % p;
            }
        }
        prod.truncate(n);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: prod,
        }
    }
}

/// Render coefficients over F_p as a polynomial in x, descending powers,
/// zero terms omitted, unit coefficients omitted; "0" for zero.
fn format_x_poly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, _) => format!("{c}*x"),
            (_, 1) => format!("x^{i}"),
            (_, _) => format!("{c}*x^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---- polynomials over F_p used only for modulus construction ----

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of a by monic b over F_p.
fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*b.last().unwrap(), 1);
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    while r.len() >= b.len() {
        let lead = *r.last().unwrap();
        let shift = r.len() - b.len();
        if lead != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let sub = (bj * lead) % p;
                r[shift + j] = (r[shift + j] + p * p - sub) % p;
            }
        }
        r.pop();
        fp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        // all monic divisor candidates of degree d
        let count = p.pow(d as u32);
        for v in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut rest = v;
            for _ in 0..d {
                cand.push(rest % p);
                rest /= p;
            }
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree n over F_p,
/// comparing coefficient vectors lowest coefficient first.
fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let total = p.pow(n as u32);
    for v in 0..total {
        let mut coeffs = vec![0u64; n + 1];
        let mut rest = v;
        // c_0 is the most significant digit so tuples come out in
        // lexicographic order (c_0, c_1, ..., c_{n-1}).
        for i in (0..n).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[n] = 1;
        if fp_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of every degree exists over F_p")
}
