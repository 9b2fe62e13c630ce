//! Exact arithmetic over the polynomial ring A = F_q[T].
//!
//! The crate implements, at desk scale:
//!
//! - the coefficient field F_q = F_{p^n} with its trace map and the
//!   complex additive character ([`field`]);
//! - exact polynomial arithmetic, factorization, divisor and
//!   unitary-divisor lattices over A ([`poly`]);
//! - the classical arithmetic functions on monic polynomials (Möbius,
//!   Liouville, σ_s, Jordan φ_s, ψ_s, β_s, their unitary analogues) with
//!   Dirichlet and unitary convolution and the multi-variable Möbius
//!   transform ([`arith`]);
//! - polynomial Ramanujan sums η(G,H) and unitary sums η*(G,H), each
//!   computable by an exact divisor sum and, independently, by a complex
//!   character sum, together with their sum identities and bounds
//!   ([`ramanujan`]);
//! - the zeta function ζ_A, truncated Ramanujan-expansion coefficients
//!   (general sum, Euler product, closed form) and expansion/identity
//!   verification ([`expansion`]).
//!
//! Everything integer-valued is computed in exact big-integer arithmetic;
//! character sums and expansion coefficients live in `f64`/`Complex64`
//! with explicit tolerances.
//!
//! The heavy enumerations (coefficient sums, expansion partial sums) run
//! data-parallel under the default `parallel` feature and have sequential
//! fallbacks; both produce bit-identical results because terms are always
//! reduced in a fixed enumeration order.
//!
//! # Example
//!
//! ```
//! use etaq_core::expansion::{verify_identity, Family, TruncationBound};
//! use etaq_core::field::FieldSpec;
//! use etaq_core::poly::{parse_poly, MonicPoly};
//! use etaq_core::ramanujan::{eta, EtaMethod};
//! use etaq_core::DEFAULT_BUDGET;
//!
//! let f2 = FieldSpec::new(2, 1)?;
//! let t = MonicPoly::try_new(parse_poly("T", &f2)?)?;
//! let t2 = MonicPoly::try_new(parse_poly("T^2", &f2)?)?;
//!
//! // η(T, T^2) over F_2, by both routes
//! let v = eta(t.as_poly(), &t2, EtaMethod::Both);
//! assert_eq!(v.exact, (-2).into());
//! assert!(v.agreement.unwrap() < 1e-10);
//!
//! // σ(T)/|T| equals its truncated expansion exactly from degree 2 on
//! let report = verify_identity(
//!     Family::Sigma, 1.0, 1, std::slice::from_ref(&t),
//!     TruncationBound::new(2), false, Some(1e-12), DEFAULT_BUDGET,
//! )?;
//! assert_eq!(report.lhs, 1.5);
//! assert!(report.pass);
//! # Ok::<(), etaq_core::Error>(())
//! ```

pub mod arith;
pub mod error;
mod exec;
pub mod expansion;
pub mod field;
pub mod poly;
pub mod ramanujan;
pub mod selftest;

pub use arith::{ArithFnK, Counts, FnValue, UnitaryBasics};
pub use error::{Error, Result};
pub use expansion::{Family, IdentityReport, TruncationBound, DEFAULT_BUDGET};
pub use field::{FieldElement, FieldSpec};
pub use poly::{Factorization, MonicPoly, Poly};
pub use ramanujan::{EtaMethod, EtaValue};
