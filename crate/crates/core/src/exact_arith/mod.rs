//! Exact arithmetic: rationals, cyclotomic fields Q(ζ_N), a complex
//! embedding for numeric cross-checks, and small exact linear algebra.

mod cyclotomic;
mod embed;
pub mod linalg;
mod modinv;
mod poly;
mod radical;

pub use cyclotomic::{zeta, CyclotomicNumber};
pub use embed::{embed, ComplexApprox};
pub use poly::{cyclotomic_polynomial, totient};
pub use radical::{radical_string, recognize, RadicalForm};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

pub(crate) use cyclotomic::parse_rational;

/// Parse `a` or `a/b` into a [`Rational`].
pub fn rational(s: &str) -> Option<Rational> {
    parse_rational(s.trim())
}

/// Shorthand for the rational `n/d`. Panics if `d` is zero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
