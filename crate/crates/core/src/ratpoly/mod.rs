//! Exact sparse multivariate polynomials over the rationals and the ring
//! localized at `s = x_1 + ... + x_m`.

mod monomial;
mod poly;
mod slocal;

pub use monomial::{variable_name, MultiIndex};
pub(crate) use poly::write_term_magnitude;
pub use poly::Polynomial;
pub use slocal::SLocalPoly;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
