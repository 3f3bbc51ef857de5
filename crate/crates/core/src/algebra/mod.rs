//! Exact sparse polynomials, monomial orders and exterior-algebra indices.

mod exterior;
mod linear;
mod monomial;
mod parse;
pub(crate) mod poly;
mod ring;

pub use exterior::{basis, basis_position, binomial, contract, ExteriorIndex};
pub use linear::{monomials_of_degree, rank};
pub use monomial::{Monomial, MAX_VARS};
pub use parse::{format_rational, ParseError};
pub use poly::Polynomial;
pub use ring::{RingContext, TermOrder};

/// Coefficient field.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
