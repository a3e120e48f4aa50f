//! Exact scalars and sparse multivariate polynomials over the rationals.
//!
//! Polynomials in `n` variables are the computable model for smooth
//! functions on a coordinate space: pointwise multiplication is the
//! (associative) Jordan product, partial derivatives give differentials, and
//! setting a set of coordinates to zero is restriction to a coordinate
//! subspace. Nothing in here ever rounds.

mod monomial;
mod parse;
mod polynomial;
mod scalar;

pub use monomial::{monomials_up_to, Monomial};
pub use parse::{parse_gaussian, parse_polynomial, parse_rational, ParseError};
pub use polynomial::{CoordinateSet, Polynomial, PolynomialDisplay};
pub use scalar::{fmt_gaussian, int, rat, GaussianRational, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
}
