//! Exact multivariate polynomial and rational-function arithmetic over the
//! rationals.

mod gcd;
mod parse;
mod poly;
mod rational;
mod vars;

pub use gcd::gcd;
pub use parse::{parse_expr, parse_polynomial, parse_rational};
pub use poly::{Monomial, Polynomial};
pub use rational::RationalFunction;
pub use vars::{VarSet, Variable};

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("{msg} at column {pos}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at column {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("pole: denominator vanishes")]
    Pole,
    #[error("operands live over different variable sets")]
    VarSetMismatch,
    #[error("expression is not a polynomial")]
    NotPolynomial,
}

/// Whether `p` divides `q` exactly in the polynomial ring.
pub fn divides(p: &Polynomial, q: &Polynomial) -> Result<bool, SymError> {
    if p.is_zero() {
        return Err(SymError::DivisionByZero);
    }
    if p.vars() != q.vars() {
        return Err(SymError::VarSetMismatch);
    }
    Ok(p.divides(q))
}

/// Shorthand for an exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Shorthand for an exact integer as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
