//! Exact arithmetic: sparse multivariate Laurent polynomials over the
//! rationals and normalized rational functions in them.

mod gcd;
mod heu;
mod monomial;
mod parse;
mod poly;
mod ratfunc;
mod subst;
mod vars;

use thiserror::Error;

pub use gcd::{gcd, lcm};
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_ratfunc};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use subst::{Substitution, VarImage};
pub use vars::{Block, Central, VarId, VarTable};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("invalid variable table: {0}")]
    InvalidTable(String),
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("no value supplied for {0}")]
    MissingValue(String),
    #[error("denominator factor {factor} vanishes")]
    DenominatorVanishes { factor: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("parameter {0} is not part of the variable table")]
    MissingCentral(&'static str),
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("{0} is not free of the denominator variable")]
    NotPolynomialIn(String),
}
