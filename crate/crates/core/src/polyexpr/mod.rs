//! Exact rational polynomials and the expression language used to enter them.

mod parser;
mod polynomial;
pub mod rational;

pub use parser::{
    lower_to_polynomial, parse_expression, parse_polynomial, Expr, ExprError, MAX_DEGREE,
};
pub use polynomial::{Degree, Polynomial};
pub use rational::Rational;
