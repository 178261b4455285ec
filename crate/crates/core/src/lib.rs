//! Exact witness search for mean value theorems on polynomials.
//!
//! Functions are univariate polynomials with rational coefficients, so every
//! hypothesis check is decidable and every rational witness is found
//! exactly. Irrational witnesses are returned as certified brackets.

pub mod calculus;
pub mod polyexpr;
pub mod rootfind;
pub mod theorems;

pub use polyexpr::{parse_polynomial, Polynomial, Rational};
