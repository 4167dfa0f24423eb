//! Exact arithmetic: rationals, dense homogeneous polynomials and linear algebra.

pub mod matrix;
pub mod poly;
pub mod rational;
mod restrict;

pub use matrix::{coordinates, rank_of, QMatrix, RowSpace, Rref};
pub use poly::{monomial_count, monomial_exponents, monomial_index, Exps, HomPoly};
pub use rational::{format_rational, parse_rational, rat, ratio, NumRepr, Rational};
pub use restrict::{substitute_line, Parametrization};
