//! Exact arithmetic: rationals, exp-polynomials, their quotients, the
//! expression parser and symbolic matrices.

mod exppoly;
mod matrix;
mod parse;
mod ratexpr;
mod symbol;

pub use exppoly::{ExpPoly, Key};
pub use matrix::{char_poly, char_poly_sym, exp_rate, mat_exp_ad, nilpotent_series, rational_roots, SymMatrix};
pub use parse::{canonicalize, linear_coefficients, parse_expr, parse_linear_combination, parse_poly, parse_rat, Expr};
pub use ratexpr::RatExpr;
pub use symbol::Symbol;


pub type Rational = num_rational::BigRational;

/// The rational number `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
