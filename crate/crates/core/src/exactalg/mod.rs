//! Exact commutative algebra over the rationals.

pub mod expr;
mod groebner;
pub mod ideal;
pub mod macaulay;
pub mod monomial;
pub mod poly;
pub mod ring;

pub use expr::{parse_poly, Expr, ExprError};
pub use ideal::{q, Ideal, VDim};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;
pub use ring::Ring;

/// Rational numbers with arbitrary precision.
pub type Q = num_rational::BigRational;
