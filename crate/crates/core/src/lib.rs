//! Modulus pairs over affine charts, their products and cycles, with every
//! algebraic claim checked by exact Groebner-basis computations over the
//! rationals.

pub mod affine;
pub mod cycles;
pub mod exactalg;
pub mod modpair;
pub mod msch;
pub mod products;

pub use exactalg::{Expr, Ideal, Monomial, MonomialOrder, Poly, Ring, VDim, Q};
