//! Exact integer, rational and polynomial arithmetic.

pub mod arith;
pub mod factor;
pub mod matrix;
pub mod poly;

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

pub use factor::{factor_mod_p, factor_over_q, is_irreducible_over_q, FpPoly};
pub use matrix::{lattice_kernel, smith_normal_form, IntMatrix, Lattice, QuotientStructure};
pub use poly::{IntPoly, Poly, QPoly, Scalar};
