//! Exact arithmetic for graded multivariate polynomials and rational
//! functions over arbitrary-precision rationals.
//!
//! Variables come in two families: the "position" variables `x1..xm`, on
//! which the symmetric group acts, and the equivariant parameters
//! `hbar[a]`, one per quiver edge, which are never permuted. Every variable
//! has degree 2.

mod error;
mod eval;
mod gcd;
mod monomial;
mod parse;
mod poly;
mod ratfunc;
mod scalar;
mod vars;

pub use error::PolyError;
pub use eval::{EvalPoint, Fp, DEFAULT_WINDOW};
pub use gcd::gcd;
pub use monomial::Monomial;
pub use poly::MultiPoly;
pub use ratfunc::RatFunc;
pub use scalar::Scalar;
pub use vars::VarTable;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub type Result<T, E = PolyError> = std::result::Result<T, E>;
