//! Quiver Hecke (KLR) algebras of quivers with loops: the presentation by
//! generators and relations, the polynomial representation, and the
//! fixed-point localization model in which algebra elements are matrices
//! over a field of rational functions.

pub mod corpus;
pub mod cyclotomic;
mod error;
pub mod fixed_point;
pub mod graded;
pub mod linalg;
pub mod perm;
pub mod polyrep;
pub mod presentation;
pub mod quiver;
pub mod roots;

pub use error::{CoreError, Result};
pub use perm::Perm;
pub use quiver::{BorcherdsCartanDatum, Edge, Fault, Quiver};
pub use roots::{ColorSequence, RootVector, DEFAULT_HEIGHT_CAP};
