//! The fixed-point localization model of `R(alpha)`.

mod backend;
mod euler;
mod matrix;
mod model;

pub use backend::{schwartz_zippel_bound, Backend, Exact, FpPoint, RationalPoint, Specialization};
pub use euler::{EulerClasses, FiberWeight, LambdaMode};
pub use matrix::SparseMatrix;
pub use model::{
    Certificate, CrossCheckReport, Evaluator, FixedPointModel, LocalizedVector, Mismatch,
};
