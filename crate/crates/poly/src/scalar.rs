use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::Zero;

use crate::{Fp, RatFunc};

/// The operations matrix code needs from its entries. Implemented for exact
/// rational functions, for rational numbers (entries evaluated at a point)
/// and for residues modulo a prime.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Scalar for RatFunc {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl Scalar for BigRational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl Scalar for Fp {
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn sub(&self, other: &Self) -> Self {
        *self - *other
    }
}
