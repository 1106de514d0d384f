//! Coefficient fields in which fixed-point matrices are evaluated: exact
//! rational functions, rationals at a random point, or residues modulo
//! `2^61 - 1` at a random point.

use std::sync::Arc;

use klr_poly::{BigRational, EvalPoint, Fp, MultiPoly, PolyError, RatFunc, Scalar, VarTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A ring map from rational functions to a scalar type. Fails with
/// [`PolyError::Pole`] when a denominator vanishes.
pub trait Specialization: Send + Sync {
    type S: Scalar;
    fn ratfunc(&self, f: &RatFunc) -> Result<Self::S, PolyError>;
    fn poly(&self, f: &MultiPoly) -> Result<Self::S, PolyError>;
    fn one(&self) -> Self::S;
}

/// No specialization: entries stay in the fraction field.
#[derive(Debug, Clone)]
pub struct Exact {
    vars: Arc<VarTable>,
}

impl Exact {
    pub fn new(vars: &Arc<VarTable>) -> Self {
        Exact { vars: vars.clone() }
    }
}

impl Specialization for Exact {
    type S = RatFunc;
    fn ratfunc(&self, f: &RatFunc) -> Result<RatFunc, PolyError> {
        Ok(f.clone())
    }
    fn poly(&self, f: &MultiPoly) -> Result<RatFunc, PolyError> {
        Ok(RatFunc::from_poly(f.clone()))
    }
    fn one(&self) -> RatFunc {
        RatFunc::one(&self.vars)
    }
}

/// Evaluation at a rational point.
#[derive(Debug, Clone)]
pub struct RationalPoint(pub EvalPoint);

impl Specialization for RationalPoint {
    type S = BigRational;
    fn ratfunc(&self, f: &RatFunc) -> Result<BigRational, PolyError> {
        f.evaluate(&self.0)
    }
    fn poly(&self, f: &MultiPoly) -> Result<BigRational, PolyError> {
        Ok(f.evaluate(&self.0))
    }
    fn one(&self) -> BigRational {
        BigRational::from_integer(1.into())
    }
}

/// Evaluation modulo the prime `2^61 - 1`.
#[derive(Debug, Clone)]
pub struct FpPoint {
    pub values: Vec<Fp>,
}

impl FpPoint {
    /// Uniform random values for every variable.
    pub fn random(vars: &VarTable, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        FpPoint {
            values: (0..vars.len()).map(|_| Fp::random(&mut rng)).collect(),
        }
    }

    /// Random position variables, with the hbar variables pinned to
    /// `hbar_values`.
    pub fn random_with_hbar(vars: &VarTable, seed: u64, hbar_values: &[Fp]) -> Self {
        let mut p = Self::random(vars, seed);
        let m = vars.x_count();
        p.values[m..].copy_from_slice(hbar_values);
        p
    }
}

impl Specialization for FpPoint {
    type S = Fp;
    fn ratfunc(&self, f: &RatFunc) -> Result<Fp, PolyError> {
        f.evaluate_mod(&self.values)
    }
    fn poly(&self, f: &MultiPoly) -> Result<Fp, PolyError> {
        f.evaluate_mod(&self.values).ok_or(PolyError::Pole)
    }
    fn one(&self) -> Fp {
        Fp::ONE
    }
}

/// How an identity of matrices is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "backend", rename_all = "lowercase")]
pub enum Backend {
    /// Exact equality of rational functions.
    Exact,
    /// Equality at `points` random rational points; false positives are
    /// possible with probability bounded by the Schwartz-Zippel lemma.
    Randomized { points: usize, seed: u64 },
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Randomized { .. } => "randomized",
        }
    }
}

/// Probability that a nonzero polynomial of total degree at most `degree`
/// vanishes at `points` independent points drawn uniformly from
/// `[-window, window]^n`.
pub fn schwartz_zippel_bound(degree: u64, window: i64, points: usize) -> f64 {
    let p = degree as f64 / (2.0 * window as f64 + 1.0);
    p.min(1.0).powi(points as i32)
}
