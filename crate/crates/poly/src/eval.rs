use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Half-width of the default integer sampling window: values are drawn
/// uniformly from `[-2^31, 2^31]`.
pub const DEFAULT_WINDOW: i64 = 1 << 31;

/// A rational point, one value per variable of a [`crate::VarTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoint {
    values: Vec<BigRational>,
    seed: Option<u64>,
}

impl EvalPoint {
    pub fn from_values(values: Vec<BigRational>) -> Self {
        EvalPoint { values, seed: None }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::from_values(
            values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// Integers drawn uniformly from `[-window, window]`, reproducible from
    /// `seed`.
    pub fn random(nvars: usize, seed: u64, window: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..nvars)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-window..=window))))
            .collect();
        EvalPoint {
            values,
            seed: Some(seed),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, var: usize) -> &BigRational {
        &self.values[var]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// The point with its first `perm.len()` coordinates reordered so that
    /// evaluating `f` here equals evaluating `permute(f, perm)` at `self`.
    pub fn pulled_back(&self, perm: &[usize]) -> EvalPoint {
        let mut values = self.values.clone();
        for (k, &wk) in perm.iter().enumerate() {
            values[k] = self.values[wk].clone();
        }
        EvalPoint {
            values,
            seed: self.seed,
        }
    }

    pub fn to_fp(&self) -> Option<Vec<Fp>> {
        self.values.iter().map(Fp::from_rational).collect()
    }
}

/// Integers modulo the Mersenne prime `2^61 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn new(v: u64) -> Self {
        Fp(v % Self::MODULUS)
    }

    pub fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(Self::MODULUS as i64);
        Fp(r as u64)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(Self::MODULUS);
        let mut r = v % &m;
        if r.is_negative() {
            r += &m;
        }
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }

    /// `None` when the denominator vanishes modulo the prime.
    pub fn from_rational(v: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(v.denom());
        if d.is_zero() {
            return None;
        }
        Some(Self::from_bigint(v.numer()) * d.inv()?)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(Self::MODULUS - 2))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..Self::MODULUS))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp({})", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(self.0 + Self::MODULUS - rhs.0)
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::ZERO - self
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let prod = self.0 as u128 * rhs.0 as u128;
        let lo = (prod as u64) & Self::MODULUS;
        let hi = (prod >> 61) as u64;
        let s = lo + hi;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
}
