use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::eval::{EvalPoint, Fp};
use crate::{gcd, MultiPoly, PolyError, Result, VarTable};

/// A reduced fraction `num / den` with `gcd(num, den) = 1` and `den` monic
/// (leading coefficient 1 in graded-lex order). Zero is `0 / 1`. With this
/// normal form, equal rational functions have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        RatFunc {
            num: MultiPoly::zero(vars),
            den: MultiPoly::one(vars),
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn constant(vars: &Arc<VarTable>, c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if !num.same_vars(&den) {
            return Err(PolyError::VarTableMismatch);
        }
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero(num.vars());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_divide(&g).expect("gcd divides numerator"),
                    den.exact_divide(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coefficient().expect("nonzero").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Graded degree `deg num - deg den` when both parts are homogeneous.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? - self.den.degree()?)
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.den == other.den {
            return Ok(Self::normalized(self.num.checked_add(&other.num)?, self.den.clone()));
        }
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        Ok(Self::normalized(num, self.den.checked_mul(&other.den)?))
    }

    pub fn checked_sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.is_zero() || other.is_zero() {
            if !self.num.same_vars(&other.num) {
                return Err(PolyError::VarTableMismatch);
            }
            return Ok(Self::zero(self.vars()));
        }
        if self.is_polynomial() && other.is_polynomial() {
            return Ok(Self::from_poly(self.num.checked_mul(&other.num)?));
        }
        Ok(Self::normalized(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        ))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Apply the same permutation of the position variables to numerator
    /// and denominator.
    pub fn permute(&self, w: &[usize]) -> RatFunc {
        Self::normalized(self.num.permute(w), self.den.permute(w))
    }

    pub fn evaluate(&self, point: &EvalPoint) -> Result<BigRational> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return Err(PolyError::Pole);
        }
        Ok(self.num.evaluate(point) / d)
    }

    pub fn evaluate_mod(&self, values: &[Fp]) -> Result<Fp> {
        let d = self.den.evaluate_mod(values).ok_or(PolyError::Pole)?;
        let inv = d.inv().ok_or(PolyError::Pole)?;
        let n = self.num.evaluate_mod(values).ok_or(PolyError::Pole)?;
        Ok(n * inv)
    }

    pub fn rename_x(&self, target: &Arc<VarTable>, images: &[usize]) -> Result<RatFunc> {
        Ok(Self::normalized(
            self.num.rename_x(target, images)?,
            self.den.rename_x(target, images)?,
        ))
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs).expect(concat!("rational function ", stringify!($method)))
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Arc<VarTable> {
        Arc::new(VarTable::new(2, vec!["a".into()]))
    }

    fn r(v: &Arc<VarTable>, num: &str, den: &str) -> RatFunc {
        RatFunc::new(MultiPoly::parse(v, num).unwrap(), MultiPoly::parse(v, den).unwrap())
            .unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        let v = vars();
        let f = r(&v, "x1^2 - x2^2", "2*x1 - 2*x2");
        assert!(f.is_polynomial());
        assert_eq!(f, r(&v, "1/2*x1 + 1/2*x2", "1"));
    }

    #[test]
    fn inverse_and_sum() {
        let v = vars();
        let f = r(&v, "x1 - x2 + hbar[a]", "x1 - x2");
        assert!((&f * &f.inv().unwrap()).is_one());
        assert!((&f + &(-&f)).is_zero());
        let sum = &r(&v, "1", "x1") + &r(&v, "1", "x2");
        assert_eq!(sum, r(&v, "x1 + x2", "x1*x2"));
    }

    #[test]
    fn denominator_is_monic() {
        let v = vars();
        let f = r(&v, "1", "-3*x1 + x2");
        assert!(f.denominator().leading_coefficient().unwrap().is_one());
        assert_eq!(f.degree(), Some(-2));
    }

    #[test]
    fn pole_detected() {
        let v = vars();
        let f = r(&v, "1", "x1 - x2");
        let pt = EvalPoint::from_integers(&[4, 4, 1]);
        assert_eq!(f.evaluate(&pt), Err(PolyError::Pole));
        assert!(RatFunc::new(MultiPoly::one(&v), MultiPoly::zero(&v)).is_err());
    }
}
