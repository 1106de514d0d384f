use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::eval::{EvalPoint, Fp};
use crate::{Monomial, PolyError, Result, VarTable};

/// A polynomial with rational coefficients. Zero coefficients are never
/// stored; terms are kept in graded-lex order so iteration and printing are
/// deterministic.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn integer(vars: &Arc<VarTable>, c: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable with raw index `var` (see [`VarTable`]).
    pub fn var(vars: &Arc<VarTable>, var: usize) -> Self {
        assert!(var < vars.len(), "variable index {var} out of range");
        let mut p = Self::zero(vars);
        p.terms
            .insert(Monomial::var(vars.len(), var, 1), BigRational::one());
        p
    }

    /// `x_k`, 1-based.
    pub fn x(vars: &Arc<VarTable>, k: usize) -> Self {
        let idx = vars
            .x_index(k)
            .unwrap_or_else(|| panic!("x{k} outside 1..={}", vars.x_count()));
        Self::var(vars, idx)
    }

    pub fn hbar(vars: &Arc<VarTable>, id: &str) -> Result<Self> {
        let idx = vars
            .hbar_index(id)
            .ok_or_else(|| PolyError::UnknownVariable(format!("hbar[{id}]")))?;
        Ok(Self::var(vars, idx))
    }

    pub fn monomial(vars: &Arc<VarTable>, mono: Monomial, coeff: BigRational) -> Self {
        assert_eq!(mono.nvars(), vars.len());
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    pub fn from_terms(
        vars: &Arc<VarTable>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len());
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(vars: &Arc<VarTable>, text: &str) -> Result<Self> {
        crate::parse::parse_poly(vars, text)
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn same_vars(&self, other: &MultiPoly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(PolyError::VarTableMismatch)
        }
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Maximum total exponent; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Graded degree (each variable has degree 2) when homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::total_degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(2 * first as i64)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        Ok(big)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(&self.vars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// `f(x_{w(1)}, ..., x_{w(m)})` for a permutation given by its 0-based
    /// images `w[k] = w(k+1) - 1`. The hbar variables are left alone.
    pub fn permute(&self, w: &[usize]) -> MultiPoly {
        let m = self.vars.x_count();
        assert_eq!(w.len(), m, "permutation size must equal the x-count");
        let mut out = MultiPoly::zero(&self.vars);
        for (mono, c) in &self.terms {
            let mut exps = mono.exponents().to_vec();
            for k in 0..m {
                exps[w[k]] = mono.exponent(k);
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// Exchange `x_t` and `x_{t+1}` (1-based `t`).
    pub fn swap_adjacent(&self, t: usize) -> MultiPoly {
        let m = self.vars.x_count();
        assert!(t >= 1 && t < m, "s_{t} undefined for m = {m}");
        let mut w: Vec<usize> = (0..m).collect();
        w.swap(t - 1, t);
        self.permute(&w)
    }

    /// The divided difference `(s_t f - f) / (x_t - x_{t+1})`.
    pub fn demazure(&self, t: usize) -> Result<MultiPoly> {
        let diff = self.swap_adjacent(t).checked_sub(self)?;
        let root = &MultiPoly::x(&self.vars, t) - &MultiPoly::x(&self.vars, t + 1);
        diff.exact_divide(&root).map_err(|e| {
            PolyError::Invariant(format!("divided difference of {self} not polynomial: {e}"))
        })
    }

    /// Quotient `h` with `self = g * h`, or the remainder of the division
    /// algorithm as a witness that `g` does not divide.
    pub fn exact_divide(&self, g: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(g)?;
        let (lm, lc) = match g.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(PolyError::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(MultiPoly::zero(&self.vars));
        }
        if g.is_constant() {
            return Ok(self.scale(&lc.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        let mut stuck = MultiPoly::zero(&self.vars);
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c / &lc;
                for (gm, gc) in &g.terms {
                    rem.add_term(gm.mul(&qm), -(gc * &qc));
                }
                quot.add_term(qm, qc);
            } else {
                rem.terms.remove(&m);
                stuck.add_term(m, c);
            }
        }
        if stuck.is_zero() {
            Ok(quot)
        } else {
            Err(PolyError::NotDivisible {
                remainder: Box::new(stuck),
            })
        }
    }

    pub fn divides(&self, f: &MultiPoly) -> bool {
        f.exact_divide(self).is_ok()
    }

    pub fn evaluate(&self, point: &EvalPoint) -> BigRational {
        assert_eq!(point.len(), self.vars.len(), "evaluation point size");
        let mut acc = BigRational::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point.value(v).clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluation modulo the fixed prime; `None` if a coefficient
    /// denominator is divisible by it.
    pub fn evaluate_mod(&self, values: &[Fp]) -> Option<Fp> {
        assert_eq!(values.len(), self.vars.len(), "evaluation point size");
        let mut acc = Fp::ZERO;
        for (mono, c) in &self.terms {
            let mut t = Fp::from_rational(c)?;
            for (v, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    t = t * values[v].pow(e as u64);
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    /// Re-express over `target`, sending `x_k` to `x_{images[k-1]+1}` and
    /// each hbar to the hbar with the same id.
    pub fn rename_x(&self, target: &Arc<VarTable>, images: &[usize]) -> Result<MultiPoly> {
        let m = self.vars.x_count();
        assert_eq!(images.len(), m, "one image per x variable");
        let mut hmap = Vec::with_capacity(self.vars.hbar_count());
        for id in self.vars.hbar_ids() {
            hmap.push(
                target
                    .hbar_index(id)
                    .ok_or_else(|| PolyError::UnknownVariable(format!("hbar[{id}]")))?,
            );
        }
        for &i in images {
            if i >= target.x_count() {
                return Err(PolyError::UnknownVariable(format!("x{}", i + 1)));
            }
        }
        let mut out = MultiPoly::zero(target);
        for (mono, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            for (v, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let tv = if v < m { images[v] } else { hmap[v - m] };
                exps[tv] += e;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to `var`: entry `d` is the coefficient of
    /// `var^d`, a polynomial not involving `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&self.vars); deg + 1];
        for (mono, c) in &self.terms {
            let d = mono.exponent(var) as usize;
            out[d].add_term(mono.with_exponent(var, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(vars: &Arc<VarTable>, var: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = MultiPoly::zero(vars);
        for (d, p) in coeffs.iter().enumerate() {
            for (mono, c) in &p.terms {
                debug_assert_eq!(mono.exponent(var), 0);
                out.add_term(mono.with_exponent(var, d as u16), c.clone());
            }
        }
        out
    }

    /// Integer content normalisation is not needed here; this returns the
    /// lcm of coefficient denominators, useful for printing integer forms.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_vars(other) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

fn fmt_monomial(vars: &VarTable, mono: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in mono.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(v)),
            _ => parts.push(format!("{}^{}", vars.name(v), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order, e.g. `-2*x1^2*hbar[a] + x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if mono.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_monomial(&self.vars, mono))?;
            } else {
                write!(f, "{}*{}", abs, fmt_monomial(&self.vars, mono))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("polynomials over different variable tables")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
