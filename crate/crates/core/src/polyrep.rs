//! The faithful polynomial representation
//! `Pol(alpha) = sum_nu H[x_1(nu), ..., x_m(nu)]`, where `H` is the
//! polynomial ring in the edge parameters `hbar_a`.

use std::collections::BTreeMap;
use std::sync::Arc;

use klr_poly::{BigInt, BigRational, Monomial, MultiPoly, VarTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::perm::swap_colors;
use crate::presentation::{Element, Generator, GeneratorWord, RelationInstance};
use crate::{ColorSequence, CoreError, Quiver, Result, RootVector};

/// An element of `Pol(alpha)`: one polynomial per color sequence, absent
/// components are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PolVector {
    vars: Arc<VarTable>,
    comps: BTreeMap<ColorSequence, MultiPoly>,
}

impl PolVector {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        PolVector {
            vars: vars.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn single(nu: ColorSequence, f: MultiPoly) -> Self {
        let mut v = Self::zero(f.vars());
        v.add_to(nu, f);
        v
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn component(&self, nu: &[usize]) -> Option<&MultiPoly> {
        self.comps.get(nu)
    }

    pub fn components(&self) -> impl Iterator<Item = (&ColorSequence, &MultiPoly)> {
        self.comps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    fn add_to(&mut self, nu: ColorSequence, f: MultiPoly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.comps.remove(&nu) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.comps.insert(nu, sum);
        }
    }

    pub fn add(&self, other: &PolVector) -> PolVector {
        let mut out = self.clone();
        for (nu, f) in &other.comps {
            out.add_to(nu.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolVector) -> PolVector {
        let mut out = self.clone();
        for (nu, f) in &other.comps {
            out.add_to(nu.clone(), -f);
        }
        out
    }

    /// Multiply every component by `f`.
    pub fn times(&self, f: &MultiPoly) -> PolVector {
        let mut out = PolVector::zero(&self.vars);
        for (nu, g) in &self.comps {
            out.add_to(nu.clone(), g * f);
        }
        out
    }

    /// Common degree of all components, if homogeneous.
    pub fn degree(&self) -> Option<Option<i64>> {
        let mut deg = None;
        for f in self.comps.values() {
            let d = f.degree()?;
            match deg {
                None => deg = Some(d),
                Some(p) if p != d => return None,
                _ => {}
            }
        }
        Some(deg)
    }
}

/// `Pol(alpha)` together with the generator actions.
#[derive(Debug, Clone)]
pub struct PolynomialRep {
    quiver: Quiver,
    alpha: RootVector,
    vars: Arc<VarTable>,
}

impl PolynomialRep {
    pub fn new(quiver: &Quiver, alpha: &RootVector) -> Self {
        PolynomialRep {
            quiver: quiver.clone(),
            alpha: alpha.clone(),
            vars: Arc::new(VarTable::new(alpha.height(), quiver.edge_ids())),
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.alpha.height()
    }

    /// `prod_{a: i -> j} (x_t - x_{t+1} + hbar_a)`.
    fn edge_product(&self, i: usize, j: usize, t: usize) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        let diff = &MultiPoly::x(&self.vars, t) - &MultiPoly::x(&self.vars, t + 1);
        for e in self.quiver.edges_between(i, j) {
            let h = MultiPoly::hbar(&self.vars, &e.id).expect("edge in alphabet");
            acc = &acc * &(&diff + &h);
        }
        acc
    }

    pub fn act_generator(&self, g: &Generator, v: &PolVector) -> Result<PolVector> {
        if v.vars != self.vars && !v.is_zero() {
            return Err(CoreError::Poly(klr_poly::PolyError::VarTableMismatch));
        }
        let nu = g.right_color();
        self.alpha.check(nu)?;
        let Some(f) = v.component(nu) else {
            return Ok(PolVector::zero(&self.vars));
        };
        let out = match g {
            Generator::Idem(nu) => PolVector::single(nu.clone(), f.clone()),
            Generator::X { k, nu } => {
                PolVector::single(nu.clone(), &MultiPoly::x(&self.vars, *k) * f)
            }
            Generator::Tau { t, nu } => {
                let (a, b) = (nu[t - 1], nu[*t]);
                if a != b {
                    let pre = self.edge_product(a, b, *t);
                    PolVector::single(swap_colors(nu, *t), &pre * &f.swap_adjacent(*t))
                } else {
                    let pre = self.edge_product(a, a, *t);
                    PolVector::single(nu.clone(), &pre * &f.demazure(*t)?)
                }
            }
        };
        Ok(out)
    }

    /// Apply a word right to left. The empty word acts as the identity.
    pub fn act_word(&self, word: &GeneratorWord, v: &PolVector) -> Result<PolVector> {
        match word {
            GeneratorWord::Zero => Ok(PolVector::zero(&self.vars)),
            GeneratorWord::Word(factors) => {
                let mut cur = v.clone();
                for g in factors.iter().rev() {
                    cur = self.act_generator(g, &cur)?;
                    if cur.is_zero() {
                        break;
                    }
                }
                Ok(cur)
            }
        }
    }

    pub fn act_element(&self, e: &Element, v: &PolVector) -> Result<PolVector> {
        let mut out = PolVector::zero(&self.vars);
        for (c, w) in e.terms() {
            out = out.add(&self.act_word(w, v)?.times(c));
        }
        Ok(out)
    }

    /// All monomials in `x_1..x_m` of graded degree at most `max_degree`.
    pub fn x_monomials(&self, max_degree: u32) -> Vec<MultiPoly> {
        let m = self.height();
        let n = self.vars.len();
        let mut out = Vec::new();
        let mut exps = vec![0u16; n];
        fn rec(
            k: usize,
            m: usize,
            left: u32,
            exps: &mut Vec<u16>,
            vars: &Arc<VarTable>,
            out: &mut Vec<MultiPoly>,
        ) {
            if k == m {
                out.push(MultiPoly::monomial(
                    vars,
                    Monomial::from_exponents(exps.clone()),
                    BigRational::from_integer(BigInt::from(1)),
                ));
                return;
            }
            for e in 0..=left {
                exps[k] = e as u16;
                rec(k + 1, m, left - e, exps, vars, out);
            }
            exps[k] = 0;
        }
        rec(0, m, max_degree / 2, &mut exps, &self.vars, &mut out);
        out
    }

    /// A random polynomial in all variables, total exponent at most
    /// `max_exp`, integer coefficients in `[-9, 9]`.
    pub fn random_poly(&self, rng: &mut ChaCha8Rng, max_exp: u32, terms: usize) -> MultiPoly {
        let n = self.vars.len();
        let mut out = MultiPoly::zero(&self.vars);
        for _ in 0..terms {
            let mut exps = vec![0u16; n];
            let total = rng.gen_range(0..=max_exp);
            for _ in 0..total {
                exps[rng.gen_range(0..n)] += 1;
            }
            let c: i64 = rng.gen_range(-9..=9);
            out = &out
                + &MultiPoly::monomial(
                    &self.vars,
                    Monomial::from_exponents(exps),
                    BigRational::from_integer(BigInt::from(c)),
                );
        }
        out
    }

    /// Apply both sides of a relation to every monomial vector of degree at
    /// most `max_degree` (placed in the right color of each side) and to
    /// `trials` random vectors; reports the first disagreement.
    pub fn verify_relation(
        &self,
        inst: &RelationInstance,
        trials: usize,
        max_degree: u32,
        seed: u64,
    ) -> Result<RepCheck> {
        let seqs = self.alpha.sequences(usize::MAX)?;
        // Inputs go in the right colors of the two sides; when both sides
        // are empty every color is used so the check is never vacuous.
        let mut colors: Vec<&ColorSequence> = seqs
            .iter()
            .filter(|nu| {
                inst.lhs
                    .terms()
                    .iter()
                    .chain(inst.rhs.terms())
                    .any(|(_, w)| w.right_color().is_none_or(|c| c == nu.as_slice()))
            })
            .collect();
        if inst.params.sum || colors.is_empty() {
            colors = seqs.iter().collect();
        }
        let mut inputs = Vec::new();
        for nu in &colors {
            for mono in self.x_monomials(max_degree) {
                inputs.push(PolVector::single((*nu).clone(), mono));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let mut v = PolVector::zero(&self.vars);
            for nu in &colors {
                v = v.add(&PolVector::single((*nu).clone(), self.random_poly(&mut rng, 6, 6)));
            }
            inputs.push(v);
        }
        let monomials = inputs.len() - trials;
        let failure = inputs
            .par_iter()
            .map(|v| -> Result<Option<String>> {
                let l = self.act_element(&inst.lhs, v)?;
                let r = self.act_element(&inst.rhs, v)?;
                Ok((l != r).then(|| describe(v, &l, &r)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        Ok(RepCheck {
            monomials,
            random: trials,
            counterexample: failure,
        })
    }
}

fn describe(v: &PolVector, l: &PolVector, r: &PolVector) -> String {
    let show = |p: &PolVector| {
        let parts: Vec<String> = p
            .components()
            .map(|(nu, f)| format!("{nu:?}: {f}"))
            .collect();
        format!("{{{}}}", parts.join(", "))
    };
    format!("input {} gives {} vs {}", show(v), show(l), show(r))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepCheck {
    pub monomials: usize,
    pub random: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl RepCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}
