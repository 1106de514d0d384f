//! `R(alpha)` acting on the localized equivariant homology of the flag
//! bundle, written in the fixed-point basis.
//!
//! Matrices are stored in the rescaled basis `eta_w = Lambda_w^{-1} zeta_w`.
//! In that basis the image of `f` placed at `nu` has the coordinate
//! `f(chi_{w(1)}, ..., chi_{w(m)})` at every `w` in `W(nu)`, so polynomial
//! inputs stay polynomial. [`FixedPointModel::to_zeta_basis`] converts back.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use klr_poly::{MultiPoly, RatFunc, VarTable, DEFAULT_WINDOW};
use rayon::prelude::*;
use serde::Serialize;

use super::backend::{schwartz_zippel_bound, Backend, Exact, RationalPoint, Specialization};
use super::euler::{EulerClasses, LambdaMode};
use super::matrix::SparseMatrix;
use crate::perm::swap_colors;
use crate::polyrep::{PolVector, PolynomialRep};
use crate::presentation::{Element, Generator, GeneratorWord};
use crate::{ColorSequence, CoreError, Perm, Quiver, Result, RootVector};

/// Resamples allowed when a random point hits a pole.
const MAX_RESAMPLES: u64 = 16;

pub struct FixedPointModel {
    quiver: Quiver,
    alpha: RootVector,
    vars: Arc<VarTable>,
    perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
    colors: Vec<ColorSequence>,
    blocks: BTreeMap<ColorSequence, Vec<usize>>,
    euler: EulerClasses,
    lambdas: Vec<OnceLock<MultiPoly>>,
    mode: LambdaMode,
    cache: Mutex<HashMap<Generator, Arc<SparseMatrix<RatFunc>>>>,
}

impl FixedPointModel {
    /// The model with the lexicographically smallest base sequence.
    pub fn new(quiver: &Quiver, alpha: &RootVector) -> Result<Self> {
        Self::with_base(quiver, alpha, &alpha.base_sequence())
    }

    /// Index the fixed points by `nu_w = (base_{w(1)}, ..., base_{w(m)})`.
    pub fn with_base(quiver: &Quiver, alpha: &RootVector, base: &[usize]) -> Result<Self> {
        alpha.check(base)?;
        let m = base.len();
        let vars = Arc::new(VarTable::new(m, quiver.edge_ids()));
        let euler = EulerClasses::new(quiver, &vars, base);
        let perms = Perm::all(m);
        let index = perms.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let colors: Vec<ColorSequence> = perms.iter().map(|w| w.pull(base)).collect();
        let mut blocks: BTreeMap<ColorSequence, Vec<usize>> = BTreeMap::new();
        for (i, nu) in colors.iter().enumerate() {
            blocks.entry(nu.clone()).or_default().push(i);
        }
        let lambdas = perms.iter().map(|_| OnceLock::new()).collect();
        Ok(FixedPointModel {
            quiver: quiver.clone(),
            alpha: alpha.clone(),
            vars,
            perms,
            index,
            colors,
            blocks,
            euler,
            lambdas,
            mode: LambdaMode::Quotient,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Choose how the `tau` entries are computed.
    pub fn with_mode(mut self, mode: LambdaMode) -> Self {
        self.mode = mode;
        self.cache = Mutex::new(HashMap::new());
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn alpha(&self) -> &RootVector {
        &self.alpha
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.x_count()
    }

    pub fn dim(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn perm(&self, i: usize) -> &Perm {
        &self.perms[i]
    }

    pub fn index_of(&self, w: &Perm) -> usize {
        self.index[w]
    }

    /// `nu_w` for the fixed point with index `i`.
    pub fn colors(&self, i: usize) -> &[usize] {
        &self.colors[i]
    }

    /// Indices of `W(nu) = {w : nu_w = nu}`.
    pub fn block(&self, nu: &[usize]) -> Result<&[usize]> {
        if nu.len() != self.height() {
            return Err(CoreError::LengthMismatch {
                expected: self.height(),
                got: nu.len(),
            });
        }
        self.blocks
            .get(nu)
            .map(Vec::as_slice)
            .ok_or(CoreError::NotInClass)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&ColorSequence, &[usize])> {
        self.blocks.iter().map(|(nu, b)| (nu, b.as_slice()))
    }

    pub fn euler(&self) -> &EulerClasses {
        &self.euler
    }

    /// `Lambda_w`, expanded on first use.
    pub fn lambda(&self, i: usize) -> &MultiPoly {
        self.lambdas[i].get_or_init(|| self.euler.lambda(&self.perms[i]))
    }

    fn build_generator(&self, g: &Generator) -> Result<SparseMatrix<RatFunc>> {
        g.check_indices()?;
        let nu = g.right_color();
        let block = self.block(nu)?;
        let mut mat = SparseMatrix::zero(self.dim());
        match g {
            Generator::Idem(_) => {
                for &w in block {
                    mat.set(w, w, RatFunc::one(&self.vars));
                }
            }
            Generator::X { k, .. } => {
                for &w in block {
                    let chi = MultiPoly::x(&self.vars, self.perms[w].image(k - 1) + 1);
                    mat.set(w, w, RatFunc::from_poly(chi));
                }
            }
            Generator::Tau { t, .. } => {
                let fixed = swap_colors(nu, *t) == nu;
                for &wi in block {
                    let w = &self.perms[wi];
                    let ws = w.mul_simple_right(*t);
                    if fixed {
                        mat.set(wi, wi, self.euler.lambda_sj(w, w, *t, self.mode)?);
                    }
                    let entry = self.euler.lambda_sj(&ws, w, *t, self.mode)?;
                    mat.set(self.index[&ws], wi, entry);
                }
            }
        }
        Ok(mat)
    }

    /// The matrix of a generator in the `eta` basis, over the fraction field.
    pub fn generator_matrix(&self, g: &Generator) -> Result<Arc<SparseMatrix<RatFunc>>> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(g) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.build_generator(g)?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(g.clone(), m.clone());
        Ok(m)
    }

    pub fn exact(&self) -> Evaluator<'_, Exact> {
        Evaluator::new(self, Exact::new(&self.vars))
    }

    pub fn word_matrix(&self, word: &GeneratorWord) -> Result<SparseMatrix<RatFunc>> {
        self.exact().word(word)
    }

    pub fn element_matrix(&self, e: &Element) -> Result<SparseMatrix<RatFunc>> {
        self.exact().element(e)
    }

    /// Conjugate an `eta`-basis matrix into the `zeta` basis:
    /// `M_zeta(u, w) = Lambda_u^{-1} M(u, w) Lambda_w`.
    pub fn to_zeta_basis(&self, m: &SparseMatrix<RatFunc>) -> Result<SparseMatrix<RatFunc>> {
        let mut out = SparseMatrix::zero(m.dim());
        for (r, c, v) in m.entries() {
            let scale = RatFunc::new(self.lambda(c).clone(), self.lambda(r).clone())?;
            out.set(r, c, v * &scale);
        }
        Ok(out)
    }

    /// `eta` coordinates of a vector of `Pol(alpha)`: `f` at `nu` goes to
    /// `w f` at every `w` in `W(nu)`.
    pub fn psi_eta(&self, v: &PolVector) -> Result<BTreeMap<usize, MultiPoly>> {
        let mut out = BTreeMap::new();
        for (nu, f) in v.components() {
            for &w in self.block(nu)? {
                out.insert(w, f.permute(self.perms[w].images()));
            }
        }
        Ok(out)
    }

    /// `zeta` coordinates: `f` at `nu` goes to
    /// `sum_{w in W(nu)} (w f) Lambda_w^{-1} zeta_w`.
    pub fn psi(&self, v: &PolVector) -> Result<LocalizedVector> {
        let mut coords = BTreeMap::new();
        for (w, f) in self.psi_eta(v)? {
            coords.insert(self.perms[w].clone(), RatFunc::new(f, self.lambda(w).clone())?);
        }
        Ok(LocalizedVector { coords })
    }

    /// A crude bound on the total degree of the numerator of any entry of
    /// `lhs - rhs` after clearing denominators.
    pub fn difference_degree_bound(&self, lhs: &Element, rhs: &Element) -> Result<u64> {
        let mut total = 0u64;
        for (c, word) in lhs.terms().iter().chain(rhs.terms()) {
            total += c.total_degree().unwrap_or(0) as u64;
            for g in word.factors() {
                let m = self.generator_matrix(g)?;
                let mut num = 0u64;
                let mut dens = HashSet::new();
                for (_, _, v) in m.entries() {
                    num = num.max(v.numerator().total_degree().unwrap_or(0) as u64);
                    if !v.denominator().is_constant() {
                        dens.insert(v.denominator().clone());
                    }
                }
                let lcm: u64 = dens
                    .iter()
                    .map(|d| d.total_degree().unwrap_or(0) as u64)
                    .sum();
                total += num + 2 * lcm;
            }
        }
        Ok(total)
    }

    /// Decide `lhs = rhs` as matrices on the localized module.
    pub fn elements_equal(&self, lhs: &Element, rhs: &Element, backend: Backend) -> Result<Certificate> {
        match backend {
            Backend::Exact => {
                let ev = self.exact();
                let (l, r) = (ev.element(lhs)?, ev.element(rhs)?);
                let mismatch = l.first_difference(&r).map(|(row, col)| Mismatch {
                    row: self.perms[row].clone(),
                    col: self.perms[col].clone(),
                    lhs: show(l.get(row, col)),
                    rhs: show(r.get(row, col)),
                    seed: None,
                });
                Ok(Certificate {
                    equal: mismatch.is_none(),
                    backend: "exact",
                    points: None,
                    seeds: Vec::new(),
                    failure_bound: None,
                    mismatch,
                })
            }
            Backend::Randomized { points, seed } => {
                let bound = self.difference_degree_bound(lhs, rhs)?;
                let mut seeds = Vec::with_capacity(points);
                let mut mismatch = None;
                for p in 0..points {
                    let (used, l, r) = self.with_random_point(seed, p, |ev| {
                        Ok((ev.element(lhs)?, ev.element(rhs)?))
                    })?;
                    seeds.push(used);
                    if let Some((row, col)) = l.first_difference(&r) {
                        mismatch = Some(Mismatch {
                            row: self.perms[row].clone(),
                            col: self.perms[col].clone(),
                            lhs: show(l.get(row, col)),
                            rhs: show(r.get(row, col)),
                            seed: Some(used),
                        });
                        break;
                    }
                }
                Ok(Certificate {
                    equal: mismatch.is_none(),
                    backend: "randomized",
                    points: Some(points),
                    failure_bound: mismatch
                        .is_none()
                        .then(|| schwartz_zippel_bound(bound, DEFAULT_WINDOW, points)),
                    seeds,
                    mismatch,
                })
            }
        }
    }

    /// Run `f` at the `p`-th random rational point derived from `seed`,
    /// resampling when an entry has a pole there. Returns the seed used.
    pub fn with_random_point<T, U>(
        &self,
        seed: u64,
        p: usize,
        f: impl Fn(&Evaluator<'_, RationalPoint>) -> Result<(T, U)>,
    ) -> Result<(u64, T, U)> {
        for attempt in 0..MAX_RESAMPLES {
            let s = point_seed(seed, p, attempt);
            let ev = Evaluator::new(
                self,
                RationalPoint(klr_poly::EvalPoint::random(self.vars.len(), s, DEFAULT_WINDOW)),
            );
            match f(&ev) {
                Ok((a, b)) => return Ok((s, a, b)),
                Err(CoreError::Poly(klr_poly::PolyError::Pole)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(CoreError::Degenerate(MAX_RESAMPLES as usize))
    }

    /// Check `psi(g v) = M(g) psi(v)` for every generator and sample.
    pub fn cross_check_theorem(
        &self,
        rep: &PolynomialRep,
        generators: &[Generator],
        samples: &[PolVector],
        backend: Backend,
    ) -> Result<CrossCheckReport> {
        let pairs: Vec<(&Generator, &PolVector)> = generators
            .iter()
            .flat_map(|g| samples.iter().map(move |v| (g, v)))
            .collect();
        let (points, seed) = match backend {
            Backend::Exact => (0, 0),
            Backend::Randomized { points, seed } => (points, seed),
        };
        let check = |g: &Generator, v: &PolVector| -> Result<Option<String>> {
            let lhs = self.psi_eta(&rep.act_generator(g, v)?)?;
            let rhs_in = self.psi_eta(v)?;
            if points == 0 {
                let m = self.generator_matrix(g)?;
                let input = rhs_in
                    .into_iter()
                    .map(|(k, f)| (k, RatFunc::from_poly(f)))
                    .collect();
                let rhs = m.apply(&input);
                let lhs: BTreeMap<usize, RatFunc> = lhs
                    .into_iter()
                    .map(|(k, f)| (k, RatFunc::from_poly(f)))
                    .collect();
                return Ok((lhs != rhs).then(|| format!("{g} on {}", show_vec(v))));
            }
            for p in 0..points {
                let (used, l, r) = self.with_random_point(seed, p, |ev| {
                    let sp = ev.specialization();
                    let mut l = BTreeMap::new();
                    for (k, f) in &lhs {
                        l.insert(*k, sp.poly(f)?);
                    }
                    l.retain(|_, x| !num_traits::Zero::is_zero(x));
                    let mut input = BTreeMap::new();
                    for (k, f) in &rhs_in {
                        input.insert(*k, sp.poly(f)?);
                    }
                    let r = ev.generator(g)?.apply(&input);
                    Ok((l, r))
                })?;
                if l != r {
                    return Ok(Some(format!("{g} on {} at seed {used}", show_vec(v))));
                }
            }
            Ok(None)
        };
        let results: Vec<Option<String>> = pairs
            .par_iter()
            .map(|(g, v)| check(g, v))
            .collect::<Result<_>>()?;
        let counterexample = results.into_iter().flatten().next();
        Ok(CrossCheckReport {
            check: "main-theorem",
            alpha: self.alpha.to_map(&self.quiver),
            backend: backend.name(),
            points: (points > 0).then_some(points),
            seed: (points > 0).then_some(seed),
            generators: generators.len(),
            samples: samples.len(),
            status: if counterexample.is_none() { "pass" } else { "fail" },
            counterexample,
        })
    }
}

fn point_seed(seed: u64, p: usize, attempt: u64) -> u64 {
    seed.wrapping_add((p as u64).wrapping_mul(0x9e37_79b9))
        .wrapping_add(attempt.wrapping_mul(0x85eb_ca6b))
}

fn show<S: std::fmt::Debug>(v: Option<&S>) -> String {
    match v {
        Some(v) => format!("{v:?}"),
        None => "0".into(),
    }
}

fn show_vec(v: &PolVector) -> String {
    let parts: Vec<String> = v
        .components()
        .map(|(nu, f)| format!("{nu:?}: {f}"))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Matrices of a model after a fixed specialization of the coefficients.
pub struct Evaluator<'m, Sp: Specialization> {
    model: &'m FixedPointModel,
    sp: Sp,
    cache: Mutex<HashMap<Generator, Arc<SparseMatrix<Sp::S>>>>,
}

impl<'m, Sp: Specialization> Evaluator<'m, Sp> {
    pub fn new(model: &'m FixedPointModel, sp: Sp) -> Self {
        Evaluator {
            model,
            sp,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &FixedPointModel {
        self.model
    }

    pub fn specialization(&self) -> &Sp {
        &self.sp
    }

    pub fn generator(&self, g: &Generator) -> Result<Arc<SparseMatrix<Sp::S>>> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(g) {
            return Ok(m.clone());
        }
        let exact = self.model.generator_matrix(g)?;
        let m = Arc::new(exact.try_map(|f| self.sp.ratfunc(f))?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(g.clone(), m.clone());
        Ok(m)
    }

    pub fn word(&self, word: &GeneratorWord) -> Result<SparseMatrix<Sp::S>> {
        let dim = self.model.dim();
        match word {
            GeneratorWord::Zero => Ok(SparseMatrix::zero(dim)),
            GeneratorWord::Word(factors) => {
                let Some((last, rest)) = factors.split_last() else {
                    return Ok(SparseMatrix::identity(dim, self.sp.one()));
                };
                let mut acc = (*self.generator(last)?).clone();
                for g in rest.iter().rev() {
                    if acc.is_zero() {
                        break;
                    }
                    acc = self.generator(g)?.mul(&acc);
                }
                Ok(acc)
            }
        }
    }

    /// Left multiplication by a polynomial: row `u` is scaled by `u c`.
    pub fn times_poly(&self, c: &MultiPoly, m: &SparseMatrix<Sp::S>) -> Result<SparseMatrix<Sp::S>> {
        if c.is_one() {
            return Ok(m.clone());
        }
        m.scale_rows(|u| {
            self.sp
                .poly(&c.permute(self.model.perms[u].images()))
                .map_err(CoreError::from)
        })
    }

    pub fn element(&self, e: &Element) -> Result<SparseMatrix<Sp::S>> {
        let mut out = SparseMatrix::zero(self.model.dim());
        for (c, word) in e.terms() {
            let m = self.word(word)?;
            out = out.add(&self.times_poly(c, &m)?);
        }
        Ok(out)
    }
}

/// A vector in the `zeta` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedVector {
    pub coords: BTreeMap<Perm, RatFunc>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub row: Perm,
    pub col: Perm,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The outcome of an element identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub equal: bool,
    pub backend: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheckReport {
    pub check: &'static str,
    pub alpha: BTreeMap<String, usize>,
    pub backend: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub generators: usize,
    pub samples: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}
