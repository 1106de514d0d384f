//! Degrees of the cell words `tau_w e(nu)`, the graded dimension of
//! `e(nu') R(alpha) e(nu)` predicted by the free basis
//! `{x^a hbar^b tau_w e(nu)}`, and rank computations in the fixed-point
//! model that test it.

use klr_poly::{BigInt, BigRational, Fp, Monomial, MultiPoly, VarTable};
use rayon::prelude::*;
use serde::Serialize;

use crate::fixed_point::{Evaluator, FixedPointModel, FpPoint};
use crate::linalg::EchelonBasis;
use crate::presentation::{Element, GeneratorWord, Letter, Presentation};
use crate::roots::{name_sequence, NamedSequence};
use crate::{ColorSequence, CoreError, Perm, Result};

/// Width of the default degree window above the minimal degree.
pub const DEFAULT_WINDOW_WIDTH: i64 = 8;

/// Consecutive points that add nothing before a rank is accepted.
const STALE_POINTS: usize = 2;

/// Degree of `tau_{j_1} ... tau_{j_l} e(nu)`, accumulated from the right.
pub fn word_tau_degree(pres: &Presentation, word: &[usize], nu: &[usize]) -> i64 {
    let mut color = nu.to_vec();
    let mut deg = 0;
    for &j in word.iter().rev() {
        deg += pres.tau_degree(color[j - 1], color[j]);
        color.swap(j - 1, j);
    }
    deg
}

/// Degree of `tau_w e(nu)` along the canonical reduced word of `w`.
pub fn tau_degree(pres: &Presentation, w: &Perm, nu: &[usize]) -> i64 {
    word_tau_degree(pres, &w.canonical_reduced_word(), nu)
}

/// The degrees of `tau_w e(nu)` along every reduced word of `w`.
pub fn tau_degrees_all_words(pres: &Presentation, w: &Perm, nu: &[usize]) -> Vec<i64> {
    w.reduced_words()
        .iter()
        .map(|word| word_tau_degree(pres, word, nu))
        .collect()
}

/// A member `tau_w e(nu)` of the cell basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellBasisWord {
    pub w: Perm,
    pub reduced_word: Vec<usize>,
    pub nu: ColorSequence,
    pub left: ColorSequence,
    pub degree: i64,
}

impl CellBasisWord {
    pub fn new(pres: &Presentation, w: &Perm, nu: &[usize]) -> Self {
        let reduced_word = w.canonical_reduced_word();
        CellBasisWord {
            degree: word_tau_degree(pres, &reduced_word, nu),
            left: w.act(nu).expect("sizes agree"),
            w: w.clone(),
            reduced_word,
            nu: nu.to_vec(),
        }
    }

    pub fn word(&self) -> GeneratorWord {
        GeneratorWord::from_reduced_word(&self.reduced_word, &self.nu)
    }
}

/// The cell words `tau_w e(nu_in)` with left color `nu_out`.
pub fn cell_words(pres: &Presentation, nu_out: &[usize], nu_in: &[usize]) -> Vec<CellBasisWord> {
    Perm::all(nu_in.len())
        .iter()
        .filter(|w| w.act(nu_in).is_ok_and(|c| c == nu_out))
        .map(|w| CellBasisWord::new(pres, w, nu_in))
        .collect()
}

/// `sum_w q^{deg tau_w} / (1 - q^2)^n` with `n = m + #edges`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedSeries {
    /// `(degree, multiplicity)` pairs of the numerator, sorted by degree.
    pub numerator: Vec<(i64, u64)>,
    pub denominator_exponent: u32,
}

impl GradedSeries {
    pub fn min_degree(&self) -> Option<i64> {
        self.numerator.first().map(|&(d, _)| d)
    }

    /// Coefficient of `q^d`.
    pub fn coefficient(&self, d: i64) -> u64 {
        let n = self.denominator_exponent as u64;
        self.numerator
            .iter()
            .filter(|&&(e, _)| d >= e && (d - e) % 2 == 0)
            .map(|&(e, mult)| mult * binomial(((d - e) / 2) as u64 + n - 1, n - 1))
            .sum()
    }

    /// `(d, coefficient)` for `d` in `from..=to` step 2.
    pub fn coefficients(&self, from: i64, to: i64) -> Vec<(i64, u64)> {
        (from..=to).step_by(2).map(|d| (d, self.coefficient(d))).collect()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn poincare_series(pres: &Presentation, nu_out: &[usize], nu_in: &[usize]) -> GradedSeries {
    let mut numerator: Vec<(i64, u64)> = Vec::new();
    let mut degs: Vec<i64> = cell_words(pres, nu_out, nu_in)
        .iter()
        .map(|c| c.degree)
        .collect();
    degs.sort_unstable();
    for d in degs {
        match numerator.last_mut() {
            Some((e, mult)) if *e == d => *mult += 1,
            _ => numerator.push((d, 1)),
        }
    }
    GradedSeries {
        numerator,
        denominator_exponent: (nu_in.len() + pres.quiver().edges().len()) as u32,
    }
}

/// All monomials with exponent sum `total` in the position variables, and
/// in the hbar variables too when `with_hbar`.
pub fn monomials(vars: &std::sync::Arc<VarTable>, total: u32, with_hbar: bool) -> Vec<MultiPoly> {
    let n = if with_hbar { vars.len() } else { vars.x_count() };
    let mut out = Vec::new();
    let mut exps = vec![0u16; vars.len()];
    fn rec(
        k: usize,
        n: usize,
        left: u32,
        exps: &mut Vec<u16>,
        vars: &std::sync::Arc<VarTable>,
        out: &mut Vec<MultiPoly>,
    ) {
        if k + 1 == n {
            exps[k] = left as u16;
            out.push(MultiPoly::monomial(
                vars,
                Monomial::from_exponents(exps.clone()),
                BigRational::from_integer(BigInt::from(1)),
            ));
            exps[k] = 0;
            return;
        }
        for e in 0..=left {
            exps[k] = e as u16;
            rec(k + 1, n, left - e, exps, vars, out);
        }
        exps[k] = 0;
    }
    if n == 0 {
        if total == 0 {
            out.push(MultiPoly::one(vars));
        }
        return out;
    }
    rec(0, n, total, &mut exps, vars, &mut out);
    out
}

/// How random points are drawn for a rank computation.
#[derive(Debug, Clone)]
pub enum PointSampler {
    /// Every variable random at every point.
    Generic,
    /// The hbar variables pinned to the given values.
    FixedHbar(Vec<Fp>),
}

/// Ranks of the spans of several subsets of `elements`, computed from the
/// entries of their matrices at random points modulo `2^61 - 1`.
///
/// Each point contributes one column per matrix entry; columns are added
/// until every subset has full rank or `STALE_POINTS` consecutive points
/// add nothing.
pub fn span_ranks(
    model: &FixedPointModel,
    elements: &[Element],
    subsets: &[Vec<usize>],
    sampler: &PointSampler,
    seed: u64,
) -> Result<Vec<usize>> {
    let mut bases: Vec<EchelonBasis> = subsets.iter().map(|s| EchelonBasis::new(s.len())).collect();
    if elements.is_empty() {
        return Ok(vec![0; subsets.len()]);
    }
    let max_points = elements.len() + 8;
    let mut stale = 0;
    let mut p = 0u64;
    let mut used = 0usize;
    let mut poles = 0usize;
    while used < max_points && stale < STALE_POINTS && !bases.iter().all(EchelonBasis::is_full) {
        let s = seed
            .wrapping_mul(0x2545_f491_4f6c_dd1d)
            .wrapping_add(p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        p += 1;
        let point = match sampler {
            PointSampler::Generic => FpPoint::random(model.vars(), s),
            PointSampler::FixedHbar(h) => FpPoint::random_with_hbar(model.vars(), s, h),
        };
        let ev = Evaluator::new(model, point);
        let mats = elements
            .par_iter()
            .map(|e| ev.element(e))
            .collect::<Result<Vec<_>>>();
        let mats = match mats {
            Ok(m) => m,
            Err(CoreError::Poly(klr_poly::PolyError::Pole)) => {
                poles += 1;
                if poles > 16 {
                    return Err(CoreError::Degenerate(poles));
                }
                continue;
            }
            Err(e) => return Err(e),
        };
        used += 1;
        let mut positions = std::collections::BTreeSet::new();
        for m in &mats {
            for (r, c, _) in m.entries() {
                positions.insert((r, c));
            }
        }
        let mut grew = false;
        for (r, c) in positions {
            let column: Vec<Fp> = mats
                .iter()
                .map(|m| m.get(r, c).copied().unwrap_or(Fp::ZERO))
                .collect();
            for (basis, subset) in bases.iter_mut().zip(subsets) {
                if basis.is_full() {
                    continue;
                }
                let v: Vec<Fp> = subset.iter().map(|&i| column[i]).collect();
                grew |= basis.insert(&v);
            }
        }
        stale = if grew { 0 } else { stale + 1 };
    }
    Ok(bases.iter().map(EchelonBasis::rank).collect())
}

/// Rank of one span at several seeds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRank {
    pub words: usize,
    pub rank: usize,
    pub per_seed: Vec<usize>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub nu_out: NamedSequence,
    pub nu_in: NamedSequence,
    pub series: Vec<(i64, u64)>,
    pub oracle: Vec<(i64, u64)>,
    /// Degrees where the basis words are linearly dependent.
    pub dependent: Vec<i64>,
    /// Degrees where some generator word escapes the span of the basis.
    pub not_spanning: Vec<i64>,
    /// Degrees where the seeds disagree.
    pub unstable: Vec<i64>,
    pub seeds: Vec<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularityCheck {
    pub nu: ColorSequence,
    pub j: usize,
    pub w: Perm,
    pub degree: i64,
    pub lower_terms: usize,
    /// Whether `tau_j tau_w` and `tau_{s_j w}` already coincide.
    pub difference_zero: bool,
    pub in_span: bool,
}

/// Graded-dimension computations for one model.
pub struct GradedDim<'m> {
    model: &'m FixedPointModel,
    pres: Presentation,
}

impl<'m> GradedDim<'m> {
    pub fn new(model: &'m FixedPointModel) -> Self {
        GradedDim {
            model,
            pres: Presentation::new(model.quiver()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn series(&self, nu_out: &[usize], nu_in: &[usize]) -> Result<GradedSeries> {
        self.model.block(nu_out)?;
        self.model.block(nu_in)?;
        Ok(poincare_series(&self.pres, nu_out, nu_in))
    }

    /// The words `x^a hbar^b tau_w e(nu_in)` of degree `d` with left color
    /// `nu_out`.
    pub fn basis_words(&self, nu_out: &[usize], nu_in: &[usize], d: i64) -> Vec<Element> {
        let vars = self.model.vars();
        let mut out = Vec::new();
        for cell in cell_words(&self.pres, nu_out, nu_in) {
            let r = d - cell.degree;
            if r < 0 || r % 2 != 0 {
                continue;
            }
            let word = cell.word();
            for mono in monomials(vars, (r / 2) as u32, true) {
                out.push(Element::term(mono, word.clone()));
            }
        }
        out
    }

    /// Products of at most `max_len` letters `x_k`, `r_t` of degree `d`
    /// from `nu_in` to `nu_out`, used to probe the spanning property.
    pub fn probe_words(&self, nu_out: &[usize], nu_in: &[usize], d: i64, max_len: usize) -> Vec<Element> {
        let m = nu_in.len();
        let mut letters: Vec<Letter> = (1..=m).map(Letter::X).collect();
        letters.extend((1..m).map(Letter::R));
        let vars = self.model.vars();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if !cur.is_empty() {
                let word = GeneratorWord::from_letters(&cur, nu_in);
                if word.left_color().as_deref() == Some(nu_out) && self.pres.word_degree(&word) == Some(d) {
                    out.push(Element::word(vars, word));
                }
            }
            if cur.len() < max_len {
                for l in &letters {
                    let mut next = vec![*l];
                    next.extend(cur.iter().copied());
                    stack.push(next);
                }
            }
        }
        out
    }

    /// Rank of the degree-`d` basis words at each seed.
    pub fn rank_oracle(&self, nu_out: &[usize], nu_in: &[usize], d: i64, seeds: &[u64]) -> Result<OracleRank> {
        let words = self.basis_words(nu_out, nu_in, d);
        let all: Vec<usize> = (0..words.len()).collect();
        let per_seed = seeds
            .iter()
            .map(|&s| Ok(span_ranks(self.model, &words, std::slice::from_ref(&all), &PointSampler::Generic, s)?[0]))
            .collect::<Result<Vec<_>>>()?;
        Ok(OracleRank {
            words: words.len(),
            rank: per_seed.iter().copied().max().unwrap_or(0),
            agree: per_seed.windows(2).all(|p| p[0] == p[1]),
            per_seed,
        })
    }

    /// Compare the series with the oracle on `d_min ..= d_min + width`.
    pub fn verify_series(&self, nu_out: &[usize], nu_in: &[usize], width: i64, seeds: &[u64]) -> Result<SeriesReport> {
        let series = self.series(nu_out, nu_in)?;
        let d_min = series.min_degree().unwrap_or(0);
        let expected = series.coefficients(d_min, d_min + width);
        let mut oracle = Vec::new();
        let mut dependent = Vec::new();
        let mut not_spanning = Vec::new();
        let mut unstable = Vec::new();
        for &(d, coef) in &expected {
            let words = self.basis_words(nu_out, nu_in, d);
            let probes = self.probe_words(nu_out, nu_in, d, 4);
            let elements: Vec<Element> = words.iter().cloned().chain(probes).collect();
            let basis: Vec<usize> = (0..words.len()).collect();
            let all: Vec<usize> = (0..elements.len()).collect();
            let mut ranks = Vec::new();
            for &s in seeds {
                let r = span_ranks(self.model, &elements, &[basis.clone(), all.clone()], &PointSampler::Generic, s)?;
                if r[1] > r[0] {
                    not_spanning.push(d);
                }
                ranks.push(r[0]);
            }
            let rank = ranks.iter().copied().max().unwrap_or(0);
            if ranks.windows(2).any(|p| p[0] != p[1]) {
                unstable.push(d);
            }
            if rank as u64 != coef {
                dependent.push(d);
            }
            oracle.push((d, rank as u64));
        }
        not_spanning.dedup();
        let q = self.model.quiver();
        Ok(SeriesReport {
            nu_out: name_sequence(q, nu_out),
            nu_in: name_sequence(q, nu_in),
            matches: oracle == expected && unstable.is_empty() && not_spanning.is_empty(),
            series: expected,
            oracle,
            dependent,
            not_spanning,
            unstable,
            seeds: seeds.to_vec(),
        })
    }

    /// Whether `tau_j tau_w e(nu) - tau_{s_j w} e(nu)` lies in the span of
    /// `x^a hbar^b tau_{w'} e(nu)` with `w' < s_j w` in the Bruhat order.
    /// Requires `l(s_j w) > l(w)`.
    pub fn triangularity(&self, nu: &[usize], j: usize, w: &Perm, seed: u64) -> Result<TriangularityCheck> {
        let sjw = w.mul_simple_left(j);
        if sjw.length() <= w.length() {
            return Err(CoreError::Invalid {
                location: "triangularity".into(),
                msg: format!("s_{j} {w} is not longer than {w}"),
            });
        }
        let vars = self.model.vars();
        let mut word = vec![j];
        word.extend(w.canonical_reduced_word());
        let lhs = Element::word(vars, GeneratorWord::from_reduced_word(&word, nu));
        let top = CellBasisWord::new(&self.pres, &sjw, nu);
        let diff = lhs.minus(Element::word(vars, top.word()));
        let mut elements = Vec::new();
        for wp in Perm::all(nu.len()) {
            if wp == sjw || !wp.bruhat_le(&sjw) || wp.act(nu)? != top.left {
                continue;
            }
            let cell = CellBasisWord::new(&self.pres, &wp, nu);
            let r = top.degree - cell.degree;
            if r < 0 || r % 2 != 0 {
                continue;
            }
            for mono in monomials(vars, (r / 2) as u32, true) {
                elements.push(Element::term(mono, cell.word()));
            }
        }
        let lower = elements.len();
        elements.push(diff);
        let span: Vec<usize> = (0..lower).collect();
        let all: Vec<usize> = (0..=lower).collect();
        let ranks = span_ranks(
            self.model,
            &elements,
            &[span, all, vec![lower]],
            &PointSampler::Generic,
            seed,
        )?;
        Ok(TriangularityCheck {
            nu: nu.to_vec(),
            j,
            w: w.clone(),
            degree: top.degree,
            lower_terms: lower,
            difference_zero: ranks[2] == 0,
            in_span: ranks[0] == ranks[1],
        })
    }

    /// Every triangularity check for the right colors of the model.
    pub fn all_triangularity(&self, seed: u64) -> Result<Vec<TriangularityCheck>> {
        let m = self.model.height();
        let mut jobs = Vec::new();
        for (nu, _) in self.model.blocks() {
            for w in Perm::all(m) {
                for j in 1..m {
                    if w.mul_simple_left(j).length() > w.length() {
                        jobs.push((nu.clone(), j, w.clone()));
                    }
                }
            }
        }
        jobs.par_iter()
            .map(|(nu, j, w)| self.triangularity(nu, *j, w, seed))
            .collect()
    }
}
