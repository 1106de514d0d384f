//! Truncated dimensions of the cyclotomic quotient
//! `R^lambda(alpha) = R(alpha) / R(alpha) a^lambda(x) R(alpha)` with
//! `a^lambda(x) = sum_nu x_1^{lambda(nu_1)} e(nu)`.
//!
//! The hbar parameters are specialized to random values before any linear
//! algebra, so every dimension reported here is that of a generic fiber.
//! Without the grading from hbar, dimensions are computed for the filtration
//! by degree: `X(<= d)` is spanned by the words of degree at most `d`.

use std::collections::BTreeMap;
use std::sync::Arc;

use klr_poly::{Fp, MultiPoly, VarTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fixed_point::FixedPointModel;
use crate::graded::{cell_words, monomials, span_ranks, CellBasisWord, PointSampler};
use crate::presentation::{Element, GeneratorWord, Letter, Presentation};
use crate::roots::{name_sequence, NamedSequence};
use crate::{CoreError, Perm, Quiver, Result};

pub const MAX_HEIGHT: usize = 4;
pub const MAX_DEGREE: i64 = 10;

/// Levels `lambda(h_i)`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominantWeight {
    levels: Vec<usize>,
}

impl DominantWeight {
    pub fn new(levels: Vec<usize>) -> Self {
        DominantWeight { levels }
    }

    /// The fundamental weight `Lambda_i`.
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut levels = vec![0; n];
        levels[i] = 1;
        DominantWeight { levels }
    }

    pub fn from_map(q: &Quiver, map: &BTreeMap<String, usize>) -> Result<Self> {
        let mut levels = vec![0; q.vertex_count()];
        for (name, &l) in map {
            levels[q.vertex_index(name)?] = l;
        }
        Ok(DominantWeight { levels })
    }

    /// `{"i": 1}` or the compact form `i` / `2i+j`.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self> {
        let alpha = crate::RootVector::parse(q, text)?;
        Ok(DominantWeight {
            levels: alpha.coeffs().to_vec(),
        })
    }

    pub fn level(&self, i: usize) -> usize {
        self.levels[i]
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn to_map(&self, q: &Quiver) -> BTreeMap<String, usize> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(i, &l)| (q.vertex_name(i).to_string(), l))
            .collect()
    }
}

/// `a_i^lambda(u) = u^{lambda(h_i)}`, written in the single variable `x1`.
pub fn a_lambda(i: usize, lambda: &DominantWeight) -> MultiPoly {
    let vars = Arc::new(VarTable::new(1, Vec::new()));
    MultiPoly::x(&vars, 1).pow(lambda.level(i) as u32)
}

/// Dimensions of the pieces of degree exactly `degree` of the associated
/// graded spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloDegree {
    pub degree: i64,
    pub dim_full: usize,
    pub dim_ideal: usize,
    pub dim_quotient: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloBlock {
    pub nu_out: NamedSequence,
    pub nu_in: NamedSequence,
    pub dim_quotient: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycloReport {
    pub lambda: BTreeMap<String, usize>,
    pub alpha: BTreeMap<String, usize>,
    pub max_degree: i64,
    pub seeds: Vec<u64>,
    pub degrees: Vec<CycloDegree>,
    pub total_quotient: usize,
    pub per_seed_totals: Vec<usize>,
    pub blocks: Vec<CycloBlock>,
    /// All seeds agree.
    pub stable: bool,
    /// The ideal words lie in the span of the basis words at every seed.
    pub contained: bool,
    /// The quotient did not grow in the top degree of the window.
    pub saturated: bool,
    pub fiber: &'static str,
}

struct Word {
    element: Element,
    degree: i64,
    block: usize,
}

/// Spanning words of `R(alpha)` with x-coefficients only, degree at most
/// `max_degree`.
fn full_words(pres: &Presentation, model: &FixedPointModel, blocks: &[(Vec<usize>, Vec<usize>)], max_degree: i64) -> Vec<Word> {
    let vars = model.vars();
    let mut out = Vec::new();
    for (b, (nu_out, nu_in)) in blocks.iter().enumerate() {
        for cell in cell_words(pres, nu_out, nu_in) {
            let mut r = 0;
            while cell.degree + 2 * r <= max_degree {
                for mono in monomials(vars, r as u32, false) {
                    out.push(Word {
                        element: Element::term(mono, cell.word()),
                        degree: cell.degree + 2 * r,
                        block: b,
                    });
                }
                r += 1;
            }
        }
    }
    out
}

/// Words `x^a tau_w x^c tau_{w'} e(nu)` with `c_1 >= lambda(nu'_1)`, where
/// `nu' = w' nu` is the middle color.
fn ideal_words(
    pres: &Presentation,
    model: &FixedPointModel,
    lambda: &DominantWeight,
    blocks: &[(Vec<usize>, Vec<usize>)],
    max_degree: i64,
) -> Vec<Word> {
    let vars = model.vars();
    let m = model.height();
    let seqs: Vec<Vec<usize>> = model.blocks().map(|(nu, _)| nu.clone()).collect();
    let block_of: BTreeMap<(Vec<usize>, Vec<usize>), usize> = blocks
        .iter()
        .enumerate()
        .map(|(b, k)| (k.clone(), b))
        .collect();
    let mut out = Vec::new();
    for nu_in in &seqs {
        for wr in Perm::all(m) {
            let right = CellBasisWord::new(pres, &wr, nu_in);
            let mid = right.left.clone();
            let level = lambda.level(mid[0]) as i64;
            for wl in Perm::all(m) {
                let left = CellBasisWord::new(pres, &wl, &mid);
                let base = right.degree + left.degree + 2 * level;
                let b = block_of[&(left.left.clone(), nu_in.clone())];
                let mut r = 0;
                while base + 2 * r <= max_degree {
                    // Split the free exponent between x^a on the left and the
                    // middle x^c beyond the forced x_1^level.
                    for ra in 0..=r {
                        for a in monomials(vars, ra as u32, false) {
                            for c in monomials(vars, (r - ra) as u32, false) {
                                let mut letters: Vec<Letter> =
                                    left.reduced_word.iter().map(|&j| Letter::R(j)).collect();
                                for _ in 0..level {
                                    letters.push(Letter::X(1));
                                }
                                for (k, &e) in c.leading_term().expect("monomial").0.exponents()[..m].iter().enumerate() {
                                    for _ in 0..e {
                                        letters.push(Letter::X(k + 1));
                                    }
                                }
                                letters.extend(right.reduced_word.iter().map(|&j| Letter::R(j)));
                                let word = if letters.is_empty() {
                                    GeneratorWord::single(crate::presentation::Generator::Idem(nu_in.clone()))
                                } else {
                                    GeneratorWord::from_letters(&letters, nu_in)
                                };
                                out.push(Word {
                                    element: Element::term(a.clone(), word),
                                    degree: base + 2 * r,
                                    block: b,
                                });
                            }
                        }
                    }
                    r += 1;
                }
            }
        }
    }
    out
}

/// Truncated dimensions of `R^lambda(alpha)` up to `max_degree`, at each
/// seed of `seeds`.
pub fn cyclotomic_dims(
    model: &FixedPointModel,
    lambda: &DominantWeight,
    max_degree: i64,
    seeds: &[u64],
) -> Result<CycloReport> {
    let m = model.height();
    if m > MAX_HEIGHT {
        return Err(CoreError::HeightCap {
            height: m,
            cap: MAX_HEIGHT,
        });
    }
    let q = model.quiver();
    let pres = Presentation::new(q);
    let seqs: Vec<Vec<usize>> = model.blocks().map(|(nu, _)| nu.clone()).collect();
    let blocks: Vec<(Vec<usize>, Vec<usize>)> = seqs
        .iter()
        .flat_map(|a| seqs.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let full = full_words(&pres, model, &blocks, max_degree);
    let ideal = ideal_words(&pres, model, lambda, &blocks, max_degree);
    let d_min = full.iter().map(|w| w.degree).min().unwrap_or(0);
    let degrees: Vec<i64> = (d_min..=max_degree).step_by(2).collect();

    let nf = full.len();
    let mut elements: Vec<Element> = full.iter().map(|w| w.element.clone()).collect();
    elements.extend(ideal.iter().map(|w| w.element.clone()));
    let mut subsets = Vec::new();
    for &d in &degrees {
        let f: Vec<usize> = (0..nf).filter(|&i| full[i].degree <= d).collect();
        let i: Vec<usize> = (0..ideal.len())
            .filter(|&i| ideal[i].degree <= d)
            .map(|i| i + nf)
            .collect();
        let u: Vec<usize> = f.iter().chain(&i).copied().collect();
        subsets.extend([f, i, u]);
    }
    for b in 0..blocks.len() {
        subsets.push((0..nf).filter(|&i| full[i].block == b).collect());
        subsets.push(
            (0..ideal.len())
                .filter(|&i| ideal[i].block == b)
                .map(|i| i + nf)
                .collect(),
        );
    }

    let hbar_count = model.vars().hbar_count();
    let mut per_seed: Vec<Vec<usize>> = Vec::new();
    for &s in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x5bd1_e995);
        let hbar: Vec<Fp> = (0..hbar_count).map(|_| Fp::random(&mut rng)).collect();
        per_seed.push(span_ranks(model, &elements, &subsets, &PointSampler::FixedHbar(hbar), s)?);
    }
    let ranks: Vec<usize> = (0..subsets.len())
        .map(|k| per_seed.iter().map(|r| r[k]).max().unwrap_or(0))
        .collect();
    let stable = per_seed.windows(2).all(|p| p[0] == p[1]);
    let nd = degrees.len();
    let contained = per_seed
        .iter()
        .all(|r| (0..nd).all(|k| r[3 * k] == r[3 * k + 2]));

    let quotient_le = |r: &[usize], k: usize| r[3 * k].saturating_sub(r[3 * k + 1]);
    let mut out_degrees = Vec::new();
    for (k, &d) in degrees.iter().enumerate() {
        let prev = |off: usize| if k == 0 { 0 } else { ranks[3 * (k - 1) + off] };
        let q_prev = if k == 0 { 0 } else { quotient_le(&ranks, k - 1) };
        out_degrees.push(CycloDegree {
            degree: d,
            dim_full: ranks[3 * k] - prev(0),
            dim_ideal: ranks[3 * k + 1].saturating_sub(prev(1)),
            dim_quotient: quotient_le(&ranks, k).saturating_sub(q_prev),
        });
    }
    let total = if nd == 0 { 0 } else { quotient_le(&ranks, nd - 1) };
    let saturated = nd < 2 || quotient_le(&ranks, nd - 1) == quotient_le(&ranks, nd - 2);
    let per_seed_totals = per_seed
        .iter()
        .map(|r| if nd == 0 { 0 } else { quotient_le(r, nd - 1) })
        .collect();
    let base = 3 * nd;
    let cyclo_blocks = blocks
        .iter()
        .enumerate()
        .filter_map(|(b, (o, i))| {
            let qd = ranks[base + 2 * b].saturating_sub(ranks[base + 2 * b + 1]);
            (ranks[base + 2 * b] > 0).then(|| CycloBlock {
                nu_out: name_sequence(q, o),
                nu_in: name_sequence(q, i),
                dim_quotient: qd,
            })
        })
        .collect();
    Ok(CycloReport {
        lambda: lambda.to_map(q),
        alpha: model.alpha().to_map(q),
        max_degree,
        seeds: seeds.to_vec(),
        degrees: out_degrees,
        total_quotient: total,
        per_seed_totals,
        blocks: cyclo_blocks,
        stable,
        contained,
        saturated,
        fiber: "generic",
    })
}
