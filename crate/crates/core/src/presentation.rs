//! The algebra `R(alpha)` as a presented object: generators, formal words,
//! elements with polynomial coefficients, the twisting polynomials and the
//! catalogue of defining relations.

use std::fmt;
use std::sync::Arc;

use klr_poly::{MultiPoly, VarTable};
use serde::Serialize;

use crate::perm::swap_colors;
use crate::roots::{name_sequence, NamedSequence};
use crate::{BorcherdsCartanDatum, ColorSequence, CoreError, Fault, Quiver, Result, RootVector};

/// A generator tagged by its right idempotent: `e(nu)`, `x_k e(nu)` or
/// `r_t e(nu)`. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Idem(ColorSequence),
    X { k: usize, nu: ColorSequence },
    Tau { t: usize, nu: ColorSequence },
}

impl Generator {
    pub fn right_color(&self) -> &[usize] {
        match self {
            Generator::Idem(nu) | Generator::X { nu, .. } | Generator::Tau { nu, .. } => nu,
        }
    }

    pub fn left_color(&self) -> ColorSequence {
        match self {
            Generator::Tau { t, nu } => swap_colors(nu, *t),
            other => other.right_color().to_vec(),
        }
    }

    pub fn check_indices(&self) -> Result<()> {
        let m = self.right_color().len();
        match *self {
            Generator::X { k, .. } if k == 0 || k > m => {
                Err(CoreError::IndexOutOfRange { index: k, max: m })
            }
            Generator::Tau { t, .. } if t == 0 || t >= m => Err(CoreError::IndexOutOfRange {
                index: t,
                max: m.saturating_sub(1),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Idem(nu) => write!(f, "e{nu:?}"),
            Generator::X { k, nu } => write!(f, "x{k}e{nu:?}"),
            Generator::Tau { t, nu } => write!(f, "r{t}e{nu:?}"),
        }
    }
}

/// A generator without its color, for building words from the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    E,
    X(usize),
    R(usize),
}

/// A formal product of generators, leftmost factor first. The empty word is
/// the unit `1 = sum_nu e(nu)`; color-incompatible products collapse to
/// the distinguished zero word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratorWord {
    Zero,
    Word(Vec<Generator>),
}

impl GeneratorWord {
    pub fn one() -> Self {
        GeneratorWord::Word(Vec::new())
    }

    pub fn new(factors: Vec<Generator>) -> Self {
        let compatible = factors
            .windows(2)
            .all(|p| p[0].right_color() == p[1].left_color().as_slice());
        if compatible {
            GeneratorWord::Word(factors)
        } else {
            GeneratorWord::Zero
        }
    }

    pub fn single(g: Generator) -> Self {
        GeneratorWord::Word(vec![g])
    }

    /// The word `letters[0] letters[1] ... e(nu)`, colors propagated from
    /// the right; no letters gives `e(nu)`.
    pub fn from_letters(letters: &[Letter], nu: &[usize]) -> Self {
        if letters.is_empty() {
            return GeneratorWord::single(Generator::Idem(nu.to_vec()));
        }
        let mut color = nu.to_vec();
        let mut factors = Vec::with_capacity(letters.len());
        for l in letters.iter().rev() {
            let g = match *l {
                Letter::E => Generator::Idem(color.clone()),
                Letter::X(k) => Generator::X {
                    k,
                    nu: color.clone(),
                },
                Letter::R(t) => Generator::Tau {
                    t,
                    nu: color.clone(),
                },
            };
            color = g.left_color();
            factors.push(g);
        }
        factors.reverse();
        GeneratorWord::Word(factors)
    }

    /// `tau_{j_1} ... tau_{j_l} e(nu)` for a word in simple reflections.
    pub fn from_reduced_word(word: &[usize], nu: &[usize]) -> Self {
        let letters: Vec<Letter> = word.iter().map(|&j| Letter::R(j)).collect();
        Self::from_letters(&letters, nu)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GeneratorWord::Zero)
    }

    pub fn factors(&self) -> &[Generator] {
        match self {
            GeneratorWord::Zero => &[],
            GeneratorWord::Word(f) => f,
        }
    }

    pub fn right_color(&self) -> Option<&[usize]> {
        self.factors().last().map(Generator::right_color)
    }

    pub fn left_color(&self) -> Option<ColorSequence> {
        self.factors().first().map(Generator::left_color)
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        match (self, other) {
            (GeneratorWord::Word(a), GeneratorWord::Word(b)) => {
                GeneratorWord::new(a.iter().chain(b).cloned().collect())
            }
            _ => GeneratorWord::Zero,
        }
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorWord::Zero => write!(f, "0"),
            GeneratorWord::Word(w) if w.is_empty() => write!(f, "1"),
            GeneratorWord::Word(w) => {
                let parts: Vec<String> = w.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

/// A linear combination `sum_i f_i(x, hbar) * word_i` with polynomial
/// coefficients acting on the left (`f(x)` stands for
/// `sum_nu f(x_1, ..., x_m) e(nu)`).
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    vars: Arc<VarTable>,
    terms: Vec<(MultiPoly, GeneratorWord)>,
}

impl Element {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Element {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn word(vars: &Arc<VarTable>, word: GeneratorWord) -> Self {
        Self::term(MultiPoly::one(vars), word)
    }

    pub fn term(coeff: MultiPoly, word: GeneratorWord) -> Self {
        let vars = coeff.vars().clone();
        let mut e = Element {
            vars,
            terms: Vec::new(),
        };
        if !coeff.is_zero() && !word.is_zero() {
            e.terms.push((coeff, word));
        }
        e
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[(MultiPoly, GeneratorWord)] {
        &self.terms
    }

    pub fn plus(mut self, other: Element) -> Element {
        self.terms.extend(other.terms);
        self
    }

    pub fn minus(self, other: Element) -> Element {
        self.plus(other.negated())
    }

    pub fn negated(mut self) -> Element {
        for (c, _) in &mut self.terms {
            *c = -&*c;
        }
        self
    }

    /// Left multiplication by a polynomial.
    pub fn times_poly(mut self, f: &MultiPoly) -> Element {
        for (c, _) in &mut self.terms {
            *c = &*c * f;
        }
        self.terms.retain(|(c, _)| !c.is_zero());
        self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| {
                if c.is_one() {
                    w.to_string()
                } else {
                    format!("({c})*{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The seven families of defining relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationFamily {
    /// `e(nu) e(nu') = delta e(nu)` and `sum e(nu) = 1`.
    Idempotent,
    /// `x_k e = e x_k` and `x_k x_l = x_l x_k`.
    XCommute,
    /// `r_t e(nu) = e(s_t nu) r_t`.
    RIdempotent,
    /// `r_t r_s = r_s r_t` for `|t - s| > 1`.
    RCommute,
    /// The quadratic relation for `r_t^2 e(nu)`.
    RSquare,
    /// The intertwining relation between `r_t` and `x_k`.
    RX,
    /// The deformed braid relation.
    Braid,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 7] = [
        RelationFamily::Idempotent,
        RelationFamily::XCommute,
        RelationFamily::RIdempotent,
        RelationFamily::RCommute,
        RelationFamily::RSquare,
        RelationFamily::RX,
        RelationFamily::Braid,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RelationFamily::Idempotent => "idem",
            RelationFamily::XCommute => "xcomm",
            RelationFamily::RIdempotent => "ridem",
            RelationFamily::RCommute => "rcomm",
            RelationFamily::RSquare => "r2",
            RelationFamily::RX => "rx",
            RelationFamily::Braid => "braid",
        }
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// Which branch of the braid relation an instance exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BraidCase {
    /// `nu_t = nu_{t+2} != nu_{t+1}`.
    OuterEqual,
    /// `nu_t = nu_{t+1} = nu_{t+2}`.
    AllEqual,
    Otherwise,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationParams {
    pub nu2: Option<ColorSequence>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub t: Option<usize>,
    pub s: Option<usize>,
    pub braid_case: Option<BraidCase>,
    /// Marks the completeness relation `sum_nu e(nu) = 1`.
    pub sum: bool,
}

#[derive(Debug, Clone)]
pub struct RelationInstance {
    pub family: RelationFamily,
    pub nu: ColorSequence,
    pub params: RelationParams,
    pub lhs: Element,
    pub rhs: Element,
}

impl RelationInstance {
    /// The JSON identification of this instance, without a verdict.
    pub fn label(&self, q: &Quiver) -> RelationLabel {
        RelationLabel {
            relation: self.family.id(),
            nu: name_sequence(q, &self.nu),
            nu2: self.params.nu2.as_ref().map(|n| name_sequence(q, n)),
            k: self.params.k,
            l: self.params.l,
            t: self.params.t,
            s: self.params.s,
            case: self.params.braid_case,
            sum: self.params.sum.then_some(true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationLabel {
    pub relation: &'static str,
    pub nu: NamedSequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu2: Option<NamedSequence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<BraidCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum: Option<bool>,
}

/// The presentation attached to a quiver: its datum and the geometric
/// twisting polynomials
/// `P_i(u,v) = prod_{a: i->i} (u - v + hbar_a)` and
/// `Q_ij(u,v) = prod_{a: i->j} (v - u + hbar_a) prod_{a: j->i} (u - v + hbar_a)`.
#[derive(Debug, Clone)]
pub struct Presentation {
    quiver: Quiver,
    datum: BorcherdsCartanDatum,
    uv: Arc<VarTable>,
    uvw: Arc<VarTable>,
}

impl Presentation {
    pub fn new(quiver: &Quiver) -> Self {
        let ids = quiver.edge_ids();
        Presentation {
            datum: quiver.derive_datum(),
            quiver: quiver.clone(),
            uv: Arc::new(VarTable::new(2, ids.clone())),
            uvw: Arc::new(VarTable::new(3, ids)),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn datum(&self) -> &BorcherdsCartanDatum {
        &self.datum
    }

    /// Variables `u = x1, v = x2`.
    pub fn uv_vars(&self) -> &Arc<VarTable> {
        &self.uv
    }

    /// Variables `u = x1, v = x2, w = x3`.
    pub fn uvw_vars(&self) -> &Arc<VarTable> {
        &self.uvw
    }

    /// Coefficient ring for `R(alpha)` of height `m`.
    pub fn vars_for_height(&self, m: usize) -> Arc<VarTable> {
        Arc::new(VarTable::new(m, self.quiver.edge_ids()))
    }

    fn linear(&self, vars: &Arc<VarTable>, plus: usize, minus: usize, edge: &str) -> MultiPoly {
        let p = &MultiPoly::x(vars, plus) - &MultiPoly::x(vars, minus);
        &p + &MultiPoly::hbar(vars, edge).expect("edge id is in the table")
    }

    pub fn build_p(&self, i: usize) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.uv);
        for e in self.quiver.edges_between(i, i) {
            acc = &acc * &self.linear(&self.uv, 1, 2, &e.id);
        }
        acc
    }

    pub fn build_q(&self, i: usize, j: usize) -> MultiPoly {
        if i == j {
            return MultiPoly::zero(&self.uv);
        }
        let mut acc = MultiPoly::one(&self.uv);
        for e in self.quiver.edges_between(i, j) {
            acc = &acc * &self.linear(&self.uv, 2, 1, &e.id);
        }
        for e in self.quiver.edges_between(j, i) {
            acc = &acc * &self.linear(&self.uv, 1, 2, &e.id);
        }
        if self.quiver.has_fault(Fault::QSignFlip) {
            acc = -acc;
        }
        acc
    }

    /// `f(u, v)` re-expressed over `u, v, w` with its two arguments sent to
    /// the given positions (0 = u, 1 = v, 2 = w).
    fn in_uvw(&self, f: &MultiPoly, first: usize, second: usize) -> MultiPoly {
        f.rename_x(&self.uvw, &[first, second])
            .expect("same edge alphabet")
    }

    fn uvw_var(&self, k: usize) -> MultiPoly {
        MultiPoly::x(&self.uvw, k)
    }

    /// `(u - v)(u - w)(v - w)`.
    fn vandermonde3(&self) -> MultiPoly {
        let (u, v, w) = (self.uvw_var(1), self.uvw_var(2), self.uvw_var(3));
        &(&(&u - &v) * &(&u - &w)) * &(&v - &w)
    }

    /// `P'bar_i(u,v,w)`, combined over `(u-v)(u-w)(v-w)` and divided
    /// exactly.
    pub fn build_pbar_prime(&self, i: usize) -> Result<MultiPoly> {
        let p = self.build_p(i);
        let (u, v, w) = (self.uvw_var(1), self.uvw_var(2), self.uvw_var(3));
        let p_vu = self.in_uvw(&p, 1, 0);
        let p_uw = self.in_uvw(&p, 0, 2);
        let p_vw = self.in_uvw(&p, 1, 2);
        let p_uv = self.in_uvw(&p, 0, 1);
        let num = &(&(&(&p_vu * &p_uw) * &(&v - &w)) + &(&(&p_uw * &p_vw) * &(&u - &v)))
            - &(&(&p_uv * &p_vw) * &(&u - &w));
        Ok(num.exact_divide(&self.vandermonde3())?)
    }

    /// `P''bar_i(u,v,w)`, combined over `(u-v)(u-w)(v-w)` and divided
    /// exactly.
    pub fn build_pbar_dblprime(&self, i: usize) -> Result<MultiPoly> {
        let p = self.build_p(i);
        let (u, v, w) = (self.uvw_var(1), self.uvw_var(2), self.uvw_var(3));
        let p_uv = self.in_uvw(&p, 0, 1);
        let p_uw = self.in_uvw(&p, 0, 2);
        let p_wv = self.in_uvw(&p, 2, 1);
        let p_vw = self.in_uvw(&p, 1, 2);
        let num = &(&(&(&p_uv * &p_vw) * &(&u - &w)) - &(&(&p_uv * &p_uw) * &(&v - &w)))
            - &(&(&p_uw * &p_wv) * &(&u - &v));
        Ok(num.exact_divide(&self.vandermonde3())?)
    }

    /// `Qbar_ij(u,v,w) = (Q_ij(u,v) - Q_ij(w,v)) / (u - w)`.
    pub fn build_qbar(&self, i: usize, j: usize) -> Result<MultiPoly> {
        let q = self.build_q(i, j);
        let num = &self.in_uvw(&q, 0, 1) - &self.in_uvw(&q, 2, 1);
        let den = &self.uvw_var(1) - &self.uvw_var(3);
        Ok(num.exact_divide(&den)?)
    }

    /// Degree of a single generator: 0 for `e`, 2 for `x_k`, and for
    /// `r_t e(nu)` either `2(l_i - 1)` (equal colors `i`) or
    /// `2 h_{nu_t, nu_{t+1}}`.
    pub fn generator_degree(&self, g: &Generator) -> i64 {
        match g {
            Generator::Idem(_) => 0,
            Generator::X { .. } => 2,
            Generator::Tau { t, nu } => self.tau_degree(nu[t - 1], nu[*t]),
        }
    }

    pub fn tau_degree(&self, a: usize, b: usize) -> i64 {
        if a == b {
            2 * (self.datum.l(a) - 1)
        } else {
            2 * self.datum.arrow_counts[a][b] as i64
        }
    }

    /// `None` for the zero word.
    pub fn word_degree(&self, word: &GeneratorWord) -> Option<i64> {
        match word {
            GeneratorWord::Zero => None,
            GeneratorWord::Word(w) => Some(w.iter().map(|g| self.generator_degree(g)).sum()),
        }
    }

    /// Degree of a single term; `None` when the word is zero or the
    /// coefficient is not homogeneous.
    pub fn term_degree(&self, coeff: &MultiPoly, word: &GeneratorWord) -> Option<i64> {
        Some(coeff.degree()? + self.word_degree(word)?)
    }

    /// Common degree of all terms, `None` if they disagree.
    pub fn element_degree(&self, e: &Element) -> Option<Option<i64>> {
        let mut deg = None;
        for (c, w) in e.terms() {
            let d = self.term_degree(c, w)?;
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        Some(deg)
    }

    /// `f(x_a, x_b)` for a kernel `f(u, v)`, inside the height-`m` ring.
    pub fn place2(&self, f: &MultiPoly, target: &Arc<VarTable>, a: usize, b: usize) -> MultiPoly {
        f.rename_x(target, &[a - 1, b - 1])
            .expect("target shares the edge alphabet")
    }

    /// `f(x_a, x_b, x_c)` for a kernel `f(u, v, w)`.
    pub fn place3(
        &self,
        f: &MultiPoly,
        target: &Arc<VarTable>,
        a: usize,
        b: usize,
        c: usize,
    ) -> MultiPoly {
        f.rename_x(target, &[a - 1, b - 1, c - 1])
            .expect("target shares the edge alphabet")
    }

    /// Every instance of every relation family for `alpha`, grouped by
    /// family then by sequence.
    pub fn relation_catalogue(&self, alpha: &RootVector, cap: usize) -> Result<Vec<RelationInstance>> {
        let seqs = alpha.sequences(cap)?;
        let mut out = Vec::new();
        for fam in RelationFamily::ALL {
            if fam == RelationFamily::Idempotent {
                out.extend(self.completeness_instance(alpha, &seqs));
            }
            for nu in &seqs {
                out.extend(self.instances_for(fam, nu, &seqs)?);
            }
        }
        Ok(out)
    }

    fn completeness_instance(&self, alpha: &RootVector, seqs: &[ColorSequence]) -> Vec<RelationInstance> {
        let vars = self.vars_for_height(alpha.height());
        let mut lhs = Element::zero(&vars);
        for nu in seqs {
            lhs = lhs.plus(Element::word(&vars, GeneratorWord::single(Generator::Idem(nu.clone()))));
        }
        vec![RelationInstance {
            family: RelationFamily::Idempotent,
            nu: Vec::new(),
            params: RelationParams {
                sum: true,
                ..Default::default()
            },
            lhs,
            rhs: Element::word(&vars, GeneratorWord::one()),
        }]
    }

    /// The instances of one family with right idempotent `nu`.
    pub fn instances_for(
        &self,
        fam: RelationFamily,
        nu: &[usize],
        seqs: &[ColorSequence],
    ) -> Result<Vec<RelationInstance>> {
        use Letter::{E, R, X};
        let m = nu.len();
        let vars = self.vars_for_height(m);
        let word = |letters: &[Letter]| Element::word(&vars, GeneratorWord::from_letters(letters, nu));
        let coeff_word = |c: MultiPoly, letters: &[Letter]| {
            Element::term(c, GeneratorWord::from_letters(letters, nu))
        };
        let inst = |params: RelationParams, lhs: Element, rhs: Element| RelationInstance {
            family: fam,
            nu: nu.to_vec(),
            params,
            lhs,
            rhs,
        };
        let mut out = Vec::new();
        match fam {
            RelationFamily::Idempotent => {
                for nu2 in seqs {
                    let lhs = Element::word(
                        &vars,
                        GeneratorWord::new(vec![
                            Generator::Idem(nu.to_vec()),
                            Generator::Idem(nu2.clone()),
                        ]),
                    );
                    let rhs = if nu2.as_slice() == nu {
                        word(&[E])
                    } else {
                        Element::zero(&vars)
                    };
                    out.push(inst(
                        RelationParams {
                            nu2: Some(nu2.clone()),
                            ..Default::default()
                        },
                        lhs,
                        rhs,
                    ));
                }
            }
            RelationFamily::XCommute => {
                for k in 1..=m {
                    out.push(inst(
                        RelationParams {
                            k: Some(k),
                            ..Default::default()
                        },
                        word(&[X(k), E]),
                        word(&[E, X(k)]),
                    ));
                }
                for k in 1..=m {
                    for l in k + 1..=m {
                        out.push(inst(
                            RelationParams {
                                k: Some(k),
                                l: Some(l),
                                ..Default::default()
                            },
                            word(&[X(k), X(l)]),
                            word(&[X(l), X(k)]),
                        ));
                    }
                }
            }
            RelationFamily::RIdempotent => {
                for t in 1..m {
                    out.push(inst(
                        RelationParams {
                            t: Some(t),
                            ..Default::default()
                        },
                        word(&[R(t), E]),
                        word(&[E, R(t)]),
                    ));
                }
            }
            RelationFamily::RCommute => {
                for t in 1..m {
                    for s in t + 2..m {
                        out.push(inst(
                            RelationParams {
                                t: Some(t),
                                s: Some(s),
                                ..Default::default()
                            },
                            word(&[R(t), R(s)]),
                            word(&[R(s), R(t)]),
                        ));
                    }
                }
            }
            RelationFamily::RSquare => {
                for t in 1..m {
                    let (a, b) = (nu[t - 1], nu[t]);
                    let rhs = if a == b {
                        let p = self.place2(&self.build_p(a), &vars, t, t + 1);
                        coeff_word(p.demazure(t)?, &[R(t)])
                    } else {
                        coeff_word(self.place2(&self.build_q(a, b), &vars, t, t + 1), &[E])
                    };
                    out.push(inst(
                        RelationParams {
                            t: Some(t),
                            ..Default::default()
                        },
                        word(&[R(t), R(t)]),
                        rhs,
                    ));
                }
            }
            RelationFamily::RX => {
                for t in 1..m {
                    for k in 1..=m {
                        let sk = if k == t {
                            t + 1
                        } else if k == t + 1 {
                            t
                        } else {
                            k
                        };
                        let lhs = word(&[R(t), X(k)]).minus(word(&[X(sk), R(t)]));
                        let equal = nu[t - 1] == nu[t];
                        let rhs = if equal && (k == t || k == t + 1) {
                            let p = self.place2(&self.build_p(nu[t - 1]), &vars, t, t + 1);
                            let p = if k == t { -p } else { p };
                            coeff_word(p, &[E])
                        } else {
                            Element::zero(&vars)
                        };
                        out.push(inst(
                            RelationParams {
                                t: Some(t),
                                k: Some(k),
                                ..Default::default()
                            },
                            lhs,
                            rhs,
                        ));
                    }
                }
            }
            RelationFamily::Braid => {
                for t in 1..m.saturating_sub(1) {
                    let (a, b, c) = (nu[t - 1], nu[t], nu[t + 1]);
                    let lhs = word(&[R(t + 1), R(t), R(t + 1)]).minus(word(&[R(t), R(t + 1), R(t)]));
                    let (case, rhs) = if a == c && a != b {
                        let p = self.place2(&self.build_p(a), &vars, t, t + 2);
                        let qbar = self.place3(&self.build_qbar(a, b)?, &vars, t, t + 1, t + 2);
                        (BraidCase::OuterEqual, coeff_word(&p * &qbar, &[E]))
                    } else if a == b && b == c {
                        let p1 = self.place3(&self.build_pbar_prime(a)?, &vars, t, t + 1, t + 2);
                        let p2 =
                            self.place3(&self.build_pbar_dblprime(a)?, &vars, t, t + 1, t + 2);
                        (
                            BraidCase::AllEqual,
                            coeff_word(p1, &[R(t)]).plus(coeff_word(p2, &[R(t + 1)])),
                        )
                    } else {
                        (BraidCase::Otherwise, Element::zero(&vars))
                    };
                    out.push(inst(
                        RelationParams {
                            t: Some(t),
                            braid_case: Some(case),
                            ..Default::default()
                        },
                        lhs,
                        rhs,
                    ));
                }
            }
        }
        Ok(out)
    }
}

/// Generators of `R(alpha)`: every `e(nu)`, `x_k e(nu)` and `r_t e(nu)`.
pub fn all_generators(alpha: &RootVector, cap: usize) -> Result<Vec<Generator>> {
    let m = alpha.height();
    let mut out = Vec::new();
    for nu in alpha.sequences(cap)? {
        out.push(Generator::Idem(nu.clone()));
        for k in 1..=m {
            out.push(Generator::X { k, nu: nu.clone() });
        }
        for t in 1..m {
            out.push(Generator::Tau { t, nu: nu.clone() });
        }
    }
    for g in &out {
        g.check_indices()?;
    }
    Ok(out)
}
