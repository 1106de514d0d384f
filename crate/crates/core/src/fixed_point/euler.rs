//! Torus weights and equivariant Euler classes at the fixed points `F_w`.
//!
//! The fixed point indexed by `w` carries the colors
//! `nu_w = (base_{w(1)}, ..., base_{w(m)})`. Weights are linear forms in the
//! characters `chi_k` (the variable `x_k`) and the edge parameters `hbar_a`.

use std::collections::BTreeSet;
use std::sync::Arc;

use klr_poly::{MultiPoly, RatFunc, VarTable};
use serde::Serialize;

use crate::perm::swap_colors;
use crate::{ColorSequence, CoreError, Perm, Quiver, Result};

/// How `Lambda^{s_j}_{w,w'}^{-1} Lambda_w` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LambdaMode {
    /// Enumerate the tangent weights of the Steinberg cell and divide.
    Direct,
    /// Closed product formulas.
    #[default]
    Quotient,
}

/// A weight `chi_q - chi_p + hbar_a` of the fiber over `F_w`, keyed by the
/// base positions `p`, `q` (0-based) and the edge index `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberWeight {
    pub p: usize,
    pub q: usize,
    pub edge: usize,
}

#[derive(Debug, Clone)]
pub struct EulerClasses {
    quiver: Quiver,
    vars: Arc<VarTable>,
    base: ColorSequence,
}

impl EulerClasses {
    pub fn new(quiver: &Quiver, vars: &Arc<VarTable>, base: &[usize]) -> Self {
        assert_eq!(vars.x_count(), base.len());
        EulerClasses {
            quiver: quiver.clone(),
            vars: vars.clone(),
            base: base.to_vec(),
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    fn chi(&self, p: usize) -> MultiPoly {
        MultiPoly::x(&self.vars, p + 1)
    }

    /// `chi_a - chi_b` for 0-based base positions.
    fn chi_diff(&self, a: usize, b: usize) -> MultiPoly {
        &self.chi(a) - &self.chi(b)
    }

    pub fn colors(&self, w: &Perm) -> ColorSequence {
        w.pull(&self.base)
    }

    /// Tangent weights of the flag variety at `F_w`: for positions
    /// `k < k'` of equal color in `nu_w`, the weight `chi_{w(k')} - chi_{w(k)}`.
    pub fn flag_weights(&self, w: &Perm) -> Vec<MultiPoly> {
        let nu = self.colors(w);
        let m = nu.len();
        let mut out = Vec::new();
        for k in 0..m {
            for k2 in k + 1..m {
                if nu[k] == nu[k2] {
                    out.push(self.chi_diff(w.image(k2), w.image(k)));
                }
            }
        }
        out
    }

    /// Weights of the strictly stable representation space at `F_w`: for
    /// positions `k > k'` and each edge `a: (nu_w)_k -> (nu_w)_{k'}`, the
    /// weight `chi_{w(k')} - chi_{w(k)} + hbar_a`.
    pub fn fiber_keys(&self, w: &Perm) -> Vec<FiberWeight> {
        let nu = self.colors(w);
        let m = nu.len();
        let mut out = Vec::new();
        for k in 0..m {
            for k2 in 0..k {
                for (edge, e) in self.quiver.edges().iter().enumerate() {
                    if e.from == nu[k] && e.to == nu[k2] {
                        out.push(FiberWeight {
                            p: w.image(k),
                            q: w.image(k2),
                            edge,
                        });
                    }
                }
            }
        }
        out
    }

    fn fiber_weight(&self, f: &FiberWeight) -> MultiPoly {
        let id = &self.quiver.edges()[f.edge].id;
        &self.chi_diff(f.q, f.p) + &MultiPoly::hbar(&self.vars, id).expect("edge in alphabet")
    }

    fn product(&self, factors: impl IntoIterator<Item = MultiPoly>) -> MultiPoly {
        factors
            .into_iter()
            .fold(MultiPoly::one(&self.vars), |acc, f| &acc * &f)
    }

    pub fn euler_flag(&self, w: &Perm) -> MultiPoly {
        self.product(self.flag_weights(w))
    }

    pub fn euler_fiber(&self, w: &Perm) -> MultiPoly {
        self.product(self.fiber_keys(w).iter().map(|f| self.fiber_weight(f)))
    }

    /// `Lambda_w = eu(flag) * eu(fiber)`.
    pub fn lambda(&self, w: &Perm) -> MultiPoly {
        &self.euler_flag(w) * &self.euler_fiber(w)
    }

    fn check_admissible(&self, w: &Perm, w2: &Perm, j: usize) -> Result<()> {
        let m = self.base.len();
        if j == 0 || j >= m || w.size() != m || w2.size() != m {
            return Err(CoreError::Inadmissible(format!(
                "j = {j} or permutation sizes do not match m = {m}"
            )));
        }
        let wsj = w.mul_simple_right(j);
        if *w2 != *w && *w2 != wsj {
            return Err(CoreError::Inadmissible(format!(
                "{w2} is neither {w} nor {w} s_{j}"
            )));
        }
        if self.colors(w) != self.colors(&w2.mul_simple_right(j)) {
            return Err(CoreError::Inadmissible(format!(
                "colors at {w} and {w2} s_{j} differ"
            )));
        }
        Ok(())
    }

    /// `Lambda^{s_j}_{w,w'}` from the tangent weights of the Steinberg cell:
    /// flag weights at `F_w`, the extra line of the `P^1` fiber when
    /// `s_j nu = nu`, and the fiber weights shared by `F_w` and `F_{w s_j}`.
    pub fn steinberg_euler(&self, w: &Perm, w2: &Perm, j: usize) -> Result<MultiPoly> {
        Ok(self.product(self.steinberg_weights(w, w2, j)?))
    }

    /// The linear factors of `steinberg_euler`.
    pub fn steinberg_weights(&self, w: &Perm, w2: &Perm, j: usize) -> Result<Vec<MultiPoly>> {
        self.check_admissible(w, w2, j)?;
        let nu = self.colors(w);
        let (a, b) = (w.image(j - 1), w.image(j));
        let mut out = self.flag_weights(w);
        if nu[j - 1] == nu[j] {
            out.push(if w2 == w { self.chi_diff(b, a) } else { self.chi_diff(a, b) });
        }
        let other: BTreeSet<FiberWeight> = self
            .fiber_keys(&w.mul_simple_right(j))
            .into_iter()
            .collect();
        out.extend(
            self.fiber_keys(w)
                .into_iter()
                .filter(|f| other.contains(f))
                .map(|f| self.fiber_weight(&f)),
        );
        Ok(out)
    }

    /// Weights of `Lambda_w`, flag first.
    pub fn lambda_weights(&self, w: &Perm) -> Vec<MultiPoly> {
        let mut out = self.flag_weights(w);
        out.extend(self.fiber_keys(w).iter().map(|f| self.fiber_weight(f)));
        out
    }

    /// `Lambda^{s_j}_{w,w'}^{-1} Lambda_w`.
    pub fn lambda_sj(&self, w: &Perm, w2: &Perm, j: usize, mode: LambdaMode) -> Result<RatFunc> {
        match mode {
            LambdaMode::Direct => {
                // Cancel linear factors up to sign before expanding, so the
                // products stay small.
                let mut num = self.lambda_weights(w);
                let mut den = Vec::new();
                let mut sign = false;
                for f in self.steinberg_weights(w, w2, j)? {
                    if let Some(k) = num.iter().position(|g| *g == f) {
                        num.swap_remove(k);
                    } else if let Some(k) = num.iter().position(|g| *g == -&f) {
                        num.swap_remove(k);
                        sign = !sign;
                    } else {
                        den.push(f);
                    }
                }
                let num = self.product(num);
                let num = if sign { -num } else { num };
                Ok(RatFunc::new(num, self.product(den))?)
            }
            LambdaMode::Quotient => {
                self.check_admissible(w, w2, j)?;
                let nu = self.colors(w);
                let (a, b) = (w.image(j - 1), w.image(j));
                let diff = self.chi_diff(a, b);
                let shifted = |from: usize, to: usize| {
                    self.product(self.quiver.edges_between(from, to).map(|e| {
                        &diff + &MultiPoly::hbar(&self.vars, &e.id).expect("edge in alphabet")
                    }))
                };
                if nu[j - 1] != nu[j] {
                    Ok(RatFunc::from_poly(shifted(nu[j], nu[j - 1])))
                } else {
                    let num = shifted(nu[j - 1], nu[j - 1]);
                    let num = if w2 == w { -num } else { num };
                    Ok(RatFunc::new(num, diff)?)
                }
            }
        }
    }

    /// Every admissible `(w, w', j)` over the given permutations.
    pub fn admissible_triples(&self, perms: &[Perm]) -> Vec<(Perm, Perm, usize)> {
        let m = self.base.len();
        let mut out = Vec::new();
        for w in perms {
            let nu = self.colors(w);
            for j in 1..m {
                let wsj = w.mul_simple_right(j);
                if swap_colors(&nu, j) == nu {
                    out.push((w.clone(), w.clone(), j));
                }
                out.push((w.clone(), wsj, j));
            }
        }
        out
    }
}
