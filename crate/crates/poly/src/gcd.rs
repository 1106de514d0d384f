//! Multivariate gcd over the rationals by recursive primitive remainder
//! sequences. The main variable at each level is the one of smallest
//! positive degree, which keeps the univariate remainder sequences short
//! for the sparse, low-degree inputs produced by the Euler-class formulas.

use crate::{Monomial, MultiPoly};

/// Greatest common divisor, normalised to have leading coefficient 1.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert!(a.same_vars(b), "gcd over different variable tables");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    if b.divides(a) {
        return b.monic();
    }
    if a.divides(b) {
        return a.monic();
    }
    let ma = a.monomial_content().expect("nonzero");
    let mb = b.monomial_content().expect("nonzero");
    let mono = ma.gcd(&mb);
    let a = strip_monomial(a, &ma);
    let b = strip_monomial(b, &mb);
    let g = gcd_rec(&a, &b);
    g.mul_monomial(&mono).monic()
}

fn strip_monomial(p: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_one() {
        return p.clone();
    }
    MultiPoly::from_terms(
        p.vars(),
        p.terms().map(|(t, c)| (m.quotient_of(t), c.clone())),
    )
}

fn main_variable(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    let n = a.vars().len();
    (0..n)
        .filter_map(|v| {
            let da = a.degree_in(v).unwrap_or(0);
            let db = b.degree_in(v).unwrap_or(0);
            match (da, db) {
                (0, 0) => None,
                (0, d) | (d, 0) => Some((0u16, d, v)),
                (x, y) => Some((x.min(y), x.max(y), v)),
            }
        })
        .min()
        .map(|(_, _, v)| v)
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    let var = match main_variable(a, b) {
        Some(v) => v,
        None => return MultiPoly::one(a.vars()),
    };
    let ca = a.coefficients_in(var);
    let cb = b.coefficients_in(var);
    if ca.len() == 1 || cb.len() == 1 {
        // One side does not involve `var`: the gcd divides every
        // coefficient of the other.
        let mut g = if ca.len() == 1 { ca[0].clone() } else { cb[0].clone() };
        let other = if ca.len() == 1 { &cb } else { &ca };
        for c in other {
            if g.is_constant() {
                break;
            }
            g = gcd(&g, c);
        }
        return g.monic();
    }
    let (conta, pa) = primitive_part(a.vars(), var, &ca);
    let (contb, pb) = primitive_part(a.vars(), var, &cb);
    let cont = gcd(&conta, &contb);
    let prim = primitive_prs(a.vars(), var, pa, pb);
    (&cont * &prim).monic()
}

/// Content (gcd of coefficients in `var`) and the primitive part's
/// coefficient list.
fn primitive_part(
    vars: &std::sync::Arc<crate::VarTable>,
    _var: usize,
    coeffs: &[MultiPoly],
) -> (MultiPoly, Vec<MultiPoly>) {
    let mut cont = MultiPoly::zero(vars);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        cont = if cont.is_zero() { c.monic() } else { gcd(&cont, c) };
        if cont.is_one() {
            break;
        }
    }
    if cont.is_one() || cont.is_zero() {
        return (MultiPoly::one(vars), coeffs.to_vec());
    }
    let prim = coeffs
        .iter()
        .map(|c| c.exact_divide(&cont).expect("content divides coefficient"))
        .collect();
    (cont, prim)
}

fn trim(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while v.len() > 1 && v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` as coefficient lists in the main variable.
fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * bc);
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn primitive_prs(
    vars: &std::sync::Arc<crate::VarTable>,
    var: usize,
    a: Vec<MultiPoly>,
    b: Vec<MultiPoly>,
) -> MultiPoly {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_rem(&a, &b);
        if r.len() == 1 && r[0].is_zero() {
            return MultiPoly::from_coefficients_in(vars, var, &b);
        }
        if r.len() == 1 {
            return MultiPoly::one(vars);
        }
        let (_, pr) = primitive_part(vars, var, &r);
        a = b;
        b = pr;
    }
}
