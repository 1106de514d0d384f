use std::collections::BTreeMap;

use klr_core::corpus::{corpus, quiver};
use klr_core::fixed_point::FixedPointModel;
use klr_core::graded::GradedDim;
use klr_core::polyrep::{PolVector, PolynomialRep};
use klr_core::presentation::{Element, Generator, GeneratorWord, Letter, Presentation, RelationFamily};
use klr_core::RootVector;
use klr_poly::{BigRational, MultiPoly};
use num_traits::Zero;

fn rep(name: &str, coeffs: Vec<usize>) -> PolynomialRep {
    PolynomialRep::new(&quiver(name).unwrap(), &RootVector::new(coeffs))
}

fn poly(rep: &PolynomialRep, s: &str) -> MultiPoly {
    MultiPoly::parse(rep.vars(), s).unwrap()
}

fn tau(t: usize, nu: &[usize]) -> Generator {
    Generator::Tau { t, nu: nu.to_vec() }
}

#[test]
fn generator_action_examples() {
    let r = rep("a1", vec![2]);
    let out = r.act_generator(&tau(1, &[0, 0]), &PolVector::single(vec![0, 0], poly(&r, "x1"))).unwrap();
    assert_eq!(out, PolVector::single(vec![0, 0], poly(&r, "-1")));

    let r = rep("jordan", vec![2]);
    let out = r.act_generator(&tau(1, &[0, 0]), &PolVector::single(vec![0, 0], poly(&r, "1"))).unwrap();
    assert!(out.is_zero());
    let out = r.act_generator(&tau(1, &[0, 0]), &PolVector::single(vec![0, 0], poly(&r, "x2"))).unwrap();
    assert_eq!(out, PolVector::single(vec![0, 0], poly(&r, "x1 - x2 + hbar[a]")));

    let r = rep("a2", vec![1, 1]);
    let out = r.act_generator(&tau(1, &[0, 1]), &PolVector::single(vec![0, 1], poly(&r, "1"))).unwrap();
    assert_eq!(out, PolVector::single(vec![1, 0], poly(&r, "x1 - x2 + hbar[a]")));
    // No edge j -> i: the reverse crossing only permutes.
    let out = r.act_generator(&tau(1, &[1, 0]), &PolVector::single(vec![1, 0], poly(&r, "x1"))).unwrap();
    assert_eq!(out, PolVector::single(vec![0, 1], poly(&r, "x2")));
    // Off-color inputs are annihilated.
    let out = r.act_generator(&tau(1, &[1, 0]), &PolVector::single(vec![0, 1], poly(&r, "x1"))).unwrap();
    assert!(out.is_zero());
    let out = r
        .act_generator(&Generator::X { k: 2, nu: vec![0, 1] }, &PolVector::single(vec![0, 1], poly(&r, "x1")))
        .unwrap();
    assert_eq!(out, PolVector::single(vec![0, 1], poly(&r, "x1*x2")));
}

#[test]
fn color_mismatch_is_an_error() {
    let r = rep("a2", vec![1, 1]);
    let v = PolVector::single(vec![0, 0], poly(&r, "1"));
    assert!(r.act_generator(&Generator::Idem(vec![0, 0]), &v).is_err());
}

#[test]
fn word_action_examples() {
    let r = rep("a2", vec![1, 1]);
    let v = PolVector::single(vec![0, 1], poly(&r, "x1 + 3"));
    assert_eq!(r.act_word(&GeneratorWord::one(), &v).unwrap(), v);
    let ee = GeneratorWord::new(vec![Generator::Idem(vec![0, 1]), Generator::Idem(vec![1, 0])]);
    assert!(r.act_word(&ee, &v).unwrap().is_zero());

    let r = rep("jordan", vec![2]);
    let v = PolVector::single(vec![0, 0], poly(&r, "x2"));
    let twice = GeneratorWord::from_letters(&[Letter::R(1), Letter::R(1)], &[0, 0]);
    let once = r.act_generator(&tau(1, &[0, 0]), &v).unwrap();
    assert_eq!(r.act_word(&twice, &v).unwrap(), once.times(&poly(&r, "-2")));
}

#[test]
fn r_x_difference_on_jordan_is_minus_p() {
    let r = rep("jordan", vec![2]);
    let vars = r.vars().clone();
    let lhs = Element::word(&vars, GeneratorWord::from_letters(&[Letter::R(1), Letter::X(1)], &[0, 0]))
        .minus(Element::word(&vars, GeneratorWord::from_letters(&[Letter::X(2), Letter::R(1)], &[0, 0])));
    for f in ["1", "x1", "x2^3 - hbar[a]*x1", "x1*x2 + 7"] {
        let v = PolVector::single(vec![0, 0], poly(&r, f));
        let expected = v.times(&poly(&r, "-(x1 - x2 + hbar[a])"));
        assert_eq!(r.act_element(&lhs, &v).unwrap(), expected);
    }
}

/// Degree of every output component is the input degree plus the word
/// degree, or the output vanishes.
#[test]
fn action_is_homogeneous() {
    for (_, q) in corpus().unwrap() {
        let pres = Presentation::new(&q);
        for alpha in RootVector::all_up_to(q.vertex_count(), 3) {
            if alpha.height() < 2 {
                continue;
            }
            let r = PolynomialRep::new(&q, &alpha);
            let m = alpha.height();
            for nu in alpha.sequences(8).unwrap() {
                for letters in [
                    vec![Letter::R(1)],
                    vec![Letter::R(1), Letter::R(1)],
                    vec![Letter::X(m), Letter::R(m - 1), Letter::R(1)],
                ] {
                    let w = GeneratorWord::from_letters(&letters, &nu);
                    let wd = pres.word_degree(&w).unwrap();
                    for mono in r.x_monomials(6) {
                        let v = PolVector::single(nu.clone(), mono.clone());
                        let out = r.act_word(&w, &v).unwrap();
                        if let Some(Some(d)) = out.degree() {
                            assert_eq!(d, mono.degree().unwrap() + wd);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn idempotents_sum_to_identity() {
    let r = rep("loop_edge", vec![2, 1]);
    let vars = r.vars().clone();
    let mut sum = Element::zero(&vars);
    for nu in RootVector::new(vec![2, 1]).sequences(8).unwrap() {
        sum = sum.plus(Element::word(&vars, GeneratorWord::single(Generator::Idem(nu))));
    }
    let v = PolVector::single(vec![0, 1, 0], poly(&r, "x1*x3 - hbar[b]"))
        .add(&PolVector::single(vec![1, 0, 0], poly(&r, "x2^2")));
    assert_eq!(r.act_element(&sum, &v).unwrap(), v);
}

#[test]
fn nil_hecke_square_annihilates_monomials() {
    let r = rep("a1", vec![2]);
    let pres = Presentation::new(&quiver("a1").unwrap());
    let inst = pres
        .relation_catalogue(&RootVector::new(vec![2]), 8)
        .unwrap()
        .into_iter()
        .find(|i| i.family == RelationFamily::RSquare)
        .unwrap();
    assert!(inst.rhs.terms().iter().all(|(c, _)| c.is_zero()) || inst.rhs.terms().is_empty());
    for mono in r.x_monomials(8) {
        let v = PolVector::single(vec![0, 0], mono);
        assert!(r.act_element(&inst.lhs, &v).unwrap().is_zero());
    }
}

#[test]
fn every_relation_holds_on_monomials_up_to_height_four() {
    for (name, q) in corpus().unwrap() {
        let pres = Presentation::new(&q);
        for alpha in RootVector::all_up_to(q.vertex_count(), 4) {
            if alpha.height() == 0 {
                continue;
            }
            let r = PolynomialRep::new(&q, &alpha);
            for inst in pres.relation_catalogue(&alpha, 8).unwrap() {
                let check = r.verify_relation(&inst, 2, 8, 17).unwrap();
                assert!(check.passed(), "{name}: {:?} {:?}", inst.label(&q), check.counterexample);
                assert!(check.monomials > 0);
            }
        }
    }
}

#[test]
fn q_sign_flip_is_caught_on_monomials() {
    let q = klr_core::Quiver::parse(klr_core::corpus::FAULTY_A2).unwrap();
    let alpha = RootVector::new(vec![1, 1]);
    let r = PolynomialRep::new(&q, &alpha);
    let pres = Presentation::new(&q);
    let failed = pres
        .relation_catalogue(&alpha, 8)
        .unwrap()
        .iter()
        .filter(|i| !r.verify_relation(i, 0, 4, 1).unwrap().passed())
        .count();
    assert_eq!(failed, 2);
}

/// Rank over the rationals by fraction-based Gaussian elimination.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot;
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The spanning words act independently on polynomials, with the same
/// rank the fixed-point model reports.
#[test]
fn basis_words_act_independently() {
    for (name, coeffs, nu_out, nu_in, d) in [
        ("a1", vec![2], vec![0, 0], vec![0, 0], 2),
        ("jordan", vec![2], vec![0, 0], vec![0, 0], 2),
        ("a2", vec![1, 1], vec![1, 0], vec![0, 1], 4),
        ("loop_edge", vec![2, 1], vec![0, 1, 0], vec![0, 0, 1], 2),
    ] {
        let q = quiver(name).unwrap();
        let alpha = RootVector::new(coeffs);
        let model = FixedPointModel::new(&q, &alpha).unwrap();
        let words = GradedDim::new(&model).basis_words(&nu_out, &nu_in, d);
        let r = PolynomialRep::new(&q, &alpha);
        let inputs = r.x_monomials(8);
        let mut keys = BTreeMap::new();
        let mut sparse = Vec::new();
        for w in &words {
            let mut row = BTreeMap::new();
            for (n, mono) in inputs.iter().enumerate() {
                let out = r.act_element(w, &PolVector::single(nu_in.clone(), mono.clone())).unwrap();
                for (nu, f) in out.components() {
                    for (m, c) in f.terms() {
                        let key = (n, nu.clone(), m.exponents().to_vec());
                        let next = keys.len();
                        let k = *keys.entry(key).or_insert(next);
                        row.insert(k, c.clone());
                    }
                }
            }
            sparse.push(row);
        }
        let dense = sparse
            .into_iter()
            .map(|row| (0..keys.len()).map(|k| row.get(&k).cloned().unwrap_or_else(BigRational::zero)).collect())
            .collect();
        let rank = rational_rank(dense);
        assert_eq!(rank, words.len(), "{name}");
        let oracle = GradedDim::new(&model).rank_oracle(&nu_out, &nu_in, d, &[5]).unwrap();
        assert_eq!(oracle.rank, rank, "{name}");
    }
}
