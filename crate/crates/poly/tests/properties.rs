use std::sync::Arc;

use klr_poly::{BigInt, BigRational, EvalPoint, Monomial, MultiPoly, RatFunc, VarTable};
use proptest::prelude::*;

fn table(m: usize) -> Arc<VarTable> {
    Arc::new(VarTable::new(m, vec!["a".into(), "b".into()]))
}

/// Random polynomial with at most `terms` terms, each of total exponent at
/// most `max_exp` (graded degree at most `2 * max_exp`).
fn poly_strategy(m: usize, terms: usize, max_exp: u16) -> impl Strategy<Value = MultiPoly> {
    let nvars = m + 2;
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -9i64..=9),
        0..=terms,
    )
    .prop_map(move |raw| {
        let vars = table(m);
        MultiPoly::from_terms(
            &vars,
            raw.into_iter().filter_map(|(mut exps, c)| {
                // Trim to the total-degree budget.
                while exps.iter().map(|&e| e as u32).sum::<u32>() > max_exp as u32 {
                    let i = exps.iter().position(|&e| e > 0).unwrap();
                    exps[i] -= 1;
                }
                (c != 0).then(|| {
                    (
                        Monomial::from_exponents(exps),
                        BigRational::from_integer(BigInt::from(c)),
                    )
                })
            }),
        )
    })
}

fn homogeneous_part(f: &MultiPoly, total: u32) -> MultiPoly {
    MultiPoly::from_terms(
        f.vars(),
        f.terms()
            .filter(|(m, _)| m.total_degree() == total)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn demazure_squares_to_zero(f in poly_strategy(4, 6, 5), t in 1usize..4) {
        let once = f.demazure(t).unwrap();
        prop_assert!(once.demazure(t).unwrap().is_zero());
    }

    #[test]
    fn demazure_braid(f in poly_strategy(5, 5, 5), t in 1usize..4) {
        let lhs = f.demazure(t).unwrap().demazure(t + 1).unwrap().demazure(t).unwrap();
        let rhs = f.demazure(t + 1).unwrap().demazure(t).unwrap().demazure(t + 1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn demazure_commutes_far_apart(f in poly_strategy(5, 5, 4)) {
        let lhs = f.demazure(1).unwrap().demazure(3).unwrap();
        let rhs = f.demazure(3).unwrap().demazure(1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_leibniz(
        f in poly_strategy(3, 4, 3),
        g in poly_strategy(3, 4, 3),
        t in 1usize..3,
    ) {
        let lhs = (&f * &g).demazure(t).unwrap();
        let rhs = &(&f.demazure(t).unwrap() * &g)
            + &(&f.swap_adjacent(t) * &g.demazure(t).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permute_and_demazure_shift_degree(f in poly_strategy(4, 6, 5), t in 1usize..4) {
        prop_assume!(!f.is_zero());
        let top = f.total_degree().unwrap();
        let h = homogeneous_part(&f, top);
        let deg = 2 * top as i64;
        prop_assert_eq!(h.swap_adjacent(t).degree(), Some(deg));
        let d = h.demazure(t).unwrap();
        prop_assert!(d.is_zero() || d.degree() == Some(deg - 2));
    }

    #[test]
    fn permutation_action_law(f in poly_strategy(4, 5, 4), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<usize> = (0..4).collect();
        let mut w: Vec<usize> = (0..4).collect();
        v.shuffle(&mut rng);
        w.shuffle(&mut rng);
        // (vw)(k) = v(w(k)); left action: (vw)f = v(wf).
        let vw: Vec<usize> = (0..4).map(|k| v[w[k]]).collect();
        prop_assert_eq!(f.permute(&vw), f.permute(&w).permute(&v));
    }

    #[test]
    fn evaluation_is_multiplicative(
        f in poly_strategy(3, 5, 4),
        g in poly_strategy(3, 5, 4),
        seed in any::<u64>(),
    ) {
        let pt = EvalPoint::random(5, seed, 1000);
        prop_assert_eq!((&f * &g).evaluate(&pt), f.evaluate(&pt) * g.evaluate(&pt));
        prop_assert_eq!((&f + &g).evaluate(&pt), f.evaluate(&pt) + g.evaluate(&pt));
    }

    #[test]
    fn exact_divide_recovers_factor(f in poly_strategy(3, 4, 3), g in poly_strategy(3, 3, 2)) {
        prop_assume!(!g.is_zero());
        let prod = &f * &g;
        prop_assert_eq!(prod.exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn ratfunc_inverses(
        f in poly_strategy(3, 3, 2),
        g in poly_strategy(3, 3, 2),
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let r = RatFunc::new(f, g).unwrap();
        prop_assert!((&r + &(-&r)).is_zero());
        prop_assert!((&r * &r.inv().unwrap()).is_one());
    }

    #[test]
    fn ratfunc_normal_form_is_canonical(
        f in poly_strategy(2, 3, 2),
        g in poly_strategy(2, 3, 2),
        h in poly_strategy(2, 3, 2),
    ) {
        prop_assume!(!g.is_zero() && !h.is_zero());
        let a = RatFunc::new(f.clone(), g.clone()).unwrap();
        let b = RatFunc::new(&f * &h, &g * &h).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn display_parse_roundtrip(f in poly_strategy(3, 6, 4)) {
        let text = f.to_string();
        prop_assert_eq!(MultiPoly::parse(f.vars(), &text).unwrap(), f);
    }
}

#[test]
fn sum_of_opposite_fractions_is_zero() {
    let v = table(2);
    let d = MultiPoly::parse(&v, "x1 - x2").unwrap();
    let r1 = RatFunc::new(MultiPoly::one(&v), d.clone()).unwrap();
    let r2 = RatFunc::new(MultiPoly::one(&v), -d).unwrap();
    assert!((&r1 + &r2).is_zero());
}
