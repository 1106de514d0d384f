use klr_core::corpus::{corpus, quiver};
use klr_core::fixed_point::FixedPointModel;
use klr_core::{CoreError, Perm, Quiver, RootVector};
use proptest::prelude::*;

fn matrix(name: &str) -> Vec<Vec<i64>> {
    quiver(name).unwrap().derive_datum().matrix
}

#[test]
fn corpus_matrices() {
    assert_eq!(matrix("a1"), vec![vec![2]]);
    assert_eq!(matrix("jordan"), vec![vec![0]]);
    assert_eq!(matrix("a2"), vec![vec![2, -1], vec![-1, 2]]);
    assert_eq!(matrix("two_loop"), vec![vec![-2]]);
    assert_eq!(matrix("loop_edge"), vec![vec![0, -1], vec![-1, 2]]);
}

#[test]
fn real_and_imaginary_vertices() {
    let d = quiver("a1").unwrap().derive_datum();
    assert_eq!(d.real_vertices, vec!["i"]);
    assert!(d.imaginary_vertices.is_empty());
    let d = quiver("jordan").unwrap().derive_datum();
    assert_eq!(d.imaginary_vertices, vec!["i"]);
    assert_eq!(d.loop_counts, vec![1]);
    let d = quiver("loop_edge").unwrap().derive_datum();
    assert_eq!(d.real_vertices, vec!["j"]);
    assert_eq!(d.arrow_counts, vec![vec![1, 1], vec![0, 0]]);
    assert_eq!(d.edge_index[0][1], vec!["b"]);
}

#[test]
fn parse_minimal_documents() {
    let q = Quiver::parse(r#"{"vertices":["i"]}"#).unwrap();
    assert_eq!(q.vertex_count(), 1);
    assert!(q.edges().is_empty());
    let q = Quiver::parse(r#"{"vertices":["i"],"edges":[{"id":"a","from":"i","to":"i"}]}"#).unwrap();
    assert_eq!(q.loop_count(0), 1);
    let q = quiver("a2").unwrap();
    assert_eq!((q.edges()[0].from, q.edges()[0].to), (0, 1));
}

#[test]
fn parse_round_trips() {
    for (_, q) in corpus().unwrap() {
        assert_eq!(Quiver::parse(&q.to_json()).unwrap(), q);
    }
}

#[test]
fn parse_errors_carry_locations() {
    let err = |text: &str| Quiver::parse(text).unwrap_err();
    assert!(matches!(err("{\"vertices\": [\"i\"],\n \"edges\": ["), CoreError::Syntax { line: 2, .. }));
    match err(r#"{"vertices":["i","i"]}"#) {
        CoreError::Invalid { location, .. } => assert_eq!(location, "vertices[1]"),
        e => panic!("{e}"),
    }
    match err(r#"{"vertices":["i"],"edges":[{"id":"a","from":"i","to":"i"},{"id":"a","from":"i","to":"i"}]}"#) {
        CoreError::Invalid { location, .. } => assert_eq!(location, "edges[1].id"),
        e => panic!("{e}"),
    }
    match err(r#"{"vertices":["i"],"edges":[{"id":"a","from":"i","to":"k"}]}"#) {
        CoreError::Invalid { location, .. } => assert_eq!(location, "edges[0].to"),
        e => panic!("{e}"),
    }
    assert!(matches!(err(r#"{"vertices":[]}"#), CoreError::Invalid { .. }));
    assert!(matches!(err(r#"{"vertices":["i"],"colour":1}"#), CoreError::Syntax { .. }));
}

#[test]
fn sequence_examples() {
    let q = quiver("a2").unwrap();
    let a = RootVector::parse(&q, r#"{"i":1,"j":1}"#).unwrap();
    assert_eq!(a.sequences(8).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    let a = RootVector::parse(&q, r#"{"i":2}"#).unwrap();
    assert_eq!(a.sequences(8).unwrap(), vec![vec![0, 0]]);
    let a = RootVector::parse(&q, "2i+j").unwrap();
    assert_eq!(a.sequences(8).unwrap().len(), 3);
    assert!(RootVector::parse(&q, r#"{"k":1}"#).is_err());
}

#[test]
fn weyl_action_examples() {
    let nu = ["i", "j", "k"];
    assert_eq!(Perm::simple(3, 1).act(&nu).unwrap(), ["j", "i", "k"]);
    assert_eq!(Perm::identity(3).act(&nu).unwrap(), nu);
    // The cycle 1 -> 2 -> 3 -> 1.
    let c = Perm::from_one_line(&[2, 3, 1]).unwrap();
    assert_eq!(c.act(&nu).unwrap(), ["k", "i", "j"]);
    assert!(matches!(c.act(&["i"]), Err(CoreError::LengthMismatch { .. })));
}

fn stabilizer_sizes(q: &Quiver, coeffs: Vec<usize>) -> Vec<(Vec<usize>, usize)> {
    let m = FixedPointModel::new(q, &RootVector::new(coeffs)).unwrap();
    m.blocks().map(|(nu, b)| (nu.clone(), b.len())).collect()
}

#[test]
fn stabilizer_class_examples() {
    let a1 = quiver("a1").unwrap();
    assert_eq!(stabilizer_sizes(&a1, vec![2]), vec![(vec![0, 0], 2)]);
    let a2 = quiver("a2").unwrap();
    let m = FixedPointModel::new(&a2, &RootVector::new(vec![1, 1])).unwrap();
    assert_eq!(m.perm(m.block(&[0, 1]).unwrap()[0]), &Perm::identity(2));
    assert_eq!(m.perm(m.block(&[1, 0]).unwrap()[0]), &Perm::simple(2, 1));
    let sizes = stabilizer_sizes(&a2, vec![2, 1]);
    assert!(sizes.iter().all(|(_, n)| *n == 2));
    assert!(sizes.contains(&(vec![0, 0, 1], 2)));
}

fn arb_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=8).prop_map(move |pairs| {
            let vertices = (0..n).map(|i| format!("v{i}")).collect();
            let edges = pairs
                .into_iter()
                .enumerate()
                .map(|(k, (a, b))| (format!("e{k}"), format!("v{a}"), format!("v{b}")))
                .collect();
            Quiver::new(vertices, edges).unwrap()
        })
    })
}

fn arb_perm(m: usize) -> impl Strategy<Value = Perm> {
    Just((0..m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(Perm::from_images)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

proptest! {
    #[test]
    fn datum_is_symmetric_with_even_diagonal(q in arb_quiver()) {
        let d = q.derive_datum();
        let n = q.vertex_count();
        for i in 0..n {
            prop_assert_eq!(d.matrix[i][i] % 2, 0);
            prop_assert!(d.matrix[i][i] <= 2);
            prop_assert_eq!(d.is_real(i), d.matrix[i][i] == 2);
            for j in 0..n {
                prop_assert_eq!(d.matrix[i][j], d.matrix[j][i]);
                if i != j {
                    prop_assert!(d.matrix[i][j] <= 0);
                }
            }
        }
        prop_assert_eq!(Quiver::parse(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn weyl_action_is_a_left_action(
        (v, w, nu) in (1usize..=6).prop_flat_map(|m| (arb_perm(m), arb_perm(m), prop::collection::vec(0usize..3, m)))
    ) {
        let vw = v.compose(&w);
        prop_assert_eq!(vw.act(&nu).unwrap(), v.act(&w.act(&nu).unwrap()).unwrap());
    }

    #[test]
    fn stabilizers_partition_the_symmetric_group(coeffs in prop::collection::vec(0usize..=3, 1..=3)) {
        let alpha = RootVector::new(coeffs.clone());
        let m = alpha.height();
        prop_assume!((1..=6).contains(&m));
        let seqs = alpha.sequences(8).unwrap();
        let multinomial = factorial(m) / coeffs.iter().map(|&k| factorial(k)).product::<usize>();
        prop_assert_eq!(seqs.len(), multinomial);
        prop_assert_eq!(alpha.multinomial() as usize, multinomial);
        let mut sorted = seqs.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(&sorted, &seqs);

        let base = alpha.base_sequence();
        let mut total = 0;
        for nu in &seqs {
            let size = Perm::all(m).iter().filter(|w| &w.pull(&base) == nu).count();
            prop_assert_eq!(size, coeffs.iter().map(|&k| factorial(k)).product::<usize>());
            total += size;
        }
        prop_assert_eq!(total, factorial(m));
    }
}
