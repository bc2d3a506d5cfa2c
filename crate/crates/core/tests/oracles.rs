mod common;

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tree_cycles::arnold::{basis, rank, straighten};
use tree_cycles::{decompose, enumerate_trees, k_sequences, pair, Generator, IntMatrix};

#[test]
fn leibniz_small_cases() {
    assert_eq!(common::leibniz_det(&[]), 1);
    assert_eq!(common::leibniz_det(&[vec![1, 2], vec![3, 4]]), -2);
    assert_eq!(
        common::leibniz_det(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]),
        0
    );
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn det_matches_leibniz(size in 0usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<i64>> = (0..size)
            .map(|_| (0..size).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows);
        let expected = common::leibniz_det(&rows);
        prop_assert_eq!(m.det(), expected);
        prop_assert_eq!(m.det_cofactor(), expected);
        prop_assert_eq!(m.det_bareiss(), expected);
    }
}

#[test]
fn oracle_reads_descendant_sets_like_the_library() {
    for g in 3..=7 {
        for tree in enumerate_trees(g).unwrap() {
            let ours: Vec<Vec<usize>> = tree.descendant_sets().to_vecs();
            let theirs: Vec<Vec<usize>> = common::descendant_sets(&tree.render())
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect();
            assert_eq!(ours, theirs, "{tree}");
        }
    }
}

#[test]
fn decomposition_matches_leibniz_oracle() {
    for g in 3..=6 {
        for tree in enumerate_trees(g).unwrap() {
            let text = tree.render();
            let ours: Vec<(Vec<usize>, i64)> = decompose(&tree)
                .terms()
                .map(|(k, c)| (k.entries().to_vec(), c))
                .collect();
            let theirs: Vec<(Vec<usize>, i64)> = common::decompose(&text).into_iter().collect();
            assert_eq!(ours, theirs, "{text}");
        }
    }
}

#[test]
fn pairing_matches_leibniz_oracle() {
    for g in 3..=6 {
        let ks = k_sequences(g).unwrap();
        for tree in enumerate_trees(g).unwrap() {
            for k in &ks {
                assert_eq!(
                    pair(k, &tree).unwrap(),
                    common::pair(k.entries(), &tree.render()),
                    "k={k} tree={tree}"
                );
            }
        }
    }
}

#[test]
fn arnold_ranks_match_rational_row_reduction() {
    for n in 1..=5 {
        for p in 0..n {
            let oracle = common::ArnoldOracle::new(n, p);
            let dim = oracle.dimension() - oracle.relation_rank();
            assert_eq!(rank(n, p) as usize, dim, "n={n} p={p}");
            assert_eq!(basis(n, p).len(), dim, "n={n} p={p}");

            // The admissible monomials are independent modulo relations.
            let mut span = common::ArnoldOracle::new(n, p);
            for m in basis(n, p) {
                let mut v = span.zero();
                let word: Vec<(usize, usize)> =
                    m.factors().iter().map(|g| (g.i(), g.j())).collect();
                span.accumulate(&mut v, &word, &BigRational::one());
                assert!(span.insert(v), "n={n} p={p}: {m} is dependent");
            }
            assert_eq!(span.relation_rank(), span.dimension());
        }
    }
}

#[test]
fn straightening_stays_in_the_same_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=5 {
        for p in 1..n {
            let oracle = common::ArnoldOracle::new(n, p);
            for _ in 0..60 {
                let word: Vec<(usize, usize)> = (0..p)
                    .map(|_| {
                        let a = rng.gen_range(1..=n);
                        let mut b = rng.gen_range(1..n);
                        if b >= a {
                            b += 1;
                        }
                        (a, b)
                    })
                    .collect();
                let gens: Vec<Generator> = word
                    .iter()
                    .map(|&(a, b)| Generator::new(a, b).unwrap())
                    .collect();
                let normal = straighten(n, &gens).unwrap();
                let mut diff = oracle.zero();
                oracle.accumulate(&mut diff, &word, &BigRational::one());
                for (m, c) in normal.terms() {
                    assert!(m.is_admissible());
                    let w: Vec<(usize, usize)> =
                        m.factors().iter().map(|g| (g.i(), g.j())).collect();
                    oracle.accumulate(&mut diff, &w, &-common::ratio(c));
                }
                assert!(oracle.in_span(diff), "n={n} word={word:?} -> {normal}");
            }
        }
    }
}
