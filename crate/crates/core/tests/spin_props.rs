use facerel::graphmap::random_cubic_map;
use facerel::spin::{all_lie_untwisted_exists, best_twisted_refinement, QuadraticRefinement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn refinement() -> impl Strategy<Value = QuadraticRefinement> {
    (1usize..=8).prop_flat_map(|n| {
        (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n * n)).prop_map(move |(vals, bits)| {
            let mut m = vec![vec![false; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    m[i][j] = bits[i * n + j];
                    m[j][i] = bits[i * n + j];
                }
            }
            QuadraticRefinement::new(vals, m).unwrap()
        })
    })
}

fn with_classes(k: usize) -> impl Strategy<Value = (QuadraticRefinement, Vec<Vec<bool>>)> {
    refinement().prop_flat_map(move |q| {
        let n = q.dim();
        (Just(q), prop::collection::vec(prop::collection::vec(any::<bool>(), n), k))
    })
}

fn xor(x: &[bool], y: &[bool]) -> Vec<bool> {
    x.iter().zip(y).map(|(a, b)| a ^ b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quadratic_law((q, c) in with_classes(2)) {
        let lhs = q.eval(&xor(&c[0], &c[1])).unwrap();
        let rhs = q.eval(&c[0]).unwrap() ^ q.eval(&c[1]).unwrap() ^ q.dot(&c[0], &c[1]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn four_term_sums_do_not_depend_on_order((q, c) in with_classes(4), perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let fold = |order: &[usize]| {
            let mut acc = c[order[0]].clone();
            let mut val = q.eval(&acc).unwrap();
            for &i in &order[1..] {
                val ^= q.eval(&c[i]).unwrap() ^ q.dot(&acc, &c[i]);
                acc = xor(&acc, &c[i]);
            }
            val
        };
        prop_assert_eq!(fold(&[0, 1, 2, 3]), fold(&perm));
        let total = xor(&xor(&c[0], &c[1]), &xor(&c[2], &c[3]));
        prop_assert_eq!(fold(&perm), q.eval(&total).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_maps_follow_the_genus_rule(seed in any::<u64>(), insertions in 0usize..10) {
        let map = random_cubic_map(&mut ChaCha8Rng::seed_from_u64(seed), insertions);
        let report = all_lie_untwisted_exists(&map);
        prop_assert_eq!(report.exists, report.genus % 2 == 1);
        let twisted = best_twisted_refinement(&map).unwrap();
        prop_assert!(twisted.euler_congruence_holds());
    }
}
