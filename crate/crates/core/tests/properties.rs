use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use topotutte::corpus::random_embedding;
use topotutte::embedding::EmbeddedGraph;
use topotutte::poly::invariants::{las_vergnas_embedded, tutte, Config, Method};
use topotutte::matroid::RankMatroid;
use topotutte::poly::{Point, Var};
use num_rational::BigRational;
use num_traits::One;

fn embedding(seed: u64, max_edges: usize) -> EmbeddedGraph {
    random_embedding(&mut ChaCha8Rng::seed_from_u64(seed), max_edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cellular_dual_swaps_subsets(seed in any::<u64>()) {
        let emb = embedding(seed, 7);
        prop_assume!(!emb.has_pinch());
        let r = emb.rotation();
        let d = r.dual().unwrap();
        for a in r.edges().subsets() {
            prop_assert_eq!(r.circles(a), d.circles(r.edges().difference(a)));
        }
        prop_assert_eq!(d.dual().unwrap().total_genus(), r.total_genus());
    }

    #[test]
    fn genus_is_monotone_and_bounded(seed in any::<u64>()) {
        let emb = embedding(seed, 8);
        let r = emb.rotation();
        let all = r.edges();
        for a in all.subsets() {
            for e in all.difference(a) {
                prop_assert!(r.genus(a.with(e)) >= r.genus(a));
            }
            prop_assert!(r.genus(a) <= r.genus(all));
        }
    }

    #[test]
    fn subset_counts_at_two(seed in any::<u64>()) {
        // Every subset contributes 1 to L(2, 2, 1) and to T(2, 2).
        let emb = embedding(seed, 7);
        let cfg = Config::default();
        let l = las_vergnas_embedded(&emb.derive_dagger(), Method::Recursion, &cfg).unwrap();
        let t = tutte(&RankMatroid::cycle(emb.graph()), &cfg).unwrap();
        let two = BigRational::from_integer(2.into());
        let at = Point::zeros().with(Var::X, two.clone()).with(Var::Y, two).with(Var::Z, BigRational::one());
        let count = BigRational::from_integer((1u64 << emb.edges().len()).into());
        prop_assert_eq!(l.eval(&at), count.clone());
        prop_assert_eq!(t.eval(&at), count);
    }
}
