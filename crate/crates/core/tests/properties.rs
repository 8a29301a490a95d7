mod common;

use common::{random_graph, random_graph_on, MAX_PARTIES};
use hypercone::catalog::inequality_set;
use hypercone::rational::ratio;
use hypercone::{
    decode_f10, encode_f10, entropy_vector, expand_to_unit_weights, universal_reduction, EntropyVector,
    Hypergraph, MinCutOptions, ReductionOptions,
};
use num_traits::{One, Signed};
use proptest::prelude::*;

fn entropies(g: &Hypergraph) -> EntropyVector {
    entropy_vector(g, &MinCutOptions::default()).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 500, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn min_cut_entropies_obey_shannon_and_ingleton(seed in any::<u64>()) {
        let g = random_graph(seed, MAX_PARTIES);
        let s = entropies(&g);
        for set in ["SA", "SSA", "Ingleton"] {
            for (name, q) in inequality_set(set, g.n()).unwrap() {
                let v = q.evaluate(&s).unwrap();
                prop_assert!(!v.is_negative(), "{name} violated: {v}");
            }
        }
    }

    #[test]
    fn unit_expansion_scales_entropies(seed in any::<u64>()) {
        let g = random_graph(seed, MAX_PARTIES);
        let (scale, unit) = expand_to_unit_weights(&g).unwrap();
        prop_assert!(unit.edges().iter().all(|e| e.weight.is_one()));
        prop_assert_eq!(entropies(&unit), entropies(&g).scaled(&scale));
    }

    #[test]
    fn reduction_preserves_entropies(seed in any::<u64>()) {
        let g = random_graph(seed, 3);
        let reduced = universal_reduction(&g, &ReductionOptions::default()).unwrap();
        prop_assert_eq!(entropies(&reduced), entropies(&g));
    }

    #[test]
    fn entropies_add_over_disjoint_unions(a in any::<u64>(), b in any::<u64>(), n in 1..=MAX_PARTIES) {
        let (g, h) = (random_graph_on(a, n), random_graph_on(b, n));
        let union = entropies(&g.disjoint_union(&h).unwrap());
        let (sg, sh) = (entropies(&g), entropies(&h));
        for ((u, x), y) in union.entries().iter().zip(sg.entries()).zip(sh.entries()) {
            prop_assert_eq!(u, &(x + y));
        }
    }

    #[test]
    fn scaling_weights_scales_entropies(seed in any::<u64>(), p in 1i64..20, q in 1i64..20) {
        let g = random_graph(seed, MAX_PARTIES);
        let c = ratio(p, q);
        prop_assert_eq!(entropies(&g.scaled(&c).unwrap()), entropies(&g).scaled(&c));
    }

    #[test]
    fn f10_round_trips(l in 1usize..=7, rp in 1usize..=8, raw in prop::collection::vec(any::<u64>(), 128)) {
        let values: Vec<u64> = raw[..1 << l].iter().map(|v| v % (1 << rp)).collect();
        let map = decode_f10(&values, l, rp).unwrap();
        prop_assert_eq!(encode_f10(&map), values);
    }

    #[test]
    fn out_of_range_images_are_rejected(l in 1usize..=5, rp in 1usize..=5) {
        let mut values = vec![0u64; 1 << l];
        values[0] = 1 << rp;
        prop_assert!(decode_f10(&values, l, rp).is_err());
    }
}
