//! Randomized invariants on spaces larger than the exhaustive sweeps
//! reach. Spaces are drawn from seeded generators so every failure is
//! replayable from the shrunken seed alone.

mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sepref_core::{random_space, reflect_space, FiniteSpace, SeparationAxiom};

fn drawn_space(seed: u64, n: usize) -> FiniteSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_space(n, &mut rng).expect("size in range")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn duality_and_closure_oracles(seed in any::<u64>(), n in 5usize..=7) {
        let space = drawn_space(seed, n);
        let full = space.full_set();
        for a in all_subsets(n) {
            prop_assert_eq!(space.interior(a), full - space.closure(full - a));
            prop_assert_eq!(space.closure(a), brute_closure(&space, a));
            prop_assert_eq!(space.interior(a), brute_interior(&space, a));
        }
    }

    #[test]
    fn separation_flags_match_raw_quantifiers(seed in any::<u64>(), n in 5usize..=7) {
        let space = drawn_space(seed, n);
        let flags = space.separation_profile();
        let brute = brute_separation(&space);
        prop_assert_eq!(flags.t0, brute.t0);
        prop_assert_eq!(flags.t1, brute.t1);
        prop_assert_eq!(flags.t2, brute.t2);
        prop_assert_eq!(flags.t3, brute.t3);
        prop_assert_eq!(flags.regular, brute.regular);
        prop_assert_eq!(flags.quasiregular, brute.quasiregular);
    }

    #[test]
    fn cellularity_matches_the_point_subset_scan(seed in any::<u64>(), n in 5usize..=7) {
        let space = drawn_space(seed, n);
        prop_assert_eq!(space.cellularity(), brute_cellularity_over_points(&space));
    }

    #[test]
    fn semiregularization_matches_the_literal_construction(seed in any::<u64>(), n in 5usize..=7) {
        let space = drawn_space(seed, n);
        let sr = space.semiregularization();
        prop_assert_eq!(&sr.semiregularization(), &sr);
        prop_assert_eq!(&sr, &literal_semiregularization(&space));
        prop_assert_eq!(space.cellularity(), sr.cellularity());
    }

    #[test]
    fn t0_identification_preserves_cellularity_and_fixes_opens(
        seed in any::<u64>(),
        n in 5usize..=7,
    ) {
        let space = drawn_space(seed, n);
        let reflection = reflect_space(&space, SeparationAxiom::T0).unwrap();
        prop_assert_eq!(reflection.target().cellularity(), space.cellularity());
        let map = reflection.morphism();
        prop_assert!(definitional_open(map));
        prop_assert!(definitional_closed(map));
        for &u in space.opens() {
            prop_assert_eq!(map.preimage(map.image(u)), u);
        }
    }
}
