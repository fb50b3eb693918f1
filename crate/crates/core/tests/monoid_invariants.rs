//! Exhaustive invariants for topologized monoids, their congruences, and
//! their reflections, checked against the definitional oracles in
//! `common`.

mod common;

use common::*;
use sepref_core::{
    enum_spaces, enum_tables, enum_topmonoids, reflect_monoid, Congruence, Partition,
    ProfileFilter, SeparationAxiom, TopMonoid,
};

fn assemblies_up_to(n: usize, filter: ProfileFilter) -> impl Iterator<Item = TopMonoid> {
    (1..=n).flat_map(move |k| enum_topmonoids(k, filter).expect("size in range"))
}

#[test]
fn profile_flags_match_their_definitions() {
    for tm in assemblies_up_to(3, ProfileFilter::default()) {
        let p = tm.profile();
        assert_eq!(p.semitopological, definitional_semitopological(&tm));
        assert_eq!(p.topological, definitional_topological(&tm));
        let (left, right) = definitional_open_shifts(&tm);
        assert_eq!(p.left_open_shifts, left);
        assert_eq!(p.right_open_shifts, right);
        assert_eq!(p.open_shifts, left && right);
        assert_eq!(p.cancellative, tm.algebra().is_cancellative());
    }
}

#[test]
fn separate_and_joint_continuity_coincide_on_finite_carriers() {
    for tm in assemblies_up_to(3, ProfileFilter::default()) {
        let p = tm.profile();
        assert_eq!(
            p.semitopological, p.topological,
            "a finite carrier collapses separate into joint continuity"
        );
    }
}

#[test]
fn one_sided_open_shifts_make_every_quotient_projection_open() {
    let filter = ProfileFilter {
        monoid: Some(true),
        semitopological: Some(true),
        one_sided_open_shifts: Some(true),
        ..ProfileFilter::default()
    };
    for tm in assemblies_up_to(3, filter) {
        for partition in tm.algebra().congruences() {
            let congruence = Congruence::new(tm.algebra(), partition).unwrap();
            let (_, map) = tm.quotient(&congruence).unwrap();
            assert!(map.profile().open);
            assert!(definitional_open(&map));
        }
    }
}

#[test]
fn quotients_are_t2_exactly_when_the_congruence_is_closed() {
    let filter = ProfileFilter {
        monoid: Some(true),
        semitopological: Some(true),
        one_sided_open_shifts: Some(true),
        ..ProfileFilter::default()
    };
    for tm in assemblies_up_to(3, filter) {
        for partition in tm.algebra().congruences() {
            let closed = tm.congruence_is_closed(&partition).unwrap();
            let congruence = Congruence::new(tm.algebra(), partition).unwrap();
            let (target, _) = tm.quotient(&congruence).unwrap();
            assert_eq!(target.space().separation_profile().t2, closed);
        }
    }
}

#[test]
fn t2_quotient_criterion_for_bare_spaces() {
    for n in 1..=3 {
        for space in enum_spaces(n).unwrap() {
            for partition in Partition::all(space.points()) {
                let (quotient, map) = space.quotient(&partition).unwrap();
                let t2 = quotient.separation_profile().t2;
                let rows = partition.pair_rows();
                let closed = space.pair_closure(&rows) == rows;
                if t2 {
                    assert!(closed, "a t2 quotient needs a closed relation");
                }
                if map.profile().open && closed {
                    assert!(t2, "closed relation plus open projection forces t2");
                }
            }
        }
    }
}

#[test]
fn semiregularization_preserves_joint_continuity() {
    let filter = ProfileFilter {
        topological: Some(true),
        open_shifts: Some(true),
        ..ProfileFilter::default()
    };
    for tm in assemblies_up_to(3, filter) {
        let coarsened =
            TopMonoid::assemble(tm.space().semiregularization(), tm.algebra().clone()).unwrap();
        assert!(coarsened.profile().topological);
        assert!(definitional_topological(&coarsened));
    }
}

#[test]
fn open_shift_topological_monoids_are_quasiregular_up_to_four_points() {
    let filter = ProfileFilter {
        monoid: Some(true),
        topological: Some(true),
        open_shifts: Some(true),
        ..ProfileFilter::default()
    };
    let mut seen = 0usize;
    for tm in assemblies_up_to(4, filter) {
        assert!(
            tm.space().separation_profile().quasiregular,
            "failed on {:?}",
            tm.space().opens()
        );
        seen += 1;
    }
    assert!(seen > 100, "the sweep should cover a real population");
}

#[test]
fn congruence_closure_is_a_closure_operator() {
    for n in 1..=3usize {
        for table in enum_tables(n).unwrap() {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .collect();
            for bits in 0u32..(1 << pairs.len()) {
                let seed: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let closure = table.congruence_closure(&seed).unwrap();
                let partition = closure.partition();
                for &(x, y) in &seed {
                    assert!(partition.same_block(x, y), "extensive");
                }
                // Idempotent: re-closing the full pair set of the result
                // changes nothing.
                let repairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .filter(|&(x, y)| partition.same_block(x, y))
                    .collect();
                let again = table.congruence_closure(&repairs).unwrap();
                assert_eq!(again.partition(), partition, "idempotent");
                // Monotone: adding one more pair only coarsens.
                for &extra in &pairs {
                    let mut bigger = seed.clone();
                    bigger.push(extra);
                    let coarser = table.congruence_closure(&bigger).unwrap();
                    assert!(
                        partition.refines(coarser.partition()),
                        "monotone in the seed"
                    );
                }
            }
        }
    }
}

#[test]
fn congruences_form_a_lattice() {
    for n in 1..=3usize {
        for table in enum_tables(n).unwrap() {
            let congruences = table.congruences();
            for a in &congruences {
                for b in &congruences {
                    let meet = a.meet(b);
                    assert!(table.is_congruence(&meet).unwrap(), "meets stay congruences");
                    // Join: close the union of the two pair sets.
                    let union_pairs: Vec<(usize, usize)> = (0..n)
                        .flat_map(|x| (0..n).map(move |y| (x, y)))
                        .filter(|&(x, y)| a.same_block(x, y) || b.same_block(x, y))
                        .collect();
                    let join = table.congruence_closure(&union_pairs).unwrap();
                    assert!(a.refines(join.partition()));
                    assert!(b.refines(join.partition()));
                }
            }
        }
    }
}

#[test]
fn reflection_targets_are_semitopological_and_morphisms_are_multiplicative() {
    let filter = ProfileFilter {
        monoid: Some(true),
        semitopological: Some(true),
        ..ProfileFilter::default()
    };
    for tm in assemblies_up_to(3, filter) {
        let p = tm.profile();
        for axiom in SeparationAxiom::ALL {
            let gate = match axiom {
                SeparationAxiom::T0 | SeparationAxiom::T1 => p.open_shifts,
                SeparationAxiom::T2 => p.left_open_shifts || p.right_open_shifts,
                SeparationAxiom::T3 | SeparationAxiom::Regular => p.topological && p.open_shifts,
            };
            if !gate {
                continue;
            }
            let reflection = reflect_monoid(&tm, axiom).unwrap();
            let target = reflection.target();
            assert!(target.profile().semitopological);
            assert!(definitional_semitopological(target));
            let map = reflection.morphism();
            let assignment = map.assignment();
            for x in 0..tm.n() {
                for y in 0..tm.n() {
                    assert_eq!(
                        assignment[tm.algebra().mul(x, y)],
                        target.algebra().mul(assignment[x], assignment[y]),
                        "the arrow is a homomorphism"
                    );
                }
            }
            assert!(definitional_continuous(map));
        }
    }
}

#[test]
fn cellularity_is_constant_along_reflections() {
    let filter = ProfileFilter {
        monoid: Some(true),
        topological: Some(true),
        open_shifts: Some(true),
        ..ProfileFilter::default()
    };
    for tm in assemblies_up_to(3, filter) {
        let base = tm.space().cellularity();
        for axiom in SeparationAxiom::ALL {
            let reflection = reflect_monoid(&tm, axiom).unwrap();
            assert_eq!(reflection.target().space().cellularity(), base);
        }
    }
}
