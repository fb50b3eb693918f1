//! Independent oracles for the integration suites.
//!
//! Everything here recomputes a library answer from raw definitions —
//! quantifying over whole open-set lattices, scanning all subsets, or
//! closing families literally — so agreement is meaningful evidence and
//! not a tautology.

#![allow(dead_code)]

use sepref_core::{FiniteSpace, PointSet, SpaceMap, TopMonoid, EMPTY};

/// Every subset of an `n`-point carrier.
pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
    (0u64..(1u64 << n)).map(PointSet)
}

/// Smallest closed superset, by intersecting every closed superset.
pub fn brute_closure(space: &FiniteSpace, s: PointSet) -> PointSet {
    let full = space.full_set();
    let mut acc = full;
    for &u in space.opens() {
        let closed = full - u;
        if s.is_subset(closed) {
            acc = acc & closed;
        }
    }
    acc
}

/// Largest open subset, by uniting every open subset.
pub fn brute_interior(space: &FiniteSpace, s: PointSet) -> PointSet {
    let mut acc = EMPTY;
    for &u in space.opens() {
        if u.is_subset(s) {
            acc = acc | u;
        }
    }
    acc
}

/// Separation flags recomputed from raw quantifiers over the open-set
/// lattice, with the quasiregular flag routed through the literal
/// semiregularization below.
pub struct BruteSeparation {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
    pub regular: bool,
    pub quasiregular: bool,
}

fn raw_t3(space: &FiniteSpace) -> bool {
    let full = space.full_set();
    let opens = space.opens();
    (0..space.n()).all(|x| {
        opens.iter().map(|&w| full - w).all(|closed| {
            closed.contains(x)
                || closed.is_empty()
                || opens.iter().any(|&u| {
                    u.contains(x) && opens.iter().any(|&v| closed.is_subset(v) && !u.intersects(v))
                })
        })
    })
}

pub fn brute_separation(space: &FiniteSpace) -> BruteSeparation {
    let n = space.n();
    let opens = space.opens();
    let pairs = || (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)));
    let t0 = pairs().all(|(x, y)| {
        opens
            .iter()
            .any(|u| u.contains(x) != u.contains(y))
    });
    let t1 = pairs().all(|(x, y)| {
        opens.iter().any(|u| u.contains(x) && !u.contains(y))
            && opens.iter().any(|u| u.contains(y) && !u.contains(x))
    });
    let t2 = pairs().all(|(x, y)| {
        opens.iter().any(|&u| {
            u.contains(x) && opens.iter().any(|&v| v.contains(y) && !u.intersects(v))
        })
    });
    let t3 = raw_t3(space);
    let regular = t3 && t0;
    let quasiregular = raw_t3(&literal_semiregularization(space));
    BruteSeparation {
        t0,
        t1,
        t2,
        t3,
        regular,
        quasiregular,
    }
}

/// The topology a family generates, closed literally: seed with the empty
/// set and the carrier, then alternate pairwise intersections and unions
/// until nothing new appears.
pub fn literal_generated_topology(n: usize, family: &[PointSet]) -> Vec<PointSet> {
    let full = PointSet::full(n);
    let mut sets: Vec<PointSet> = vec![EMPTY, full];
    for &s in family {
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    loop {
        let mut fresh = Vec::new();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                for candidate in [sets[i] & sets[j], sets[i] | sets[j]] {
                    if !sets.contains(&candidate) && !fresh.contains(&candidate) {
                        fresh.push(candidate);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        sets.extend(fresh);
    }
    sets
}

/// Semiregularization recomputed from the definition: collect the opens
/// fixed by interior-of-closure and literally close the family they
/// generate.
pub fn literal_semiregularization(space: &FiniteSpace) -> FiniteSpace {
    let regular_opens: Vec<PointSet> = space
        .opens()
        .iter()
        .copied()
        .filter(|&u| brute_interior(space, brute_closure(space, u)) == u)
        .collect();
    let opens = literal_generated_topology(space.n(), &regular_opens);
    FiniteSpace::from_masks(space.points().to_vec(), opens)
        .expect("a literally closed family is a topology")
}

/// Largest pairwise-disjoint family of nonempty opens, by exhaustive
/// branching over the open-set list. Feasible while the lattice is small.
pub fn brute_cellularity_over_opens(space: &FiniteSpace) -> usize {
    let opens: Vec<PointSet> = space
        .opens()
        .iter()
        .copied()
        .filter(|u| !u.is_empty())
        .collect();
    fn grow(opens: &[PointSet], taken: PointSet, from: usize) -> usize {
        let mut best = 0;
        for i in from..opens.len() {
            if !opens[i].intersects(taken) {
                best = best.max(1 + grow(opens, taken | opens[i], i + 1));
            }
        }
        best
    }
    grow(&opens, EMPTY, 0)
}

/// Largest set of points with pairwise-disjoint minimal neighborhoods, by
/// scanning all point subsets. Agrees with the open-family maximum because
/// each member of a disjoint family can be shrunk to a minimal
/// neighborhood it contains.
pub fn brute_cellularity_over_points(space: &FiniteSpace) -> usize {
    let n = space.n();
    all_subsets(n)
        .filter(|t| {
            let chosen: Vec<usize> = t.iter().collect();
            chosen.iter().enumerate().all(|(i, &x)| {
                chosen[i + 1..]
                    .iter()
                    .all(|&y| !space.min_open(x).intersects(space.min_open(y)))
            })
        })
        .map(|t| t.len())
        .max()
        .unwrap_or(0)
}

/// Openness of a map straight from the definition.
pub fn definitional_open(map: &SpaceMap) -> bool {
    map.source()
        .opens()
        .iter()
        .all(|&u| map.target().is_open(map.image(u)))
}

/// Closedness of a map straight from the definition.
pub fn definitional_closed(map: &SpaceMap) -> bool {
    let full = map.source().full_set();
    map.source()
        .opens()
        .iter()
        .all(|&u| map.target().is_closed(map.image(full - u)))
}

/// Continuity of a map straight from the definition.
pub fn definitional_continuous(map: &SpaceMap) -> bool {
    map.target()
        .opens()
        .iter()
        .all(|&v| map.source().is_open(map.preimage(v)))
}

/// The quotient property, by comparing the target lattice against the
/// final topology over every subset of the target carrier.
pub fn quotient_flag_oracle(map: &SpaceMap) -> bool {
    if !map.is_surjective() {
        return false;
    }
    all_subsets(map.target().n())
        .all(|v| map.target().is_open(v) == map.source().is_open(map.preimage(v)))
}

/// Multiplication as an honest map out of the materialized square, for
/// definitional joint-continuity checks.
pub fn materialized_multiplication(tm: &TopMonoid) -> SpaceMap {
    let n = tm.n();
    let square = tm
        .space()
        .product(tm.space())
        .expect("squares of small spaces stay in range");
    for k in 0..n * n {
        let expected = format!(
            "({},{})",
            tm.space().points()[k / n],
            tm.space().points()[k % n]
        );
        assert_eq!(square.points()[k], expected, "product point order changed");
    }
    let assignment: Vec<usize> = (0..n * n).map(|k| tm.algebra().mul(k / n, k % n)).collect();
    SpaceMap::new(square, tm.space().clone(), assignment)
        .expect("multiplication lands in the carrier")
}

/// One shift of the algebra as a self-map of the carrier space.
pub fn shift_map(tm: &TopMonoid, a: usize, left: bool) -> SpaceMap {
    let n = tm.n();
    let assignment: Vec<usize> = (0..n)
        .map(|x| {
            if left {
                tm.algebra().mul(a, x)
            } else {
                tm.algebra().mul(x, a)
            }
        })
        .collect();
    SpaceMap::new(tm.space().clone(), tm.space().clone(), assignment)
        .expect("shifts land in the carrier")
}

/// Both one-sided open-shift flags from the definition: the image of every
/// open under every shift must be open.
pub fn definitional_open_shifts(tm: &TopMonoid) -> (bool, bool) {
    let n = tm.n();
    let left = (0..n).all(|a| definitional_open(&shift_map(tm, a, true)));
    let right = (0..n).all(|a| definitional_open(&shift_map(tm, a, false)));
    (left, right)
}

/// Separate continuity from the definition: every shift, both sides, is a
/// continuous self-map.
pub fn definitional_semitopological(tm: &TopMonoid) -> bool {
    let n = tm.n();
    (0..n).all(|a| {
        definitional_continuous(&shift_map(tm, a, true))
            && definitional_continuous(&shift_map(tm, a, false))
    })
}

/// Joint continuity from the definition, through the materialized square.
pub fn definitional_topological(tm: &TopMonoid) -> bool {
    definitional_continuous(&materialized_multiplication(tm))
}
