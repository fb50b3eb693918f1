//! Exhaustive and randomized generation of instances.
//!
//! Spaces are generated through their specialization relations: a topology
//! on a finite carrier is the same thing as a reflexive transitive
//! neighborhood assignment, so scanning all off-diagonal bit patterns and
//! keeping the transitive ones enumerates every labeled topology exactly
//! once. An independent generator that filters raw open-set families is
//! kept alongside as a cross-check oracle at small sizes. Tables are grown
//! cell by cell with early associativity pruning.

use rand::Rng;

use crate::error::{Error, Result};
use crate::finspace::FiniteSpace;
use crate::instance;
use crate::laws::{self, LawId, LawInstance, LawOptions, LawReport, Verdict};
use crate::partition::Partition;
use crate::pointset::{PointSet, EMPTY};
use crate::semigroup::{CayleyTable, Congruence};
use crate::topmonoid::TopMonoid;

const POINT_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn letters(n: usize) -> Vec<String> {
    POINT_NAMES[..n].iter().map(|s| s.to_string()).collect()
}

fn check_size(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        return Err(Error::SizeOutOfRange { size: n, min, max });
    }
    Ok(())
}

/// Every topology on `n` labeled points, in canonical document order.
/// The stream sizes are 1, 4, 29, 355 and 6942 for `n` = 1..=5.
pub fn enum_spaces(n: usize) -> Result<Vec<FiniteSpace>> {
    check_size(n, 1, 5)?;
    let points = letters(n);
    let off_diagonal = n * n - n;
    let mut out = Vec::new();
    'patterns: for pattern in 0u64..(1 << off_diagonal) {
        let mut mins = vec![EMPTY; n];
        let mut bit = 0;
        for (x, min) in mins.iter_mut().enumerate() {
            let mut m = PointSet::singleton(x);
            for y in 0..n {
                if x != y {
                    if pattern >> bit & 1 == 1 {
                        m.insert(y);
                    }
                    bit += 1;
                }
            }
            *min = m;
        }
        for x in 0..n {
            for y in mins[x].iter() {
                if !mins[y].is_subset(mins[x]) {
                    continue 'patterns;
                }
            }
        }
        out.push(FiniteSpace::from_neighborhoods(points.clone(), mins)?);
    }
    out.sort_by_cached_key(|s| instance::to_canonical_json(&instance::doc_from_space(s)));
    Ok(out)
}

/// Cross-check generator: filters every family of subsets for the open-set
/// axioms directly. Exponential in `2^n`, hence the tighter bound.
pub fn enum_spaces_by_families(n: usize) -> Result<Vec<FiniteSpace>> {
    check_size(n, 1, 4)?;
    let points = letters(n);
    let subsets = 1usize << n;
    let full = subsets - 1;
    let mut out = Vec::new();
    'families: for family in 0u64..(1 << subsets) {
        if family & 1 == 0 || family >> full & 1 == 0 {
            continue; // must contain the empty set and the carrier
        }
        let members: Vec<usize> = (0..subsets).filter(|&m| family >> m & 1 == 1).collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if family >> (a | b) & 1 == 0 || family >> (a & b) & 1 == 0 {
                    continue 'families;
                }
            }
        }
        let masks = members.into_iter().map(|m| PointSet(m as u64)).collect();
        out.push(FiniteSpace::from_masks(points.clone(), masks)?);
    }
    out.sort_by_cached_key(|s| instance::to_canonical_json(&instance::doc_from_space(s)));
    Ok(out)
}

/// Grows a Cayley table cell by cell in row-major order, pruning as soon as
/// some fully determined triple breaks associativity. `latin` additionally
/// prunes repeated entries in a row or column, which restricts the stream
/// to cancellative tables.
fn fill_tables(n: usize, latin: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut table = vec![usize::MAX; n * n];
    fn consistent(table: &[usize], n: usize) -> bool {
        for x in 0..n {
            for y in 0..n {
                let xy = table[x * n + y];
                if xy == usize::MAX {
                    continue;
                }
                for z in 0..n {
                    let yz = table[y * n + z];
                    if yz == usize::MAX {
                        continue;
                    }
                    let left = table[xy * n + z];
                    let right = table[x * n + yz];
                    if left != usize::MAX && right != usize::MAX && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn descend(table: &mut Vec<usize>, cell: usize, n: usize, latin: bool, out: &mut Vec<Vec<usize>>) {
        if cell == n * n {
            out.push(table.clone());
            return;
        }
        let (row, col) = (cell / n, cell % n);
        'values: for v in 0..n {
            if latin {
                for y in 0..col {
                    if table[row * n + y] == v {
                        continue 'values;
                    }
                }
                for x in 0..row {
                    if table[x * n + col] == v {
                        continue 'values;
                    }
                }
            }
            table[cell] = v;
            if consistent(table, n) {
                descend(table, cell + 1, n, latin, out);
            }
            table[cell] = usize::MAX;
        }
    }
    descend(&mut table, 0, n, latin, &mut out);
    out
}

/// Every associative table on `n` labeled points, in lexicographic entry
/// order. The stream sizes are 1, 8, 113 and 3492 for `n` = 1..=4.
pub fn enum_tables(n: usize) -> Result<Vec<CayleyTable>> {
    check_size(n, 1, 4)?;
    let points = letters(n);
    fill_tables(n, false)
        .into_iter()
        .map(|entries| CayleyTable::from_indices(points.clone(), entries))
        .collect()
}

/// Every associative table with cancellation on `n` labeled points. Each
/// one turns out to be a group table, which the callers assert.
pub fn enum_cancellative_tables(n: usize) -> Result<Vec<CayleyTable>> {
    check_size(n, 1, 5)?;
    let points = letters(n);
    fill_tables(n, true)
        .into_iter()
        .map(|entries| CayleyTable::from_indices(points.clone(), entries))
        .collect()
}

/// Which assembled monoids to keep. `None` fields do not constrain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProfileFilter {
    pub monoid: Option<bool>,
    pub semitopological: Option<bool>,
    pub topological: Option<bool>,
    pub open_shifts: Option<bool>,
    pub one_sided_open_shifts: Option<bool>,
    pub cancellative: Option<bool>,
}

impl ProfileFilter {
    pub fn matches(&self, tm: &TopMonoid) -> bool {
        let p = tm.profile();
        let checks = [
            (self.monoid, tm.algebra().is_monoid()),
            (self.semitopological, p.semitopological),
            (self.topological, p.topological),
            (self.open_shifts, p.open_shifts),
            (
                self.one_sided_open_shifts,
                p.left_open_shifts || p.right_open_shifts,
            ),
            (self.cancellative, p.cancellative),
        ];
        checks
            .iter()
            .all(|&(want, have)| want.is_none_or(|w| w == have))
    }
}

/// Lazily pairs every topology with every associative table on the same
/// `n` labeled points, keeping the assemblies the filter accepts. Spaces
/// advance in canonical order with tables cycling fastest.
pub fn enum_topmonoids(
    n: usize,
    filter: ProfileFilter,
) -> Result<impl Iterator<Item = TopMonoid>> {
    check_size(n, 1, 4)?;
    let spaces = enum_spaces(n)?;
    let tables = enum_tables(n)?;
    Ok(spaces.into_iter().flat_map(move |space| {
        let tables = tables.clone();
        let space = space.clone();
        tables.into_iter().filter_map(move |table| {
            let tm = TopMonoid::assemble(space.clone(), table)
                .expect("enumerated space and table share a carrier");
            filter.matches(&tm).then_some(tm)
        })
    }))
}

/// A pseudorandom topology: a sparse random relation is made reflexive and
/// transitively closed, and the resulting neighborhoods define the space.
pub fn random_space<R: Rng>(n: usize, rng: &mut R) -> Result<FiniteSpace> {
    check_size(n, 1, POINT_NAMES.len())?;
    let mut rows: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
    for (x, row) in rows.iter_mut().enumerate() {
        for y in 0..n {
            if x != y && rng.gen_range(0..n) == 0 {
                row.insert(y);
            }
        }
    }
    for k in 0..n {
        for x in 0..n {
            if rows[x].contains(k) {
                rows[x] = rows[x] | rows[k];
            }
        }
    }
    FiniteSpace::from_neighborhoods(letters(n), rows)
}

/// A counterexample hunt: sweep every instance of a law's input shape up
/// to `max_size` carrier points, optionally with some hypothesis flags
/// deliberately dropped, and report the first failure found.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub law: LawId,
    /// Largest carrier size swept, per component for pair-shaped laws.
    pub max_size: usize,
    /// Hypothesis flags to skip. Only flags the law actually assumes are
    /// accepted; `open_shifts` is understood for laws that assume the
    /// weaker `one_sided_open_shifts`.
    pub drop: Vec<String>,
    /// Cap on the number of conclusion evaluations; `None` is unbounded.
    pub budget: Option<usize>,
}

/// What a sweep found. `complete` is false only when the budget ran out
/// before the answer was known.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub counterexample: Option<LawReport>,
    pub examined: usize,
    pub complete: bool,
}

/// The largest carrier the sweep will accept for each law, sized so an
/// exhaustive pass stays interactive.
pub fn search_size_cap(law: LawId) -> usize {
    use LawId::*;
    match law {
        // Bare spaces enumerate comfortably to five points.
        L10 | L11 => 5,
        // Spaces crossed with every partition of the carrier.
        L14 => 5,
        // Pairs multiply the space count, and products square the carrier.
        L8 | L9 => 3,
        // Everything else sweeps monoid assemblies.
        _ => 4,
    }
}

fn normalize_drop(law: LawId, drop: &[String]) -> Result<Vec<String>> {
    let assumed = law.hypotheses();
    let mut normalized = Vec::new();
    for entry in drop {
        let flag = if assumed.contains(&entry.as_str()) {
            entry.clone()
        } else if entry == "open_shifts" && assumed.contains(&"one_sided_open_shifts") {
            "one_sided_open_shifts".to_string()
        } else {
            return Err(Error::InvalidSearchSpec(format!(
                "law {law} has no hypothesis `{entry}`; it assumes [{}]",
                assumed.join(", ")
            )));
        };
        if !normalized.contains(&flag) {
            normalized.push(flag);
        }
    }
    Ok(normalized)
}

fn filter_for(law: LawId, dropped: &[String]) -> ProfileFilter {
    let mut filter = ProfileFilter::default();
    for flag in law.hypotheses() {
        if dropped.iter().any(|d| d == flag) {
            continue;
        }
        match *flag {
            "monoid" => filter.monoid = Some(true),
            "semitopological" => filter.semitopological = Some(true),
            "topological" => filter.topological = Some(true),
            "open_shifts" => filter.open_shifts = Some(true),
            "one_sided_open_shifts" => filter.one_sided_open_shifts = Some(true),
            "cancellative" => filter.cancellative = Some(true),
            other => unreachable!("no such hypothesis flag: {other}"),
        }
    }
    filter
}

struct Sweep {
    examined: usize,
    budget: Option<usize>,
    counterexample: Option<LawReport>,
    out_of_budget: bool,
}

impl Sweep {
    fn new(budget: Option<usize>) -> Self {
        Sweep {
            examined: 0,
            budget,
            counterexample: None,
            out_of_budget: false,
        }
    }

    /// Evaluate one instance; returns true when the sweep should stop.
    fn visit(
        &mut self,
        instance: &LawInstance,
        law: LawId,
        dropped: &[String],
    ) -> Result<bool> {
        if self.budget.is_some_and(|b| self.examined >= b) {
            self.out_of_budget = true;
            return Ok(true);
        }
        self.examined += 1;
        let report = laws::evaluate(instance, law, &LawOptions::default(), dropped)?;
        if report.verdict == Verdict::Fails {
            self.counterexample = Some(report);
            return Ok(true);
        }
        Ok(false)
    }

    fn outcome(self) -> SearchOutcome {
        SearchOutcome {
            complete: !self.out_of_budget,
            counterexample: self.counterexample,
            examined: self.examined,
        }
    }
}

/// Run a counterexample sweep. Sizes are visited in ascending order and
/// instances in canonical enumeration order, so the first failure found is
/// a smallest one and reruns are deterministic.
pub fn search(spec: &SearchSpec) -> Result<SearchOutcome> {
    let law = spec.law;
    let cap = search_size_cap(law);
    check_size(spec.max_size, 1, cap)?;
    let dropped = normalize_drop(law, &spec.drop)?;
    let filter = filter_for(law, &dropped);
    let mut sweep = Sweep::new(spec.budget);
    use LawId::*;
    match law {
        L10 | L11 => {
            'sizes: for n in 1..=spec.max_size {
                for space in enum_spaces(n)? {
                    if sweep.visit(&LawInstance::Space(&space), law, &dropped)? {
                        break 'sizes;
                    }
                }
            }
        }
        L14 => {
            'sizes: for n in 1..=spec.max_size {
                for space in enum_spaces(n)? {
                    for partition in Partition::all(space.points()) {
                        let instance = LawInstance::SpacePartition(&space, &partition);
                        if sweep.visit(&instance, law, &dropped)? {
                            break 'sizes;
                        }
                    }
                }
            }
        }
        L9 => {
            'sizes: for bound in 1..=spec.max_size {
                for (na, nb) in pair_sizes(bound) {
                    for a in enum_spaces(na)? {
                        for b in enum_spaces(nb)? {
                            let instance = LawInstance::SpacePair(&a, &b);
                            if sweep.visit(&instance, law, &dropped)? {
                                break 'sizes;
                            }
                        }
                    }
                }
            }
        }
        L8 => {
            'sizes: for bound in 1..=spec.max_size {
                for (na, nb) in pair_sizes(bound) {
                    for a in enum_topmonoids(na, filter)? {
                        for b in enum_topmonoids(nb, filter)? {
                            let instance = LawInstance::MonoidPair(&a, &b);
                            if sweep.visit(&instance, law, &dropped)? {
                                break 'sizes;
                            }
                        }
                    }
                }
            }
        }
        L1 | L2 => {
            'sizes: for n in 1..=spec.max_size {
                for tm in enum_topmonoids(n, filter)? {
                    for partition in tm.algebra().congruences() {
                        let congruence = Congruence::new(tm.algebra(), partition)?;
                        let instance = LawInstance::MonoidCongruence(&tm, &congruence);
                        if sweep.visit(&instance, law, &dropped)? {
                            break 'sizes;
                        }
                    }
                }
            }
        }
        _ => {
            'sizes: for n in 1..=spec.max_size {
                for tm in enum_topmonoids(n, filter)? {
                    if sweep.visit(&LawInstance::Monoid(&tm), law, &dropped)? {
                        break 'sizes;
                    }
                }
            }
        }
    }
    Ok(sweep.outcome())
}

/// Size pairs whose larger side is exactly `bound`, so sweeping bounds in
/// ascending order visits every pair once, smallest maximum first.
fn pair_sizes(bound: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (1..=bound).map(|na| (na, bound)).collect();
    pairs.extend((1..bound).map(|nb| (bound, nb)));
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn space_counts_match_known_values() {
        for (n, want) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
            assert_eq!(enum_spaces(n).unwrap().len(), want, "n = {n}");
        }
    }

    #[test]
    fn generators_agree_where_both_run() {
        for n in 1..=4 {
            let by_relations = enum_spaces(n).unwrap();
            let by_families = enum_spaces_by_families(n).unwrap();
            assert_eq!(by_relations, by_families, "n = {n}");
        }
    }

    #[test]
    fn table_counts_match_known_values() {
        for (n, want) in [(1, 1), (2, 8), (3, 113)] {
            assert_eq!(enum_tables(n).unwrap().len(), want, "n = {n}");
        }
    }

    #[test]
    fn cancellative_tables_are_group_tables() {
        // Counts are sums of n!/|Aut(G)| over the groups of each order.
        for (n, want) in [(1, 1), (2, 2), (3, 3), (4, 16), (5, 30)] {
            let tables = enum_cancellative_tables(n).unwrap();
            assert_eq!(tables.len(), want, "n = {n}");
            assert!(tables.iter().all(|t| t.is_group()));
        }
    }

    #[test]
    fn size_bounds_are_enforced() {
        assert!(matches!(
            enum_spaces(6),
            Err(Error::SizeOutOfRange { size: 6, .. })
        ));
        assert!(matches!(enum_tables(0), Err(Error::SizeOutOfRange { .. })));
        assert!(matches!(
            enum_spaces_by_families(5),
            Err(Error::SizeOutOfRange { .. })
        ));
    }

    #[test]
    fn monoid_stream_respects_filters() {
        let unfiltered = enum_topmonoids(2, ProfileFilter::default())
            .unwrap()
            .count();
        assert_eq!(unfiltered, 4 * 8);
        let filter = ProfileFilter {
            monoid: Some(true),
            topological: Some(true),
            open_shifts: Some(true),
            ..ProfileFilter::default()
        };
        let kept: Vec<TopMonoid> = enum_topmonoids(2, filter).unwrap().collect();
        assert!(!kept.is_empty());
        assert!(kept
            .iter()
            .all(|tm| tm.algebra().is_monoid() && tm.profile().open_shifts));
        assert!(kept.len() < unfiltered);
    }

    #[test]
    fn random_spaces_are_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_space(6, &mut rng).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = random_space(6, &mut rng).unwrap();
        assert_eq!(a, b);
        // Different draws almost surely differ; with this seed they do.
        let c = random_space(6, &mut rng).unwrap();
        assert_ne!(b, c);
    }

    #[test]
    fn search_rejects_bad_specs() {
        let spec = SearchSpec {
            law: LawId::L1,
            max_size: 0,
            drop: vec![],
            budget: None,
        };
        assert!(matches!(
            search(&spec),
            Err(Error::SizeOutOfRange { size: 0, .. })
        ));
        let spec = SearchSpec {
            law: LawId::L10,
            max_size: 6,
            drop: vec![],
            budget: None,
        };
        assert!(matches!(
            search(&spec),
            Err(Error::SizeOutOfRange { size: 6, .. })
        ));
        let spec = SearchSpec {
            law: LawId::L1,
            max_size: 2,
            drop: vec!["cancellative".to_string()],
            budget: None,
        };
        assert!(matches!(search(&spec), Err(Error::InvalidSearchSpec(_))));
    }

    #[test]
    fn search_under_full_hypotheses_finds_nothing() {
        let spec = SearchSpec {
            law: LawId::L1,
            max_size: 2,
            drop: vec![],
            budget: None,
        };
        let out = search(&spec).unwrap();
        assert!(out.counterexample.is_none());
        assert!(out.complete);
        assert!(out.examined > 0);
    }

    #[test]
    fn dropping_the_shift_hypothesis_exposes_a_non_open_projection() {
        // `open_shifts` normalizes to the one-sided flag the law assumes.
        let spec = SearchSpec {
            law: LawId::L1,
            max_size: 3,
            drop: vec!["open_shifts".to_string()],
            budget: None,
        };
        let out = search(&spec).unwrap();
        let report = out.counterexample.expect("a counterexample exists");
        assert!(out.complete);
        assert_eq!(out.examined, 219);
        let witness = report.witness.unwrap();
        assert_eq!(
            witness["congruence"],
            serde_json::json!(["{a,b}", "{c}"]),
        );
        assert_eq!(witness["image"], serde_json::json!(["{a,b}"]));
    }

    #[test]
    fn shift_generated_topologies_can_break_separate_continuity() {
        // The first semitopological monoid whose shift-translated identity
        // neighborhoods generate a topology with a discontinuous shift:
        // two left zeros plus an identity, topologized indiscretely.
        let spec = SearchSpec {
            law: LawId::L15,
            max_size: 3,
            drop: vec![],
            budget: None,
        };
        let out = search(&spec).unwrap();
        let report = out.counterexample.expect("a counterexample exists");
        assert_eq!(out.examined, 19);
        let witness = report.witness.unwrap();
        assert_eq!(
            witness["instance"]["opens"],
            serde_json::json!([[], ["a", "b", "c"]]),
        );
        assert_eq!(
            witness["instance"]["table"],
            serde_json::json!([["a", "a", "a"], ["a", "b", "c"], ["c", "c", "c"]]),
        );
        assert_eq!(witness["profile"]["open_shifts"], serde_json::json!(true));
        assert_eq!(
            witness["profile"]["semitopological"],
            serde_json::json!(false),
        );
    }

    #[test]
    fn search_budget_caps_the_sweep() {
        let spec = SearchSpec {
            law: LawId::L1,
            max_size: 3,
            drop: vec!["open_shifts".to_string()],
            budget: Some(100),
        };
        let out = search(&spec).unwrap();
        assert!(out.counterexample.is_none());
        assert!(!out.complete);
        assert_eq!(out.examined, 100);
    }
}
