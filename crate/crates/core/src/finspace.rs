//! Finite topological spaces.
//!
//! A finite topology is stored two ways at once: the full open-set lattice
//! (canonically sorted bitmasks) and the minimal-open-neighborhood map
//! `min_open(x)` = intersection of all opens containing `x`. The two are
//! interchangeable: every open set is the union of the minimal opens of its
//! members, so openness, closure, interior, continuity, and the separation
//! flags all reduce to word operations on `min_open`. The lattice remains
//! the validation and interchange form; the reductions are asserted against
//! the raw definitional quantifiers in the test suites.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::pointset::{PointSet, EMPTY, MAX_POINTS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<PointSet>,
    min_open: Vec<PointSet>,
}

/// Separation flags of one space. `t3` is point/closed-set separation with
/// no lower axiom folded in; `regular` is `t3 && t0`; `quasiregular` says
/// the semiregularization is `t3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFlags {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
    pub regular: bool,
    pub quasiregular: bool,
}

impl FiniteSpace {
    /// Builds a space from named points and named open sets, validating the
    /// topology axioms. The opens may arrive in any order and with
    /// duplicates; they are canonicalized.
    pub fn make_space(points: Vec<String>, opens: &[Vec<String>]) -> Result<Self> {
        let index = validate_points(&points)?;
        let mut masks = Vec::with_capacity(opens.len());
        for open in opens {
            let mut mask = EMPTY;
            for name in open {
                match index.iter().position(|p| *p == name.as_str()) {
                    Some(i) => mask.insert(i),
                    None => return Err(Error::ForeignPoint(name.clone())),
                }
            }
            masks.push(mask);
        }
        Self::from_masks(points, masks)
    }

    /// Mask-level constructor with the same validation as [`make_space`].
    ///
    /// [`make_space`]: FiniteSpace::make_space
    pub fn from_masks(points: Vec<String>, mut opens: Vec<PointSet>) -> Result<Self> {
        validate_points(&points)?;
        let n = points.len();
        let full = PointSet::full(n);
        if let Some(bad) = opens.iter().find(|u| !u.is_subset(full)) {
            let i = (bad.0 & !full.0).trailing_zeros() as usize;
            return Err(Error::ForeignPoint(format!("index {i}")));
        }
        opens.sort_by(|a, b| a.canonical_cmp(*b));
        opens.dedup();
        if !opens.contains(&EMPTY) {
            return Err(Error::TopologyAxiomViolation(
                "the empty set is missing".into(),
            ));
        }
        if !opens.contains(&full) {
            return Err(Error::TopologyAxiomViolation(
                "the full point set is missing".into(),
            ));
        }
        let member = |m: PointSet| opens.binary_search_by(|o| o.canonical_cmp(m)).is_ok();
        for (i, &u) in opens.iter().enumerate() {
            for &v in &opens[i + 1..] {
                if !member(u | v) {
                    return Err(Error::TopologyAxiomViolation(format!(
                        "union of {} and {} escapes the family",
                        names_of(&points, u),
                        names_of(&points, v)
                    )));
                }
                if !member(u & v) {
                    return Err(Error::TopologyAxiomViolation(format!(
                        "intersection of {} and {} escapes the family",
                        names_of(&points, u),
                        names_of(&points, v)
                    )));
                }
            }
        }
        let min_open: Vec<PointSet> = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|u| u.contains(x))
                    .fold(full, |acc, &u| acc & u)
            })
            .collect();
        debug_assert!(min_open.iter().all(|m| member(*m)));
        Ok(FiniteSpace {
            points,
            opens,
            min_open,
        })
    }

    /// Builds the Alexandrov topology of a minimal-neighborhood assignment.
    /// Requires `x ∈ mins[x]` and `y ∈ mins[x] ⟹ mins[y] ⊆ mins[x]`; the
    /// opens are then exactly the unions of neighborhoods, enumerated by a
    /// `2^n` scan. All internal constructors (products, quotients, subbase
    /// generation, semiregularization) funnel through here.
    pub fn from_neighborhoods(points: Vec<String>, mins: Vec<PointSet>) -> Result<Self> {
        validate_points(&points)?;
        let n = points.len();
        if mins.len() != n {
            return Err(Error::CarrierMismatch(format!(
                "{} neighborhoods for {} points",
                mins.len(),
                n
            )));
        }
        let full = PointSet::full(n);
        for (x, &m) in mins.iter().enumerate() {
            if !m.contains(x) || !m.is_subset(full) {
                return Err(Error::TopologyAxiomViolation(format!(
                    "invalid neighborhood for `{}`",
                    points[x]
                )));
            }
            for y in m.iter() {
                if !mins[y].is_subset(m) {
                    return Err(Error::TopologyAxiomViolation(format!(
                        "neighborhood of `{}` is not open: `{}` escapes",
                        points[x], points[y]
                    )));
                }
            }
        }
        let mut opens = Vec::new();
        for bits in 0..(1u64 << n) {
            let m = PointSet(bits);
            if m.iter().all(|x| mins[x].is_subset(m)) {
                opens.push(m);
            }
        }
        opens.sort_by(|a, b| a.canonical_cmp(*b));
        Ok(FiniteSpace {
            points,
            opens,
            min_open: mins,
        })
    }

    /// The topology generated by an arbitrary family: close under finite
    /// intersection, then arbitrary union, and adjoin the empty and full
    /// sets. In neighborhood form the generated minimal open of `x` is the
    /// intersection of the subbase members containing `x`.
    pub fn generate_from_subbase(points: Vec<String>, subbase: &[PointSet]) -> Result<Self> {
        let n = points.len();
        let full = PointSet::full(n);
        let mins: Vec<PointSet> = (0..n)
            .map(|x| {
                subbase
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(full, |acc, &s| acc & s)
            })
            .collect();
        Self::from_neighborhoods(points, mins)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.n())
    }

    /// All opens in canonical order (by size, then member-list).
    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn min_open(&self, x: usize) -> PointSet {
        self.min_open[x]
    }

    pub fn min_opens(&self) -> &[PointSet] {
        &self.min_open
    }

    /// Openness via the neighborhood criterion: a set is open exactly when
    /// it contains the minimal open of each of its members.
    pub fn is_open(&self, s: PointSet) -> bool {
        s.iter().all(|x| self.min_open[x].is_subset(s))
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.is_open(self.full_set() - s)
    }

    /// Intersection of all closed supersets: `{x : min_open(x) meets A}`.
    pub fn closure(&self, a: PointSet) -> PointSet {
        PointSet::from_indices((0..self.n()).filter(|&x| self.min_open[x].intersects(a)))
    }

    /// Union of all open subsets: `{x : min_open(x) ⊆ A}`.
    pub fn interior(&self, a: PointSet) -> PointSet {
        PointSet::from_indices((0..self.n()).filter(|&x| self.min_open[x].is_subset(a)))
    }

    /// Smallest open superset (the saturation by minimal neighborhoods).
    pub fn smallest_open_superset(&self, s: PointSet) -> PointSet {
        s.iter().fold(EMPTY, |acc, x| acc | self.min_open[x])
    }

    /// Topological closure of a relation inside the square of this space,
    /// with the relation stored row-wise: `(x,y)` is adherent exactly when
    /// the rectangle `min(x) × min(y)` — the minimal neighborhood of the
    /// pair in the product — meets the relation.
    pub fn pair_closure(&self, rows: &[PointSet]) -> Vec<PointSet> {
        let n = self.n();
        (0..n)
            .map(|x| {
                PointSet::from_indices((0..n).filter(|&y| {
                    self.min_open[x]
                        .iter()
                        .any(|u| rows[u].intersects(self.min_open[y]))
                }))
            })
            .collect()
    }

    /// Converts a list of point names to a mask.
    pub fn subset_from_names(&self, names: &[String]) -> Result<PointSet> {
        let mut mask = EMPTY;
        for name in names {
            match self.point_index(name) {
                Some(i) => mask.insert(i),
                None => return Err(Error::ForeignPoint(name.clone())),
            }
        }
        Ok(mask)
    }

    /// Members of a mask, in declared point order.
    pub fn set_names(&self, s: PointSet) -> Vec<String> {
        s.iter().map(|x| self.points[x].clone()).collect()
    }

    fn t3_flag(&self) -> bool {
        // Point/closed-set separation with both witnesses minimized: the
        // open around x can shrink to min_open(x) and the open around a
        // closed set C to its saturation, so t3 holds exactly when these
        // are disjoint for every open W and every x in W (C = complement).
        let full = self.full_set();
        self.opens.iter().all(|&w| {
            let sat = self.smallest_open_superset(full - w);
            w.iter().all(|x| !self.min_open[x].intersects(sat))
        })
    }

    /// Separation flags, each from its definitional quantifier with the
    /// witnesses minimized to minimal neighborhoods.
    pub fn separation_profile(&self) -> AxiomFlags {
        let n = self.n();
        let mut t0 = true;
        let mut t1 = true;
        let mut t2 = true;
        for x in 0..n {
            for y in (x + 1)..n {
                if self.min_open[x] == self.min_open[y] {
                    t0 = false;
                }
                if self.min_open[x].contains(y) || self.min_open[y].contains(x) {
                    t1 = false;
                }
                if self.min_open[x].intersects(self.min_open[y]) {
                    t2 = false;
                }
            }
        }
        let t3 = self.t3_flag();
        AxiomFlags {
            t0,
            t1,
            t2,
            t3,
            regular: t3 && t0,
            quasiregular: self.semiregularization().t3_flag(),
        }
    }

    /// The semiregularization: the topology generated by the regular opens
    /// `Int(Cl(U))`. Always a coarsening, and idempotent.
    pub fn semiregularization(&self) -> FiniteSpace {
        let full = self.full_set();
        let mins: Vec<PointSet> = (0..self.n())
            .map(|x| {
                self.opens
                    .iter()
                    .map(|&u| self.interior(self.closure(u)))
                    .filter(|r| r.contains(x))
                    .fold(full, |acc, r| acc & r)
            })
            .collect();
        Self::from_neighborhoods(self.points.clone(), mins)
            .expect("regular opens always generate a topology")
    }

    /// The product space on ordered pairs, named `(p,q)`. The minimal open
    /// of a pair is the rectangle of the factor minimal opens.
    pub fn product(&self, other: &FiniteSpace) -> Result<FiniteSpace> {
        let n1 = self.n();
        let n2 = other.n();
        let n = n1 * n2;
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints { n, max: MAX_POINTS });
        }
        let mut points = Vec::with_capacity(n);
        for x in 0..n1 {
            for y in 0..n2 {
                points.push(format!("({},{})", self.points[x], other.points[y]));
            }
        }
        let mut mins = Vec::with_capacity(n);
        for x in 0..n1 {
            for y in 0..n2 {
                let mut m = EMPTY;
                for u in self.min_open[x].iter() {
                    for v in other.min_open[y].iter() {
                        m.insert(u * n2 + v);
                    }
                }
                mins.push(m);
            }
        }
        Self::from_neighborhoods(points, mins)
    }

    /// The quotient space of a partition together with the canonical
    /// projection. A set of blocks is open exactly when its preimage is.
    pub fn quotient(&self, partition: &Partition) -> Result<(FiniteSpace, SpaceMap)> {
        if partition.carrier() != self.points() {
            return Err(Error::CarrierMismatch(
                "partition carrier differs from the space".into(),
            ));
        }
        let blocks = partition.blocks();
        let k = blocks.len();
        // Minimal open of a block in the final topology: grow {b} until its
        // preimage is open, i.e. saturated under minimal neighborhoods.
        let mut mins = Vec::with_capacity(k);
        for b in 0..k {
            let mut v = PointSet::singleton(b);
            loop {
                let preimage = v.iter().fold(EMPTY, |acc, bi| acc | blocks[bi]);
                let saturated = self.smallest_open_superset(preimage);
                let grown = PointSet::from_indices(
                    saturated.iter().map(|x| partition.block_of(x)),
                ) | v;
                if grown == v {
                    break;
                }
                v = grown;
            }
            mins.push(v);
        }
        let space = Self::from_neighborhoods(partition.block_names(), mins)?;
        let map = SpaceMap::new(
            self.clone(),
            space.clone(),
            partition.block_assignment().to_vec(),
        )?;
        Ok((space, map))
    }

    /// Exact cellularity: the largest size of a family of pairwise disjoint
    /// nonempty opens. Any such family shrinks to one of minimal opens, so
    /// this is a maximum independent set over the minimal-neighborhood
    /// intersection graph, searched by backtracking with points ordered by
    /// neighborhood size.
    pub fn cellularity(&self) -> usize {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (self.min_open[x].len(), x));
        let mut best = 0usize;
        let mut chosen: Vec<usize> = Vec::new();
        fn extend(
            space: &FiniteSpace,
            order: &[usize],
            from: usize,
            covered: PointSet,
            chosen: &mut Vec<usize>,
            best: &mut usize,
        ) {
            if chosen.len() + (order.len() - from) <= *best {
                return;
            }
            if from == order.len() {
                *best = (*best).max(chosen.len());
                return;
            }
            let x = order[from];
            let m = space.min_open[x];
            if !m.intersects(covered) {
                chosen.push(x);
                extend(space, order, from + 1, covered | m, chosen, best);
                chosen.pop();
            }
            extend(space, order, from + 1, covered, chosen, best);
            *best = (*best).max(chosen.len());
        }
        extend(self, &order, 0, EMPTY, &mut chosen, &mut best);
        best
    }

    /// Searches for a homeomorphism, returned as an index bijection.
    /// Exhaustive with signature pruning; intended for small carriers.
    pub fn homeomorphism(&self, other: &FiniteSpace) -> Option<Vec<usize>> {
        if self.n() != other.n() || self.opens.len() != other.opens.len() {
            return None;
        }
        let n = self.n();
        let sig = |space: &FiniteSpace, x: usize| {
            (
                space.min_open[x].len(),
                space.closure(PointSet::singleton(x)).len(),
            )
        };
        let mut assigned = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            a: &FiniteSpace,
            b: &FiniteSpace,
            sig: &dyn Fn(&FiniteSpace, usize) -> (usize, usize),
            x: usize,
            assigned: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let n = a.n();
            if x == n {
                return (0..n).all(|p| {
                    let image = PointSet::from_indices(
                        a.min_open[p].iter().map(|q| assigned[q]),
                    );
                    image == b.min_open[assigned[p]]
                });
            }
            for u in 0..n {
                if used[u] || sig(a, x) != sig(b, u) {
                    continue;
                }
                // Partial consistency: relate x to already-assigned points.
                let ok = (0..x).all(|y| {
                    a.min_open[x].contains(y) == b.min_open[u].contains(assigned[y])
                        && a.min_open[y].contains(x) == b.min_open[assigned[y]].contains(u)
                });
                if !ok {
                    continue;
                }
                assigned[x] = u;
                used[u] = true;
                if go(a, b, sig, x + 1, assigned, used) {
                    return true;
                }
                used[u] = false;
                assigned[x] = usize::MAX;
            }
            false
        }
        if go(self, other, &sig, 0, &mut assigned, &mut used) {
            Some(assigned)
        } else {
            None
        }
    }
}

fn validate_points(points: &[String]) -> Result<Vec<&str>> {
    if points.is_empty() {
        return Err(Error::TopologyAxiomViolation("no points declared".into()));
    }
    if points.len() > MAX_POINTS {
        return Err(Error::TooManyPoints {
            n: points.len(),
            max: MAX_POINTS,
        });
    }
    let mut seen: Vec<&str> = Vec::with_capacity(points.len());
    for p in points {
        if seen.contains(&p.as_str()) {
            return Err(Error::DuplicatePoint(p.clone()));
        }
        seen.push(p);
    }
    Ok(seen)
}

fn names_of(points: &[String], s: PointSet) -> String {
    let members: Vec<&str> = s.iter().map(|x| points[x].as_str()).collect();
    format!("{{{}}}", members.join(","))
}

/// A function between finite spaces, by point index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceMap {
    source: FiniteSpace,
    target: FiniteSpace,
    assignment: Vec<usize>,
}

/// Structural flags of one map, each from its definition over the open-set
/// lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFlags {
    pub continuous: bool,
    pub open: bool,
    pub closed: bool,
    pub quotient: bool,
}

impl SpaceMap {
    pub fn new(source: FiniteSpace, target: FiniteSpace, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.n() {
            return Err(Error::CarrierMismatch(format!(
                "{} assignments for {} source points",
                assignment.len(),
                source.n()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&v| v >= target.n()) {
            return Err(Error::ForeignPoint(format!("target index {bad}")));
        }
        Ok(SpaceMap {
            source,
            target,
            assignment,
        })
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn image(&self, s: PointSet) -> PointSet {
        PointSet::from_indices(s.iter().map(|x| self.assignment[x]))
    }

    pub fn preimage(&self, s: PointSet) -> PointSet {
        PointSet::from_indices(
            (0..self.source.n()).filter(|&x| s.contains(self.assignment[x])),
        )
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.source.full_set()) == self.target.full_set()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.n() == self.target.n() && self.is_surjective()
    }

    /// Composition `next ∘ self`; the intermediate spaces must agree.
    pub fn compose(&self, next: &SpaceMap) -> Result<SpaceMap> {
        if self.target != next.source {
            return Err(Error::CarrierMismatch(
                "composition targets do not line up".into(),
            ));
        }
        let assignment = self
            .assignment
            .iter()
            .map(|&x| next.assignment[x])
            .collect();
        SpaceMap::new(self.source.clone(), next.target.clone(), assignment)
    }

    pub fn is_continuous(&self) -> bool {
        self.target
            .opens()
            .iter()
            .all(|&v| self.source.is_open(self.preimage(v)))
    }

    /// All four structural flags. Continuity, openness, and closedness scan
    /// the lattices directly; the quotient flag compares the target against
    /// the final topology, computed in neighborhood form.
    pub fn profile(&self) -> MapFlags {
        let continuous = self.is_continuous();
        let open = self
            .source
            .opens()
            .iter()
            .all(|&u| self.target.is_open(self.image(u)));
        let full = self.source.full_set();
        let closed = self
            .source
            .opens()
            .iter()
            .all(|&u| self.target.is_closed(self.image(full - u)));
        let quotient = self.is_surjective() && self.final_topology_mins() == self.target.min_open;
        MapFlags {
            continuous,
            open,
            closed,
            quotient,
        }
    }

    /// Minimal opens of the final topology on the target: the smallest sets
    /// whose preimages are open.
    fn final_topology_mins(&self) -> Vec<PointSet> {
        (0..self.target.n())
            .map(|y| {
                let mut v = PointSet::singleton(y);
                loop {
                    let saturated = self.source.smallest_open_superset(self.preimage(v));
                    let grown = self.image(saturated) | v;
                    if grown == v {
                        break;
                    }
                    v = grown;
                }
                v
            })
            .collect()
    }
}
