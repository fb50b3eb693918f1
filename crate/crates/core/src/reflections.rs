//! Reflections onto the separation classes.
//!
//! For each supported class the reflection is a concrete arrow out of the
//! instance: a quotient collapsing indistinguishable points (t0), a
//! quotient onto the finest partition with a discrete image (t1 and t2,
//! which coincide on finite carriers at the space level; at the monoid
//! level t2 instead divides by the least closed congruence), or a
//! retopologization by regular open sets (t3), with the regular reflection
//! stacking t0 on top of t3. Every arrow can be certified against the
//! defining universal property by exhaustive search over small targets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumerator;
use crate::error::{Error, Result};
use crate::finspace::{AxiomFlags, FiniteSpace, SpaceMap};
use crate::instance::{self, InstanceDoc};
use crate::partition::Partition;
use crate::semigroup::Congruence;
use crate::topmonoid::TopMonoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparationAxiom {
    T0,
    T1,
    T2,
    T3,
    Regular,
}

impl SeparationAxiom {
    pub const ALL: [SeparationAxiom; 5] = [
        SeparationAxiom::T0,
        SeparationAxiom::T1,
        SeparationAxiom::T2,
        SeparationAxiom::T3,
        SeparationAxiom::Regular,
    ];

    pub fn satisfied_by(self, flags: &AxiomFlags) -> bool {
        match self {
            SeparationAxiom::T0 => flags.t0,
            SeparationAxiom::T1 => flags.t1,
            SeparationAxiom::T2 => flags.t2,
            SeparationAxiom::T3 => flags.t3,
            SeparationAxiom::Regular => flags.regular,
        }
    }

    /// Whether the class survives refining the topology. The point-merging
    /// reflections target these classes, so their arrows must carry the
    /// final topology; t3 and regular instead coarsen and do not.
    pub fn closed_under_supertopologies(self) -> bool {
        matches!(
            self,
            SeparationAxiom::T0 | SeparationAxiom::T1 | SeparationAxiom::T2
        )
    }
}

impl fmt::Display for SeparationAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SeparationAxiom::T0 => "t0",
            SeparationAxiom::T1 => "t1",
            SeparationAxiom::T2 => "t2",
            SeparationAxiom::T3 => "t3",
            SeparationAxiom::Regular => "regular",
        };
        f.write_str(name)
    }
}

impl FromStr for SeparationAxiom {
    type Err = Error;

    /// Accepts either the axiom name (`t0` … `t3`, `regular`/`reg`) or the
    /// matching reflection name (`c0` … `c3`, `cr`), case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t0" | "c0" => Ok(SeparationAxiom::T0),
            "t1" | "c1" => Ok(SeparationAxiom::T1),
            "t2" | "c2" => Ok(SeparationAxiom::T2),
            "t3" | "c3" => Ok(SeparationAxiom::T3),
            "regular" | "reg" | "cr" => Ok(SeparationAxiom::Regular),
            other => Err(Error::UnsupportedAxiom {
                axiom: other.into(),
                context: "parsing (expected t0, t1, t2, t3, regular, or c0..c3, cr)".into(),
            }),
        }
    }
}

/// A validated reflection arrow between spaces.
#[derive(Debug, Clone)]
pub struct SpaceReflection {
    axiom: SeparationAxiom,
    morphism: SpaceMap,
    partition: Partition,
}

impl SpaceReflection {
    /// Checks that the arrow could be a reflection onto the class at all:
    /// continuous, onto a target inside the class, and carrying the final
    /// topology whenever the class survives refinement.
    pub fn new(axiom: SeparationAxiom, morphism: SpaceMap) -> Result<Self> {
        let flags = morphism.profile();
        if !flags.continuous {
            return Err(Error::NotContinuous);
        }
        if !morphism.is_surjective() {
            return Err(Error::NotAReflection("the arrow must be onto".into()));
        }
        if !axiom.satisfied_by(&morphism.target().separation_profile()) {
            return Err(Error::NotAReflection(format!(
                "the target is not {axiom}"
            )));
        }
        if axiom.closed_under_supertopologies() && !flags.quotient {
            return Err(Error::NotAReflection(format!(
                "a {axiom} reflection must carry the final topology"
            )));
        }
        let partition =
            Partition::from_assignment(morphism.source().points().to_vec(), morphism.assignment())?;
        Ok(SpaceReflection {
            axiom,
            morphism,
            partition,
        })
    }

    pub fn axiom(&self) -> SeparationAxiom {
        self.axiom
    }

    pub fn source(&self) -> &FiniteSpace {
        self.morphism.source()
    }

    pub fn target(&self) -> &FiniteSpace {
        self.morphism.target()
    }

    pub fn morphism(&self) -> &SpaceMap {
        &self.morphism
    }

    /// The fibers of the arrow.
    pub fn partition(&self) -> &Partition {
        &self.partition
    }
}

/// A validated reflection arrow between monoids-with-topology.
#[derive(Debug, Clone)]
pub struct MonoidReflection {
    axiom: SeparationAxiom,
    source: TopMonoid,
    target: TopMonoid,
    morphism: SpaceMap,
    partition: Partition,
}

impl MonoidReflection {
    pub fn new(
        axiom: SeparationAxiom,
        source: TopMonoid,
        target: TopMonoid,
        morphism: SpaceMap,
    ) -> Result<Self> {
        if morphism.source() != source.space() || morphism.target() != target.space() {
            return Err(Error::CarrierMismatch(
                "the arrow does not connect the given monoids".into(),
            ));
        }
        let flags = morphism.profile();
        if !flags.continuous {
            return Err(Error::NotContinuous);
        }
        if !morphism.is_surjective() {
            return Err(Error::NotAReflection("the arrow must be onto".into()));
        }
        for x in 0..source.n() {
            for y in 0..source.n() {
                let lhs = morphism.apply(source.algebra().mul(x, y));
                let rhs = target
                    .algebra()
                    .mul(morphism.apply(x), morphism.apply(y));
                if lhs != rhs {
                    return Err(Error::NotAReflection(format!(
                        "the arrow is not multiplicative at ({}, {})",
                        source.space().points()[x],
                        source.space().points()[y]
                    )));
                }
            }
        }
        if !axiom.satisfied_by(&target.space().separation_profile()) {
            return Err(Error::NotAReflection(format!(
                "the target is not {axiom}"
            )));
        }
        if axiom.closed_under_supertopologies() && !flags.quotient {
            return Err(Error::NotAReflection(format!(
                "a {axiom} reflection must carry the final topology"
            )));
        }
        let partition =
            Partition::from_assignment(source.space().points().to_vec(), morphism.assignment())?;
        Ok(MonoidReflection {
            axiom,
            source,
            target,
            morphism,
            partition,
        })
    }

    pub fn axiom(&self) -> SeparationAxiom {
        self.axiom
    }

    pub fn source(&self) -> &TopMonoid {
        &self.source
    }

    pub fn target(&self) -> &TopMonoid {
        &self.target
    }

    pub fn morphism(&self) -> &SpaceMap {
        &self.morphism
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }
}

#[derive(Debug, Clone)]
pub enum ReflectionArrow {
    Space(Box<SpaceReflection>),
    Monoid(Box<MonoidReflection>),
}

impl From<SpaceReflection> for ReflectionArrow {
    fn from(r: SpaceReflection) -> Self {
        ReflectionArrow::Space(Box::new(r))
    }
}

impl From<MonoidReflection> for ReflectionArrow {
    fn from(r: MonoidReflection) -> Self {
        ReflectionArrow::Monoid(Box::new(r))
    }
}

impl ReflectionArrow {
    pub fn axiom(&self) -> SeparationAxiom {
        match self {
            ReflectionArrow::Space(r) => r.axiom(),
            ReflectionArrow::Monoid(r) => r.axiom(),
        }
    }

    pub fn certify_universal(&self, bound: usize) -> Result<CertificationReport> {
        certify_universal(self, bound)
    }
}

/// The finest partition whose quotient lands in the class. t0 merges
/// points with equal minimal neighborhoods outright; t1 and t2 repeatedly
/// merge the first pair of blocks the quotient fails to separate, and
/// every such merge is forced, so the loop ends in the least fixpoint.
fn collapse_partition(space: &FiniteSpace, axiom: SeparationAxiom) -> Result<Partition> {
    let n = space.n();
    match axiom {
        SeparationAxiom::T0 => {
            let assignment: Vec<usize> = (0..n)
                .map(|x| {
                    (0..=x)
                        .find(|&y| space.min_open(y) == space.min_open(x))
                        .expect("x always matches itself")
                })
                .collect();
            Partition::from_assignment(space.points().to_vec(), &assignment)
        }
        SeparationAxiom::T1 | SeparationAxiom::T2 => {
            let mut partition = Partition::identity(space.points().to_vec());
            loop {
                let (q, _) = space.quotient(&partition)?;
                let mut merged = false;
                'scan: for x in 0..n {
                    for y in x + 1..n {
                        let (bx, by) = (partition.block_of(x), partition.block_of(y));
                        if bx == by {
                            continue;
                        }
                        let violated = match axiom {
                            SeparationAxiom::T1 => {
                                q.min_open(bx).contains(by) || q.min_open(by).contains(bx)
                            }
                            _ => q.min_open(bx).intersects(q.min_open(by)),
                        };
                        if violated {
                            partition = partition.merge(x, y);
                            merged = true;
                            break 'scan;
                        }
                    }
                }
                if !merged {
                    return Ok(partition);
                }
            }
        }
        SeparationAxiom::T3 | SeparationAxiom::Regular => Err(Error::UnsupportedAxiom {
            axiom: axiom.to_string(),
            context: "reflecting a bare space (these reflections retopologize and need \
                      the monoid form)"
                .into(),
        }),
    }
}

/// Arrows built here satisfy their own validity checks by construction;
/// a failure is an internal contradiction, not a user mistake.
fn seal<T>(result: Result<T>) -> Result<T> {
    result.map_err(|e| match e {
        Error::NotAReflection(msg) => {
            Error::InvariantViolated(format!("constructed arrow failed validation: {msg}"))
        }
        Error::NotContinuous => Error::InvariantViolated(
            "constructed arrow failed validation: the projection is not continuous".into(),
        ),
        other => other,
    })
}

/// The reflection of a space onto t0, t1 or t2.
pub fn reflect_space(space: &FiniteSpace, axiom: SeparationAxiom) -> Result<SpaceReflection> {
    let partition = collapse_partition(space, axiom)?;
    let (_, morphism) = space.quotient(&partition)?;
    seal(SpaceReflection::new(axiom, morphism))
}

/// Reference implementation for tests: the meet of every partition whose
/// quotient satisfies the axiom. The meet must itself qualify.
pub fn oracle_reflection(space: &FiniteSpace, axiom: SeparationAxiom) -> Result<Partition> {
    if !axiom.closed_under_supertopologies() {
        return Err(Error::UnsupportedAxiom {
            axiom: axiom.to_string(),
            context: "the partition-enumeration oracle".into(),
        });
    }
    let qualifying: Vec<Partition> = Partition::all(space.points())
        .into_iter()
        .filter(|p| {
            let (q, _) = space.quotient(p).expect("partitions come from the carrier");
            axiom.satisfied_by(&q.separation_profile())
        })
        .collect();
    let least = qualifying
        .iter()
        .skip(1)
        .fold(qualifying[0].clone(), |acc, p| acc.meet(p));
    if !qualifying.contains(&least) {
        return Err(Error::InvariantViolated(
            "the qualifying partitions are not closed under meet".into(),
        ));
    }
    Ok(least)
}

/// The image of a continuous map under the reflection: the unique map
/// between the reflected spaces commuting with both projections.
pub fn functor_map(f: &SpaceMap, axiom: SeparationAxiom) -> Result<SpaceMap> {
    if !f.is_continuous() {
        return Err(Error::NotContinuous);
    }
    let rs = reflect_space(f.source(), axiom)?;
    let rt = reflect_space(f.target(), axiom)?;
    let mut assignment = vec![usize::MAX; rs.target().n()];
    for x in 0..f.source().n() {
        let block = rs.morphism().apply(x);
        let value = rt.morphism().apply(f.apply(x));
        if assignment[block] == usize::MAX {
            assignment[block] = value;
        } else if assignment[block] != value {
            return Err(Error::InvariantViolated(
                "a continuous map failed to descend to the reflections".into(),
            ));
        }
    }
    let g = SpaceMap::new(rs.target().clone(), rt.target().clone(), assignment)?;
    if !g.is_continuous() {
        return Err(Error::InvariantViolated(
            "the descended map is not continuous".into(),
        ));
    }
    Ok(g)
}

/// The t0 collapse of a monoid, bypassing the hypothesis gate: merging
/// points with equal minimal neighborhoods is a congruence whenever the
/// shifts are merely continuous, because mutual specialization is carried
/// along by every shift. The regular reflection needs this on targets
/// that may have lost open shifts.
pub(crate) fn t0_monoid_quotient(tm: &TopMonoid) -> Result<(TopMonoid, SpaceMap)> {
    let partition = collapse_partition(tm.space(), SeparationAxiom::T0)?;
    let congruence = Congruence::new(tm.algebra(), partition).map_err(|_| {
        Error::InvariantViolated(
            "the t0 collapse of a monoid with continuous shifts must be a congruence".into(),
        )
    })?;
    tm.quotient(&congruence)
}

/// The reflection of a monoid-with-topology onto the class, under the
/// continuity hypotheses each construction needs.
pub fn reflect_monoid(tm: &TopMonoid, axiom: SeparationAxiom) -> Result<MonoidReflection> {
    fn require(flag: bool, name: &str) -> Result<()> {
        if flag {
            Ok(())
        } else {
            Err(Error::HypothesisNotMet { flag: name.into() })
        }
    }
    require(tm.algebra().is_monoid(), "monoid")?;
    let p = tm.profile();
    match axiom {
        SeparationAxiom::T0 | SeparationAxiom::T1 => {
            require(p.semitopological, "semitopological")?;
            require(p.open_shifts, "open_shifts")?;
            let partition = collapse_partition(tm.space(), axiom)?;
            let congruence = Congruence::new(tm.algebra(), partition).map_err(|_| {
                Error::InvariantViolated(format!(
                    "the {axiom} collapse of an open-shift monoid must be a congruence"
                ))
            })?;
            let (target, morphism) = tm.quotient(&congruence)?;
            seal(MonoidReflection::new(axiom, tm.clone(), target, morphism))
        }
        SeparationAxiom::T2 => {
            require(p.semitopological, "semitopological")?;
            require(
                p.left_open_shifts || p.right_open_shifts,
                "one_sided_open_shifts",
            )?;
            let congruence = tm.closed_congruence_closure(&[])?;
            let (target, morphism) = tm.quotient(&congruence)?;
            if !target.space().separation_profile().t2 {
                return Err(Error::InvariantViolated(
                    "dividing by the least closed congruence must separate points \
                     when one family of shifts is open"
                        .into(),
                ));
            }
            seal(MonoidReflection::new(axiom, tm.clone(), target, morphism))
        }
        SeparationAxiom::T3 => {
            require(p.topological, "topological")?;
            require(p.open_shifts, "open_shifts")?;
            let sr = tm.space().semiregularization();
            let target = TopMonoid::assemble(sr.clone(), tm.algebra().clone())?;
            let morphism =
                SpaceMap::new(tm.space().clone(), sr, (0..tm.n()).collect())?;
            seal(MonoidReflection::new(axiom, tm.clone(), target, morphism))
        }
        SeparationAxiom::Regular => {
            require(p.topological, "topological")?;
            require(p.open_shifts, "open_shifts")?;
            // Stack t0 on top of t3. The t3 target can lose open shifts,
            // so the collapse runs directly instead of recursing through
            // the hypothesis gate above.
            let r3 = reflect_monoid(tm, SeparationAxiom::T3)?;
            let (target, projection) = t0_monoid_quotient(r3.target())?;
            let morphism = r3.morphism().compose(&projection)?;
            seal(MonoidReflection::new(axiom, tm.clone(), target, morphism))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    pub axiom: SeparationAxiom,
    pub bound: usize,
    /// Whether the certificate quantified over monoid targets and
    /// multiplicative maps rather than bare spaces and continuous maps.
    pub algebraic: bool,
    pub pass: bool,
    pub targets_checked: usize,
    pub maps_checked: usize,
    pub failure: Option<CertificationFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationFailure {
    pub target: InstanceDoc,
    /// The competitor map, as the image point of each source point.
    pub map: Vec<String>,
    /// `no_factorization` or `multiple_factorizations`.
    pub kind: String,
    pub candidates: usize,
}

/// Every assignment from `domain` indices into `codomain` values, in
/// odometer order.
fn all_functions(domain: usize, codomain: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current = Some(vec![0usize; domain]);
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let cur = current.as_mut().expect("present when out was");
        let mut i = 0;
        loop {
            if i == cur.len() {
                current = None;
                break;
            }
            cur[i] += 1;
            if cur[i] < codomain {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

/// Exhaustively verifies the defining property of the arrow: every
/// qualifying map out of the source into a target of at most `bound`
/// points factors through the arrow exactly once. Space arrows quantify
/// over continuous maps into spaces in the class; monoid arrows quantify
/// over continuous multiplicative maps into monoids whose topology is in
/// the class.
pub fn certify_universal(arrow: &ReflectionArrow, bound: usize) -> Result<CertificationReport> {
    if !(1..=4).contains(&bound) {
        return Err(Error::SizeOutOfRange {
            size: bound,
            min: 1,
            max: 4,
        });
    }
    let axiom = arrow.axiom();
    let mut report = CertificationReport {
        axiom,
        bound,
        algebraic: matches!(arrow, ReflectionArrow::Monoid(_)),
        pass: true,
        targets_checked: 0,
        maps_checked: 0,
        failure: None,
    };
    match arrow {
        ReflectionArrow::Space(r) => {
            let (source, reflected, pi) = (r.source(), r.target(), r.morphism());
            'targets: for n in 1..=bound {
                for t in enumerator::enum_spaces(n)? {
                    if !axiom.satisfied_by(&t.separation_profile()) {
                        continue;
                    }
                    report.targets_checked += 1;
                    for f in all_functions(source.n(), t.n()) {
                        let fmap = SpaceMap::new(source.clone(), t.clone(), f.clone())?;
                        if !fmap.is_continuous() {
                            continue;
                        }
                        report.maps_checked += 1;
                        let mut candidates = 0;
                        for g in all_functions(reflected.n(), t.n()) {
                            if (0..source.n()).any(|x| g[pi.apply(x)] != f[x]) {
                                continue;
                            }
                            let gmap = SpaceMap::new(reflected.clone(), t.clone(), g)?;
                            if gmap.is_continuous() {
                                candidates += 1;
                            }
                        }
                        if candidates != 1 {
                            report.pass = false;
                            report.failure = Some(CertificationFailure {
                                target: instance::doc_from_space(&t),
                                map: f.iter().map(|&v| t.points()[v].clone()).collect(),
                                kind: if candidates == 0 {
                                    "no_factorization".into()
                                } else {
                                    "multiple_factorizations".into()
                                },
                                candidates,
                            });
                            break 'targets;
                        }
                    }
                }
            }
        }
        ReflectionArrow::Monoid(r) => {
            let (source, reflected, pi) = (r.source(), r.target(), r.morphism());
            let (s_n, m_n) = (source.n(), reflected.n());
            'mtargets: for n in 1..=bound {
                let spaces = enumerator::enum_spaces(n)?;
                let tables: Vec<_> = enumerator::enum_tables(n)?
                    .into_iter()
                    .filter(|t| t.is_monoid())
                    .collect();
                for space in &spaces {
                    if !axiom.satisfied_by(&space.separation_profile()) {
                        continue;
                    }
                    for table in &tables {
                        let t = TopMonoid::assemble(space.clone(), table.clone())
                            .expect("enumerated space and table share a carrier");
                        report.targets_checked += 1;
                        for f in all_functions(s_n, n) {
                            let multiplicative = (0..s_n).all(|x| {
                                (0..s_n).all(|y| {
                                    f[source.algebra().mul(x, y)]
                                        == t.algebra().mul(f[x], f[y])
                                })
                            });
                            if !multiplicative {
                                continue;
                            }
                            let fmap = SpaceMap::new(
                                source.space().clone(),
                                t.space().clone(),
                                f.clone(),
                            )?;
                            if !fmap.is_continuous() {
                                continue;
                            }
                            report.maps_checked += 1;
                            let mut candidates = 0;
                            for g in all_functions(m_n, n) {
                                if (0..s_n).any(|x| g[pi.apply(x)] != f[x]) {
                                    continue;
                                }
                                let g_mult = (0..m_n).all(|x| {
                                    (0..m_n).all(|y| {
                                        g[reflected.algebra().mul(x, y)]
                                            == t.algebra().mul(g[x], g[y])
                                    })
                                });
                                if !g_mult {
                                    continue;
                                }
                                let gmap = SpaceMap::new(
                                    reflected.space().clone(),
                                    t.space().clone(),
                                    g,
                                )?;
                                if gmap.is_continuous() {
                                    candidates += 1;
                                }
                            }
                            if candidates != 1 {
                                report.pass = false;
                                report.failure = Some(CertificationFailure {
                                    target: instance::doc_from_monoid(&t),
                                    map: f.iter().map(|&v| t.space().points()[v].clone()).collect(),
                                    kind: if candidates == 0 {
                                        "no_factorization".into()
                                    } else {
                                        "multiple_factorizations".into()
                                    },
                                    candidates,
                                });
                                break 'mtargets;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
