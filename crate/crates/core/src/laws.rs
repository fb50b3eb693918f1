//! Executable laws over finite topologized algebras.
//!
//! Each law is a checkable statement about a space, a monoid, a pair of
//! them, or a quotient datum. Running a law yields a report: the law either
//! `HOLDS`, `FAILS` with a concrete witness, or is `HYPOTHESIS_NOT_MET`
//! when the instance lacks a structural flag the statement assumes. Failed
//! hypotheses are named so a caller can deliberately drop them and go
//! hunting for counterexamples.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finspace::{FiniteSpace, SpaceMap};
use crate::instance::{
    digest, digest_str, doc_from_monoid, doc_from_space, to_canonical_json,
};
use crate::partition::Partition;
use crate::reflections::{
    reflect_monoid, reflect_space, t0_monoid_quotient, ReflectionArrow, SeparationAxiom,
};
use crate::semigroup::Congruence;
use crate::topmonoid::TopMonoid;

/// The identifiers of the sixteen laws the workbench can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LawId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
    L10,
    L11,
    L12,
    L13,
    L14,
    L15,
    L16,
}

impl LawId {
    pub const ALL: [LawId; 16] = [
        LawId::L1,
        LawId::L2,
        LawId::L3,
        LawId::L4,
        LawId::L5,
        LawId::L6,
        LawId::L7,
        LawId::L8,
        LawId::L9,
        LawId::L10,
        LawId::L11,
        LawId::L12,
        LawId::L13,
        LawId::L14,
        LawId::L15,
        LawId::L16,
    ];

    /// The structural flags an instance must carry before the law's
    /// conclusion is evaluated. Checks marked `one_sided_open_shifts`
    /// accept either open left shifts or open right shifts.
    pub fn hypotheses(self) -> &'static [&'static str] {
        use LawId::*;
        match self {
            L1 | L2 | L3 => &["monoid", "semitopological", "one_sided_open_shifts"],
            L4 => &["topological", "open_shifts"],
            L5 | L6 | L7 | L12 => &["monoid", "topological", "open_shifts"],
            L8 => &["monoid", "semitopological", "open_shifts"],
            L9 | L10 | L11 | L14 => &[],
            L13 => &["topological", "open_shifts", "cancellative"],
            L15 => &["monoid", "semitopological"],
            L16 => &["monoid", "topological", "open_shifts", "cancellative"],
        }
    }

    /// A one-line statement of what the law asserts.
    pub fn statement(self) -> &'static str {
        use LawId::*;
        match self {
            L1 => "quotient projections along congruences are open maps",
            L2 => "a quotient is t2 exactly when the congruence is closed",
            L3 => "the t2 reflection collapses the least closed congruence",
            L4 => "semiregularization preserves joint continuity",
            L5 => "the carrier space is quasiregular",
            L6 => "the t3 reflection retopologizes by semiregularization",
            L7 => "the regular reflection is the t0 collapse of the t3 reflection",
            L8 => "reflections commute with finite products",
            L9 => "semiregularization commutes with finite products",
            L10 => "the t0 reflection preserves cellularity",
            L11 => "semiregularization preserves cellularity",
            L12 => "cellularity is constant along every reflection",
            L13 => "the collapsed semiregularization of a cancellative algebra is cancellative",
            L14 => "t2 quotients have closed relations, and closed relations with open projections give t2 quotients",
            L15 => "shift-translated identity neighborhoods generate a compatible topology with open shifts",
            L16 => "the regular reflection of a cancellative algebra is a topological group",
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for LawId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        LawId::ALL
            .into_iter()
            .find(|law| law.to_string() == upper)
            .ok_or_else(|| Error::UnknownLaw(s.to_string()))
    }
}

/// The result of evaluating one law on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Fails,
    HypothesisNotMet,
}

/// What a law run reports: the verdict plus enough context to reproduce
/// it. `FAILS` always carries a witness; `HYPOTHESIS_NOT_MET` always names
/// the missing flag.
#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub law_id: LawId,
    pub instance_digest: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_hypothesis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_micros: u64,
}

/// Run-time knobs for law evaluation.
#[derive(Debug, Clone)]
pub struct LawOptions {
    /// When set, laws that build reflection arrows additionally certify
    /// the universal property against every small target.
    pub certify: bool,
    /// Largest target size the certification sweeps (1 through 4).
    pub certify_bound: usize,
}

impl Default for LawOptions {
    fn default() -> Self {
        LawOptions {
            certify: false,
            certify_bound: 3,
        }
    }
}

/// The inputs a law can be evaluated on. Borrowed so suites can run many
/// laws over one instance without copying it.
#[derive(Debug, Clone, Copy)]
pub enum LawInstance<'a> {
    Space(&'a FiniteSpace),
    Monoid(&'a TopMonoid),
    SpacePartition(&'a FiniteSpace, &'a Partition),
    MonoidCongruence(&'a TopMonoid, &'a Congruence),
    SpacePair(&'a FiniteSpace, &'a FiniteSpace),
    MonoidPair(&'a TopMonoid, &'a TopMonoid),
}

impl LawInstance<'_> {
    pub fn kind(&self) -> &'static str {
        match self {
            LawInstance::Space(_) => "space",
            LawInstance::Monoid(_) => "monoid",
            LawInstance::SpacePartition(..) => "space+partition",
            LawInstance::MonoidCongruence(..) => "monoid+congruence",
            LawInstance::SpacePair(..) => "space pair",
            LawInstance::MonoidPair(..) => "monoid pair",
        }
    }
}

/// Which laws a suite run covers.
#[derive(Debug, Clone)]
pub enum Selection {
    /// Every law whose input shape the instance can satisfy.
    All,
    /// Exactly these laws; a shape mismatch is an error.
    Ids(Vec<LawId>),
}

/// The law's view of an instance once the shape has been matched.
enum Adapted<'a> {
    MonoidAllCongruences(&'a TopMonoid),
    MonoidOneCongruence(&'a TopMonoid, &'a Congruence),
    Monoid(&'a TopMonoid),
    MonoidPair(&'a TopMonoid, &'a TopMonoid),
    SpacePair(&'a FiniteSpace, &'a FiniteSpace),
    Space(&'a FiniteSpace),
    SpaceAllPartitions(&'a FiniteSpace),
    SpaceOnePartition(&'a FiniteSpace, &'a Partition),
}

fn adapt<'a>(law: LawId, instance: &LawInstance<'a>) -> Result<Adapted<'a>> {
    use LawId::*;
    use LawInstance as LI;
    let adapted = match (law, instance) {
        (L1 | L2, LI::Monoid(tm)) => Adapted::MonoidAllCongruences(tm),
        (L1 | L2, LI::MonoidCongruence(tm, c)) => Adapted::MonoidOneCongruence(tm, c),
        (L3 | L4 | L5 | L6 | L7 | L12 | L13 | L15 | L16, LI::Monoid(tm)) => Adapted::Monoid(tm),
        (L8, LI::Monoid(tm)) => Adapted::MonoidPair(tm, tm),
        (L8, LI::MonoidPair(a, b)) => Adapted::MonoidPair(a, b),
        (L9, LI::SpacePair(a, b)) => Adapted::SpacePair(a, b),
        (L9, LI::Space(x)) => Adapted::SpacePair(x, x),
        (L9, LI::Monoid(tm)) => Adapted::SpacePair(tm.space(), tm.space()),
        (L9, LI::MonoidPair(a, b)) => Adapted::SpacePair(a.space(), b.space()),
        (L10 | L11, LI::Space(x)) => Adapted::Space(x),
        (L10 | L11, LI::Monoid(tm)) => Adapted::Space(tm.space()),
        (L14, LI::Space(x)) => Adapted::SpaceAllPartitions(x),
        (L14, LI::Monoid(tm)) => Adapted::SpaceAllPartitions(tm.space()),
        (L14, LI::SpacePartition(x, p)) => Adapted::SpaceOnePartition(x, p),
        (L14, LI::MonoidCongruence(tm, c)) => {
            Adapted::SpaceOnePartition(tm.space(), c.partition())
        }
        _ => {
            return Err(Error::InstanceKindMismatch {
                law: law.to_string(),
                got: instance.kind().to_string(),
            })
        }
    };
    Ok(adapted)
}

fn flag_holds(tm: &TopMonoid, flag: &str) -> bool {
    let p = tm.profile();
    match flag {
        "monoid" => tm.algebra().is_monoid(),
        "semitopological" => p.semitopological,
        "topological" => p.topological,
        "open_shifts" => p.open_shifts,
        "one_sided_open_shifts" => p.left_open_shifts || p.right_open_shifts,
        "cancellative" => p.cancellative,
        other => unreachable!("no such hypothesis flag: {other}"),
    }
}

fn first_unmet_hypothesis(law: LawId, adapted: &Adapted, dropped: &[String]) -> Option<String> {
    let monoids: Vec<&TopMonoid> = match adapted {
        Adapted::MonoidAllCongruences(tm)
        | Adapted::MonoidOneCongruence(tm, _)
        | Adapted::Monoid(tm) => vec![tm],
        Adapted::MonoidPair(a, b) => vec![a, b],
        _ => vec![],
    };
    for flag in law.hypotheses() {
        if dropped.iter().any(|d| d == flag) {
            continue;
        }
        if monoids.iter().any(|tm| !flag_holds(tm, flag)) {
            return Some((*flag).to_string());
        }
    }
    None
}

/// Fingerprint of the instance as given, independent of the law.
fn digest_of(instance: &LawInstance) -> String {
    match instance {
        LawInstance::Space(x) => digest(&doc_from_space(x)),
        LawInstance::Monoid(tm) => digest(&doc_from_monoid(tm)),
        LawInstance::SpacePair(a, b) => digest_str(&format!(
            "[{},{}]",
            to_canonical_json(&doc_from_space(a)),
            to_canonical_json(&doc_from_space(b))
        )),
        LawInstance::MonoidPair(a, b) => digest_str(&format!(
            "[{},{}]",
            to_canonical_json(&doc_from_monoid(a)),
            to_canonical_json(&doc_from_monoid(b))
        )),
        LawInstance::SpacePartition(x, p) => digest_str(&format!(
            r#"{{"instance":{},"blocks":{}}}"#,
            to_canonical_json(&doc_from_space(x)),
            serde_json::to_string(&p.block_names()).expect("names serialize")
        )),
        LawInstance::MonoidCongruence(tm, c) => digest_str(&format!(
            r#"{{"instance":{},"blocks":{}}}"#,
            to_canonical_json(&doc_from_monoid(tm)),
            serde_json::to_string(&c.partition().block_names()).expect("names serialize")
        )),
    }
}

enum Outcome {
    Holds(Option<String>),
    Fails(Value),
}

/// Evaluate one law on one instance.
pub fn run_law(instance: &LawInstance, law: LawId, options: &LawOptions) -> Result<LawReport> {
    evaluate(instance, law, options, &[])
}

/// Evaluate a set of laws on one instance, reporting in catalog order.
/// `Selection::All` silently skips laws whose input shape the instance
/// cannot provide; explicit ids turn a shape mismatch into an error.
pub fn run_suite(
    instance: &LawInstance,
    selection: &Selection,
    options: &LawOptions,
) -> Result<Vec<LawReport>> {
    let mut reports = Vec::new();
    for law in LawId::ALL {
        match selection {
            Selection::All => match adapt(law, instance) {
                Ok(_) => reports.push(run_law(instance, law, options)?),
                Err(Error::InstanceKindMismatch { .. }) => continue,
                Err(e) => return Err(e),
            },
            Selection::Ids(ids) => {
                if ids.contains(&law) {
                    reports.push(run_law(instance, law, options)?);
                }
            }
        }
    }
    Ok(reports)
}

/// The full evaluator, with a list of hypothesis flags to skip. Counter-
/// example searches drop flags on purpose; ordinary runs drop none.
pub(crate) fn evaluate(
    instance: &LawInstance,
    law: LawId,
    options: &LawOptions,
    dropped: &[String],
) -> Result<LawReport> {
    let start = Instant::now();
    let adapted = adapt(law, instance)?;
    let instance_digest = digest_of(instance);
    if let Some(flag) = first_unmet_hypothesis(law, &adapted, dropped) {
        return Ok(LawReport {
            law_id: law,
            instance_digest,
            verdict: Verdict::HypothesisNotMet,
            failed_hypothesis: Some(flag),
            witness: None,
            note: None,
            elapsed_micros: start.elapsed().as_micros() as u64,
        });
    }
    let outcome = conclusion(law, &adapted, options)?;
    let report = match outcome {
        Outcome::Holds(note) => LawReport {
            law_id: law,
            instance_digest,
            verdict: Verdict::Holds,
            failed_hypothesis: None,
            witness: None,
            note,
            elapsed_micros: start.elapsed().as_micros() as u64,
        },
        Outcome::Fails(witness) => LawReport {
            law_id: law,
            instance_digest,
            verdict: Verdict::Fails,
            failed_hypothesis: None,
            witness: Some(witness),
            note: None,
            elapsed_micros: start.elapsed().as_micros() as u64,
        },
    };
    Ok(report)
}

fn conclusion(law: LawId, adapted: &Adapted, options: &LawOptions) -> Result<Outcome> {
    match (law, adapted) {
        (LawId::L1, Adapted::MonoidAllCongruences(tm)) => {
            for partition in tm.algebra().congruences() {
                if let Outcome::Fails(w) = l1_one(tm, &partition)? {
                    return Ok(Outcome::Fails(w));
                }
            }
            Ok(Outcome::Holds(Some(
                "checked every congruence of the algebra".to_string(),
            )))
        }
        (LawId::L1, Adapted::MonoidOneCongruence(tm, c)) => l1_one(tm, c.partition()),
        (LawId::L2, Adapted::MonoidAllCongruences(tm)) => {
            for partition in tm.algebra().congruences() {
                if let Outcome::Fails(w) = l2_one(tm, &partition)? {
                    return Ok(Outcome::Fails(w));
                }
            }
            Ok(Outcome::Holds(Some(
                "checked every congruence of the algebra".to_string(),
            )))
        }
        (LawId::L2, Adapted::MonoidOneCongruence(tm, c)) => l2_one(tm, c.partition()),
        (LawId::L3, Adapted::Monoid(tm)) => l3(tm, options),
        (LawId::L4, Adapted::Monoid(tm)) => l4(tm),
        (LawId::L5, Adapted::Monoid(tm)) => l5(tm),
        (LawId::L6, Adapted::Monoid(tm)) => l6(tm, options),
        (LawId::L7, Adapted::Monoid(tm)) => l7(tm, options),
        (LawId::L8, Adapted::MonoidPair(a, b)) => l8(a, b),
        (LawId::L9, Adapted::SpacePair(a, b)) => l9(a, b),
        (LawId::L10, Adapted::Space(x)) => l10(x),
        (LawId::L11, Adapted::Space(x)) => l11(x),
        (LawId::L12, Adapted::Monoid(tm)) => l12(tm),
        (LawId::L13, Adapted::Monoid(tm)) => l13(tm),
        (LawId::L14, Adapted::SpaceAllPartitions(x)) => {
            for partition in Partition::all(x.points()) {
                if let Outcome::Fails(w) = l14_one(x, &partition)? {
                    return Ok(Outcome::Fails(w));
                }
            }
            Ok(Outcome::Holds(Some(
                "checked every partition of the carrier".to_string(),
            )))
        }
        (LawId::L14, Adapted::SpaceOnePartition(x, p)) => l14_one(x, p),
        (LawId::L15, Adapted::Monoid(tm)) => l15(tm),
        (LawId::L16, Adapted::Monoid(tm)) => l16(tm),
        _ => unreachable!("adapt produced a shape the law cannot consume"),
    }
}

/// When certification is on, a freshly built reflection arrow must also
/// pass the universal-property sweep; a failed sweep demotes the verdict
/// to `FAILS` with the sweep report as witness.
fn certified(
    arrow: ReflectionArrow,
    base_note: Option<String>,
    options: &LawOptions,
) -> Result<Outcome> {
    if !options.certify {
        return Ok(Outcome::Holds(base_note));
    }
    let report = arrow.certify_universal(options.certify_bound)?;
    if report.pass {
        let suffix = format!(
            "universal property certified against all targets on at most {} points",
            report.bound
        );
        let note = match base_note {
            Some(n) => format!("{n}; {suffix}"),
            None => suffix,
        };
        Ok(Outcome::Holds(Some(note)))
    } else {
        Ok(Outcome::Fails(json!({
            "certification": serde_json::to_value(&report).expect("reports serialize"),
        })))
    }
}

fn l1_one(tm: &TopMonoid, partition: &Partition) -> Result<Outcome> {
    let congruence = Congruence::new(tm.algebra(), partition.clone())?;
    let (target, map) = tm.quotient(&congruence)?;
    if map.profile().open {
        return Ok(Outcome::Holds(None));
    }
    // Exhibit an open set with a non-open image.
    let bad = tm
        .space()
        .opens()
        .iter()
        .find(|&&u| !target.space().is_open(map.image(u)))
        .copied()
        .expect("a non-open map has a non-open image of some open set");
    Ok(Outcome::Fails(json!({
        "instance": doc_from_monoid(tm),
        "congruence": partition.block_names(),
        "open_set": tm.space().set_names(bad),
        "image": target.space().set_names(map.image(bad)),
    })))
}

fn l2_one(tm: &TopMonoid, partition: &Partition) -> Result<Outcome> {
    let congruence = Congruence::new(tm.algebra(), partition.clone())?;
    let closed = tm.congruence_is_closed(partition)?;
    let (target, _) = tm.quotient(&congruence)?;
    let t2 = target.space().separation_profile().t2;
    if t2 == closed {
        Ok(Outcome::Holds(None))
    } else {
        Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "congruence": partition.block_names(),
            "quotient_t2": t2,
            "congruence_closed": closed,
        })))
    }
}

fn l3(tm: &TopMonoid, options: &LawOptions) -> Result<Outcome> {
    let fixpoint = tm.closed_congruence_closure(&[])?;
    let oracle = tm.least_closed_congruence_by_enumeration(&[])?;
    let (target, _) = tm.quotient(&fixpoint)?;
    let t2 = target.space().separation_profile().t2;
    if fixpoint.partition() != oracle.partition() || !t2 {
        return Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "fixpoint_blocks": fixpoint.partition().block_names(),
            "least_closed_blocks": oracle.partition().block_names(),
            "quotient_t2": t2,
        })));
    }
    let arrow = reflect_monoid(tm, SeparationAxiom::T2)?.into();
    certified(arrow, None, options)
}

fn l4(tm: &TopMonoid) -> Result<Outcome> {
    let retopologized =
        TopMonoid::assemble(tm.space().semiregularization(), tm.algebra().clone())?;
    if retopologized.profile().topological {
        Ok(Outcome::Holds(None))
    } else {
        Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "semiregularized": doc_from_monoid(&retopologized),
            "profile": retopologized.profile(),
        })))
    }
}

fn l5(tm: &TopMonoid) -> Result<Outcome> {
    let flags = tm.space().separation_profile();
    if flags.quasiregular {
        Ok(Outcome::Holds(None))
    } else {
        Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "separation": flags,
            "semiregularization": doc_from_space(&tm.space().semiregularization()),
        })))
    }
}

fn l6(tm: &TopMonoid, options: &LawOptions) -> Result<Outcome> {
    let reflection = reflect_monoid(tm, SeparationAxiom::T3)?;
    let expected = tm.space().semiregularization();
    let got_space = reflection.target().space().clone();
    let t3 = got_space.separation_profile().t3;
    if got_space != expected || !t3 {
        return Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "target": doc_from_monoid(reflection.target()),
            "semiregularization": doc_from_space(&expected),
            "target_t3": t3,
        })));
    }
    let arrow = ReflectionArrow::from(reflection);
    certified(arrow, None, options)
}

fn l7(tm: &TopMonoid, options: &LawOptions) -> Result<Outcome> {
    let regular = reflect_monoid(tm, SeparationAxiom::Regular)?;
    let t3 = reflect_monoid(tm, SeparationAxiom::T3)?;
    let (expected, _) = t0_monoid_quotient(t3.target())?;
    // Space-level cross-check: the same composite computed on bare spaces.
    let collapsed_sr = reflect_space(&tm.space().semiregularization(), SeparationAxiom::T0)?;
    let factors = regular.target() == &expected;
    let space_agrees = regular.target().space() == collapsed_sr.target();
    let is_regular = regular.target().space().separation_profile().regular;
    if !(factors && space_agrees && is_regular) {
        return Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "target": doc_from_monoid(regular.target()),
            "collapsed_t3_target": doc_from_monoid(&expected),
            "factors_through_t3": factors,
            "space_composite_agrees": space_agrees,
            "target_regular": is_regular,
        })));
    }
    let arrow = ReflectionArrow::from(regular);
    certified(arrow, None, options)
}

fn l8(a: &TopMonoid, b: &TopMonoid) -> Result<Outcome> {
    let product = a.product(b)?;
    let mut axioms = vec![
        SeparationAxiom::T0,
        SeparationAxiom::T1,
        SeparationAxiom::T2,
    ];
    // The stronger reflections ask for joint continuity, so compare them
    // only when both factors provide it.
    if a.profile().topological && b.profile().topological {
        axioms.push(SeparationAxiom::T3);
        axioms.push(SeparationAxiom::Regular);
    }
    let checked = axioms
        .iter()
        .map(|ax| ax.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    for axiom in axioms {
        let lhs = reflect_monoid(&product, axiom)?.target().clone();
        let ra = reflect_monoid(a, axiom)?;
        let rb = reflect_monoid(b, axiom)?;
        let rhs = ra.target().product(rb.target())?;
        if lhs.monoid_iso(&rhs).is_none() {
            return Ok(Outcome::Fails(json!({
                "instances": [doc_from_monoid(a), doc_from_monoid(b)],
                "axiom": axiom,
                "reflected_product": doc_from_monoid(&lhs),
                "product_of_reflections": doc_from_monoid(&rhs),
            })));
        }
    }
    Ok(Outcome::Holds(Some(format!("compared axioms: {checked}"))))
}

fn l9(a: &FiniteSpace, b: &FiniteSpace) -> Result<Outcome> {
    let lhs = a.product(b)?.semiregularization();
    let rhs = a.semiregularization().product(&b.semiregularization())?;
    if lhs == rhs {
        Ok(Outcome::Holds(None))
    } else {
        Ok(Outcome::Fails(json!({
            "instances": [doc_from_space(a), doc_from_space(b)],
            "semiregularized_product": doc_from_space(&lhs),
            "product_of_semiregularizations": doc_from_space(&rhs),
        })))
    }
}

fn l10(x: &FiniteSpace) -> Result<Outcome> {
    let reflection = reflect_space(x, SeparationAxiom::T0)?;
    let before = x.cellularity();
    let after = reflection.target().cellularity();
    if before == after {
        Ok(Outcome::Holds(None))
    } else {
        Ok(Outcome::Fails(json!({
            "instance": doc_from_space(x),
            "cellularity": before,
            "t0_target": doc_from_space(reflection.target()),
            "t0_cellularity": after,
        })))
    }
}

fn l11(x: &FiniteSpace) -> Result<Outcome> {
    let sr = x.semiregularization();
    let before = x.cellularity();
    let after = sr.cellularity();
    if before == after {
        Ok(Outcome::Holds(None))
    } else {
        Ok(Outcome::Fails(json!({
            "instance": doc_from_space(x),
            "cellularity": before,
            "semiregularization": doc_from_space(&sr),
            "semiregularized_cellularity": after,
        })))
    }
}

fn l12(tm: &TopMonoid) -> Result<Outcome> {
    let base = tm.space().cellularity();
    for axiom in SeparationAxiom::ALL {
        let reflection = reflect_monoid(tm, axiom)?;
        let target = reflection.target().space().cellularity();
        if target != base {
            return Ok(Outcome::Fails(json!({
                "instance": doc_from_monoid(tm),
                "cellularity": base,
                "axiom": axiom,
                "target": doc_from_monoid(reflection.target()),
                "target_cellularity": target,
            })));
        }
    }
    Ok(Outcome::Holds(Some(
        "at this scale the cellular bound is checked as exact equality of the maximal disjoint-family size".to_string(),
    )))
}

fn l13(tm: &TopMonoid) -> Result<Outcome> {
    let retopologized =
        TopMonoid::assemble(tm.space().semiregularization(), tm.algebra().clone())?;
    let (target, _) = t0_monoid_quotient(&retopologized)?;
    let algebra = target.algebra();
    if algebra.is_cancellative() {
        return Ok(Outcome::Holds(None));
    }
    // Exhibit a cancellation failure in the collapsed algebra.
    let n = algebra.points().len();
    let mut violation = None;
    'outer: for a in 0..n {
        for y in 0..n {
            for z in 0..n {
                if y != z
                    && (algebra.mul(a, y) == algebra.mul(a, z)
                        || algebra.mul(y, a) == algebra.mul(z, a))
                {
                    violation = Some((a, y, z));
                    break 'outer;
                }
            }
        }
    }
    let (a, y, z) = violation.expect("a non-cancellative table has a violating triple");
    Ok(Outcome::Fails(json!({
        "instance": doc_from_monoid(tm),
        "target": doc_from_monoid(&target),
        "violation": {
            "a": algebra.points()[a],
            "y": algebra.points()[y],
            "z": algebra.points()[z],
        },
    })))
}

fn l14_one(x: &FiniteSpace, partition: &Partition) -> Result<Outcome> {
    let (quotient, map) = x.quotient(partition)?;
    let t2 = quotient.separation_profile().t2;
    let rows = partition.pair_rows();
    let closed = x.pair_closure(&rows) == rows;
    let open = map.profile().open;
    let direction = if t2 && !closed {
        Some("a t2 quotient must come from a closed relation")
    } else if open && closed && !t2 {
        Some("a closed relation with an open projection must give a t2 quotient")
    } else {
        None
    };
    match direction {
        None => Ok(Outcome::Holds(None)),
        Some(explanation) => Ok(Outcome::Fails(json!({
            "instance": doc_from_space(x),
            "blocks": partition.block_names(),
            "quotient_t2": t2,
            "relation_closed": closed,
            "projection_open": open,
            "direction": explanation,
        }))),
    }
}

fn l15(tm: &TopMonoid) -> Result<Outcome> {
    let retopologized = tm.gamma_retopologize()?;
    let p = retopologized.profile();
    let keeps_joint = !tm.profile().topological || p.topological;
    if p.open_shifts && p.semitopological && keeps_joint {
        Ok(Outcome::Holds(None))
    } else {
        Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "retopologized": doc_from_monoid(&retopologized),
            "profile": p,
            "source_profile": tm.profile(),
        })))
    }
}

fn l16(tm: &TopMonoid) -> Result<Outcome> {
    let reflection = reflect_monoid(tm, SeparationAxiom::Regular)?;
    let target = reflection.target();
    let algebra = target.algebra();
    if !algebra.is_group() {
        return Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "target": doc_from_monoid(target),
            "target_is_group": false,
        })));
    }
    let identity = algebra.identity().expect("groups have an identity");
    let n = algebra.points().len();
    let inverse: Vec<usize> = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| algebra.mul(x, y) == identity && algebra.mul(y, x) == identity)
                .expect("groups have two-sided inverses")
        })
        .collect();
    let inversion = SpaceMap::new(
        target.space().clone(),
        target.space().clone(),
        inverse.clone(),
    )?;
    let continuous = inversion.is_continuous();
    let topological = target.profile().topological;
    if continuous && topological {
        Ok(Outcome::Holds(None))
    } else {
        Ok(Outcome::Fails(json!({
            "instance": doc_from_monoid(tm),
            "target": doc_from_monoid(target),
            "target_is_group": true,
            "target_topological": topological,
            "inversion_continuous": continuous,
            "inversion": inverse
                .iter()
                .map(|&i| algebra.points()[i].clone())
                .collect::<Vec<_>>(),
        })))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::CayleyTable;

    fn named(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn m0_table() -> CayleyTable {
        CayleyTable::make_table(
            named(&["e", "z"]),
            &[named(&["e", "z"]), named(&["z", "z"])],
        )
        .unwrap()
    }

    fn m0_z_open() -> TopMonoid {
        let space = FiniteSpace::make_space(
            named(&["e", "z"]),
            &[vec![], named(&["z"]), named(&["e", "z"])],
        )
        .unwrap();
        TopMonoid::assemble(space, m0_table()).unwrap()
    }

    fn m0_e_open() -> TopMonoid {
        let space = FiniteSpace::make_space(
            named(&["e", "z"]),
            &[vec![], named(&["e"]), named(&["e", "z"])],
        )
        .unwrap();
        TopMonoid::assemble(space, m0_table()).unwrap()
    }

    fn z2_discrete() -> TopMonoid {
        let space = FiniteSpace::make_space(
            named(&["0", "1"]),
            &[vec![], named(&["0"]), named(&["1"]), named(&["0", "1"])],
        )
        .unwrap();
        let table = CayleyTable::make_table(
            named(&["0", "1"]),
            &[named(&["0", "1"]), named(&["1", "0"])],
        )
        .unwrap();
        TopMonoid::assemble(space, table).unwrap()
    }

    fn sierpinski() -> FiniteSpace {
        FiniteSpace::make_space(named(&["a", "b"]), &[vec![], named(&["b"]), named(&["a", "b"])])
            .unwrap()
    }

    #[test]
    fn law_id_parsing_and_display() {
        assert_eq!("L7".parse::<LawId>().unwrap(), LawId::L7);
        assert_eq!("l12".parse::<LawId>().unwrap(), LawId::L12);
        assert_eq!(LawId::L16.to_string(), "L16");
        assert!(matches!(
            "L17".parse::<LawId>(),
            Err(Error::UnknownLaw(s)) if s == "L17"
        ));
    }

    #[test]
    fn verdict_serialization() {
        assert_eq!(
            serde_json::to_string(&Verdict::HypothesisNotMet).unwrap(),
            "\"HYPOTHESIS_NOT_MET\""
        );
        assert_eq!(serde_json::to_string(&Verdict::Holds).unwrap(), "\"HOLDS\"");
        assert_eq!(serde_json::to_string(&Verdict::Fails).unwrap(), "\"FAILS\"");
    }

    #[test]
    fn l3_holds_on_absorbing_monoid() {
        let tm = m0_z_open();
        let report = run_law(&LawInstance::Monoid(&tm), LawId::L3, &LawOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.witness.is_none());
        assert!(!report.instance_digest.is_empty());
    }

    #[test]
    fn l10_holds_on_sierpinski() {
        let space = sierpinski();
        let report =
            run_law(&LawInstance::Space(&space), LawId::L10, &LawOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn l1_hypothesis_gate_names_the_missing_flag() {
        let tm = m0_e_open();
        let report = run_law(&LawInstance::Monoid(&tm), LawId::L1, &LawOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::HypothesisNotMet);
        assert_eq!(
            report.failed_hypothesis.as_deref(),
            Some("one_sided_open_shifts")
        );
        assert!(report.witness.is_none());
    }

    #[test]
    fn discrete_group_satisfies_every_law() {
        let tm = z2_discrete();
        let reports = run_suite(
            &LawInstance::Monoid(&tm),
            &Selection::All,
            &LawOptions::default(),
        )
        .unwrap();
        assert_eq!(reports.len(), 16);
        for report in &reports {
            assert_eq!(
                report.verdict,
                Verdict::Holds,
                "law {} did not hold",
                report.law_id
            );
        }
    }

    #[test]
    fn reflection_chain_laws_hold_on_absorbing_monoid() {
        let tm = m0_z_open();
        let reports = run_suite(
            &LawInstance::Monoid(&tm),
            &Selection::Ids(vec![LawId::L3, LawId::L5, LawId::L6, LawId::L7]),
            &LawOptions::default(),
        )
        .unwrap();
        assert_eq!(reports.len(), 4);
        for report in &reports {
            assert_eq!(report.verdict, Verdict::Holds, "law {}", report.law_id);
        }
    }

    #[test]
    fn certification_option_annotates_the_report() {
        let tm = m0_z_open();
        let options = LawOptions {
            certify: true,
            certify_bound: 2,
        };
        let report = run_law(&LawInstance::Monoid(&tm), LawId::L6, &options).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.note.unwrap().contains("certified"));
    }

    #[test]
    fn space_instances_reject_monoid_laws() {
        let space = sierpinski();
        let err = run_suite(
            &LawInstance::Space(&space),
            &Selection::Ids(vec![LawId::L1]),
            &LawOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InstanceKindMismatch { .. }));
    }

    #[test]
    fn suite_on_a_space_covers_the_space_laws() {
        let space = sierpinski();
        let reports = run_suite(
            &LawInstance::Space(&space),
            &Selection::All,
            &LawOptions::default(),
        )
        .unwrap();
        let ids: Vec<LawId> = reports.iter().map(|r| r.law_id).collect();
        assert_eq!(ids, vec![LawId::L9, LawId::L10, LawId::L11, LawId::L14]);
        for report in &reports {
            assert_eq!(report.verdict, Verdict::Holds, "law {}", report.law_id);
        }
    }

    #[test]
    fn congruence_instances_run_the_quotient_laws() {
        let tm = m0_z_open();
        let total = Partition::total(named(&["e", "z"]));
        let congruence = Congruence::new(tm.algebra(), total).unwrap();
        let instance = LawInstance::MonoidCongruence(&tm, &congruence);
        for law in [LawId::L1, LawId::L2, LawId::L14] {
            let report = run_law(&instance, law, &LawOptions::default()).unwrap();
            assert_eq!(report.verdict, Verdict::Holds, "law {law}");
        }
        let suite = run_suite(&instance, &Selection::All, &LawOptions::default()).unwrap();
        let ids: Vec<LawId> = suite.iter().map(|r| r.law_id).collect();
        assert_eq!(ids, vec![LawId::L1, LawId::L2, LawId::L14]);
    }

    #[test]
    fn digests_distinguish_instances_and_bundles() {
        let tm = m0_z_open();
        let other = m0_e_open();
        let d1 = digest_of(&LawInstance::Monoid(&tm));
        let d2 = digest_of(&LawInstance::Monoid(&other));
        assert_ne!(d1, d2);
        let total = Partition::total(named(&["e", "z"]));
        let congruence = Congruence::new(tm.algebra(), total).unwrap();
        let d3 = digest_of(&LawInstance::MonoidCongruence(&tm, &congruence));
        assert_ne!(d1, d3);
        let d4 = digest_of(&LawInstance::MonoidPair(&tm, &other));
        let d5 = digest_of(&LawInstance::MonoidPair(&other, &tm));
        assert_ne!(d4, d5);
    }
}
