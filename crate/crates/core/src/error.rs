//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while building or transforming instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),

    #[error("unknown point `{0}`")]
    ForeignPoint(String),

    #[error("too many points: {n} exceeds the supported maximum of {max}")]
    TooManyPoints { n: usize, max: usize },

    #[error("topology axiom violation: {0}")]
    TopologyAxiomViolation(String),

    #[error(
        "associativity violation at ({x}, {y}, {z}): ({x}·{y})·{z} = {left} but {x}·({y}·{z}) = {right}"
    )]
    AssociativityViolation {
        x: String,
        y: String,
        z: String,
        left: String,
        right: String,
    },

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("not a congruence: {0}")]
    NotACongruence(String),

    #[error("the table has no identity element")]
    NoIdentity,

    #[error("axiom {axiom} is not supported for {context}")]
    UnsupportedAxiom { axiom: String, context: String },

    #[error("hypothesis not met: {flag}")]
    HypothesisNotMet { flag: String },

    #[error("map is not continuous")]
    NotContinuous,

    #[error("not a valid reflection arrow: {0}")]
    NotAReflection(String),

    #[error("size {size} is out of the supported range {min}..={max}")]
    SizeOutOfRange { size: usize, min: usize, max: usize },

    #[error("unknown law `{0}`")]
    UnknownLaw(String),

    #[error("law {law} does not apply to {got} instances")]
    InstanceKindMismatch { law: String, got: String },

    #[error("instance document invalid: {0}")]
    Document(String),

    #[error("invalid search specification: {0}")]
    InvalidSearchSpec(String),

    /// A structural fact the underlying theory guarantees failed to hold.
    /// Reaching this variant means an implementation bug (or a genuine
    /// falsification of a theorem the code relies on), never user error.
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
