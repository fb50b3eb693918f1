//! Finite topological spaces and finite monoids carrying topologies:
//! separation properties, reflections onto them, congruence quotients,
//! semiregularization, cellularity, exhaustive enumeration, and a suite of
//! executable laws tying those pieces together.
//!
//! Everything is exact and finite. Topologies are stored as full open-set
//! lattices over at most [`MAX_POINTS`] named points, with the minimal open
//! neighborhood of each point precomputed; most algorithms run on those
//! minimal neighborhoods rather than on the lattice.

pub mod enumerator;
pub mod error;
pub mod finspace;
pub mod instance;
pub mod laws;
pub mod partition;
pub mod pointset;
pub mod reflections;
pub mod semigroup;
pub mod topmonoid;

pub use enumerator::{
    enum_cancellative_tables, enum_spaces, enum_tables, enum_topmonoids, random_space, search,
    search_size_cap, ProfileFilter, SearchOutcome, SearchSpec,
};
pub use error::{Error, Result};
pub use finspace::{AxiomFlags, FiniteSpace, MapFlags, SpaceMap};
pub use laws::{run_law, run_suite, LawId, LawInstance, LawOptions, LawReport, Selection, Verdict};
pub use partition::Partition;
pub use pointset::{PointSet, EMPTY, MAX_POINTS};
pub use reflections::{
    certify_universal, functor_map, reflect_monoid, reflect_space, CertificationReport,
    MonoidReflection, ReflectionArrow, SeparationAxiom, SpaceReflection,
};
pub use semigroup::{CayleyTable, Congruence};
pub use topmonoid::{Profile, TopMonoid};
