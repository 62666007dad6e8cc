//! Finite matrix groups: closure, relations, fixed loci and the lifting obstruction.

mod fixed;
mod group;
mod relations;

pub use fixed::{projective_fixed_locus, FixedComponent, FixedLocus};
pub use group::{
    contragredient, projective_closure, tensor_rep, Generator, GroupElement, MatrixGroup,
    ProjectiveElement, Word,
};
pub use relations::{
    scalar_lift_search, verify_relations, LiftOutcome, Relation, RelationMode, RelationReport,
    RelationTarget, Rescaling, LIFT_SEARCH_LIMIT,
};
