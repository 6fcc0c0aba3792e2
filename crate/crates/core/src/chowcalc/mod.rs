//! Graded quotient presentations, ring maps between them, and the operations used to
//! assemble Chow rings from strata: patching, excision, pushforwards.

mod patching;
mod presentation;
mod pushforward;

pub use patching::{patching_relations, PatchingProblem};
pub use presentation::{
    class_consistency, excise, nonzerodivisor, projective_bundle_presentation, validate_ringmap, weight_class,
    ChowPresentation, ConsistencyReport, MapValidation, RestrictionCheck, RingMap,
};
pub use pushforward::{pushforward_apply, PushforwardOperator, QuadraticTransfer, SurjectivePullback};
