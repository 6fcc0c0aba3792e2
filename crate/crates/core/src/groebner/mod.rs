//! Gröbner bases over Z and Q, ideal constructions, and graded pieces of quotients.

mod buchberger;
mod graded;
mod ideal;
mod ops;
mod snf;

pub use buchberger::{
    groebner_basis, groebner_basis_with_budget, normal_form, GroebnerBasis, Strength, DEFAULT_STEP_BUDGET,
};
pub use graded::{degree_part, graded_component, GradedPiece};
pub use ideal::IdealPresentation;
pub use ops::{eliminate, ideal_contains, ideal_equal, ideal_quotient_element, intersect, kernel_of_ringmap};
pub use snf::{invariant_factors, smith_normal_form, IntegerMatrix, SmithForm};

pub(crate) use ops::remap;
