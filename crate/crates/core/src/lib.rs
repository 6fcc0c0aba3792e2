//! Graded polynomial rings, ideals and Chow-ring presentations over Z and Q.
//!
//! The crate is split into three layers:
//!
//! * [`polyring`]: exact polynomials with weighted gradings, parsing and substitution.
//! * [`groebner`]: strong Groebner bases over Z (reduced bases over Q), ideal predicates,
//!   elimination, intersections, kernels, and graded pieces of quotients via Smith normal form.
//! * [`chowcalc`]: named graded presentations, validated ring maps, the patching solver,
//!   excision, pushforwards and fundamental classes of torus-invariant subspaces.

pub mod chowcalc;
pub mod error;
pub mod groebner;
pub mod polyring;

pub use error::{Error, Result};
