//! Partial fields given by generators in a quotient of Q[x1..xn], membership
//! certificates, P-matrix checks and homomorphisms into finite fields.

mod check;
mod hom;
mod member;
mod minors;
mod presentation;

pub use check::{check_partial_field, pf_is_p_matrix, CheckOutcome, PWitness};
pub use hom::{apply_hom, eval_frac, eval_poly, pf_hom_to_field, MAX_ASSIGNMENTS};
pub use member::{Membership, MembershipOracle};
pub use minors::{FracMatrix, MinorTable};
pub use presentation::{pf_catalog, PartialField, Presentation, CATALOG_NAMES};

use exact_algebra::AlgebraError;
use matroid_core::MatroidError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PfError {
    #[error("unknown partial field `{0}`")]
    UnknownPartialField(String),
    #[error("bad presentation: {0}")]
    Presentation(String),
    #[error("inconsistent representation: {0}")]
    Inconsistent(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("assignment space {0} too large")]
    SearchTooLarge(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}
