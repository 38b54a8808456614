//! Universal partial fields of GF(4)-represented matroids and
//! representability over finite fields and the rationals.

mod charset;
mod identify;
mod upf;
mod varrep;

pub use charset::{
    characteristic_set, entry_system, is_representable_over, Answer, CharacteristicReport, EntrySystem, DEFAULT_PRIMES,
};
pub use identify::{compose, find_homomorphism, identify_partial_field, Identification};
pub use upf::{universal_partial_field, zero_determinant_ideal, UpfOptions, UpfResult, DEFAULT_ROUND_CAP};
pub use varrep::{
    forest_representation, template_representation, variable_representation, ForcedEntry, ForcedReason, RepKind,
    VariableRepresentation,
};

use exact_algebra::AlgebraError;
use matroid_core::MatroidError;
use partial_field::PfError;
use poly_groebner::GbError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UpfError {
    #[error("matrix is not in standard form: {0}")]
    NotStandardForm(String),
    #[error("template matrices must be over GF(4)")]
    NotGf4,
    #[error("zero pattern does not match the matroid at {0}")]
    PatternMismatch(String),
    #[error("{0} variables exceed the polynomial ring limit")]
    TooManyVariables(usize),
    #[error("no generator list verified after {0} rounds")]
    RoundCap(usize),
    #[error("the zero-determinant ideal is the unit ideal")]
    UnitIdeal,
    #[error("unsupported field or characteristic {0}")]
    Unsupported(u32),
    #[error(transparent)]
    Budget(#[from] GbError),
    #[error(transparent)]
    PartialField(#[from] PfError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

#[cfg(test)]
mod tests;
