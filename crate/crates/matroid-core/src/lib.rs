//! Matroids carried by an exact representation matrix.
//!
//! Ground sets are limited to 64 elements so that subsets fit in a `u64`.

mod matroid;
mod search;

pub use matroid::{combinations, RepresentedMatroid};
pub use search::{Budget, MinorResult, MinorWitness};

use exact_algebra::AlgebraError;

/// Bit set over ground-set indices.
pub type ElementSet = u64;

pub const MAX_GROUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("ground set of {0} elements exceeds the 64-element limit")]
    GroundTooLarge(usize),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("{0} is not a basis")]
    NotABasis(String),
    #[error("element `{0}` lies in the basis")]
    ElementInBasis(String),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Indices of the set bits, ascending.
pub fn members(mut s: ElementSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.count_ones() as usize);
    while s != 0 {
        out.push(s.trailing_zeros() as usize);
        s &= s - 1;
    }
    out
}

pub fn mask_of(idx: &[usize]) -> ElementSet {
    idx.iter().fold(0, |m, &i| m | (1u64 << i))
}
