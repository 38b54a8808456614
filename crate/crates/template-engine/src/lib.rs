//! Frame templates over finite fields and Y-templates over any supported
//! field: respecting and conforming matrices, universal matrices, the
//! reduction and template-minor operations, and the Y-template transforms
//! (lift, complete, row normalization, determined templates, contractible
//! submatrices, extremal counts).

mod contractible;
mod frame;
mod group;
mod ops;
mod ytemplate;

pub use contractible::{find_contractible, is_semi_parallel_extension, Contractible};
pub use frame::{conforming_matrices, respects_check, ConformOptions, ConformingMatrix, ConformingStream, FrameTemplate};
pub use group::{AddGroup, Gamma};
pub use ops::{phi_c, phi_cxk, phi_n, phi_x, phi_y0, MinorOp, Reduction, RowOp, StandardForm};
pub use ytemplate::{
    determined_template, epsilon_formula, strip_row, LabelMap, YTemplate, YTemplateStats,
};

use exact_algebra::AlgebraError;
use matroid_core::MatroidError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TemplateError {
    #[error("frame templates need a finite field")]
    NotFinite,
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid template: {0}")]
    Invalid(String),
    #[error("operation ({op}) does not apply: {reason}")]
    Precondition { op: u8, reason: String },
    #[error("rank {r} is below {min}")]
    RankTooSmall { r: usize, min: usize },
    #[error("rows of P0 do not sum to zero")]
    RowSum,
    #[error("bad template json: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

#[cfg(test)]
mod tests;
