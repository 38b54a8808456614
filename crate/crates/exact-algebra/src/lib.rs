//! Exact arithmetic over GF(q) for q in {2,3,4,5,7,8,9,11,13} and over the
//! rationals, plus labeled dense matrices.
//!
//! GF(4) is built on `a^2 = a + 1` and prints as `0 1 a a^2`.

mod field;
mod matrix;

pub use field::{FieldSpec, Scalar, SUPPORTED_ORDERS};
pub use matrix::{default_col_labels, default_row_labels, ExactMatrix, Rref};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unsupported field `{0}`")]
    UnsupportedField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("zero pivot at ({0}, {1})")]
    ZeroPivot(String, String),
    #[error("matrix not in standard form: {0}")]
    NotStandardForm(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for GF(4).
pub const GF4: FieldSpec = FieldSpec::Gf(4);
/// Shorthand for the rationals.
pub const QQ: FieldSpec = FieldSpec::Rational;

#[cfg(test)]
mod tests;
