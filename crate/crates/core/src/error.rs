use thiserror::Error;

use crate::linalg::WireWord;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("operator is not normal (commutator deviation {deviation:e})")]
    NotNormal { deviation: f64 },

    #[error("monoid is not dagger-Frobenius: {0}")]
    NotFrobenius(String),

    #[error("monoid is not commutative (deviation {deviation:e})")]
    NotCommutative { deviation: f64 },

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("not a C*-algebra: trace form has eigenvalue {min_eigenvalue:e} (largest {max_eigenvalue:e})")]
    NotCStar {
        min_eigenvalue: f64,
        max_eigenvalue: f64,
    },

    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(f64),

    #[error("could not split the center after {attempts} attempts (smallest gap {gap:e})")]
    DegenerateSplit { attempts: usize, gap: f64 },

    #[error("not a monoid homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("representation does not permute spectrum points: {0}")]
    NotPermutation(String),

    #[error("invalid groupoid data: {0}")]
    InvalidGroupoid(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("type mismatch: {left} does not match {right}")]
    TypeMismatch { left: WireWord, right: WireWord },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("signature mismatch: {lhs} vs {rhs}")]
    SignatureMismatch { lhs: String, rhs: String },

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn shape(expected: impl ToString, found: impl ToString) -> Self {
        Error::ShapeMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
