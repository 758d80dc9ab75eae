//! Finite-rank lexicographically ordered abelian groups.
//!
//! A group is described by a [`GroupSignature`], a list of ℤ or ℚ
//! components with component 0 the most significant. Elements are
//! [`LexVector`]s with exact coordinates.

mod affine;
mod automorphism;
mod embedding;
mod json;
mod scalar;
mod signature;
mod vector;

pub use affine::AffineMap;
pub use automorphism::{is_order_preserving, OAutomorphism};
pub use embedding::{coordinate_embedding, Embedding};
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use signature::{ComponentKind, GroupSignature};
pub use vector::{ConvexClass, LexVector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OGroupError {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("coordinate {index} must be an integer, got {value}")]
    NonIntegral { index: usize, value: String },
    #[error("a group signature needs at least one component")]
    EmptySignature,
    #[error("matrix is not an order-preserving automorphism: {0}")]
    NotOrderPreserving(String),
    #[error("cannot embed {source_kind} component into {target_kind} component at index {index}")]
    IncompatibleKinds {
        index: usize,
        source_kind: String,
        target_kind: String,
    },
    #[error("source of rank {source_rank} does not fit at position {position} of rank {target_rank}")]
    DoesNotFit {
        source_rank: usize,
        target_rank: usize,
        position: usize,
    },
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("unknown component kind {0:?} (expected \"Z\" or \"Q\")")]
    BadKind(String),
}

pub(crate) fn mismatch(a: &GroupSignature, b: &GroupSignature) -> OGroupError {
    OGroupError::SignatureMismatch {
        left: a.to_string(),
        right: b.to_string(),
    }
}
