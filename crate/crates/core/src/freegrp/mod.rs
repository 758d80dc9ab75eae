//! Word calculus in finitely generated free groups.

mod alphabet;
mod cyclic;
mod parse;
mod word;

pub use alphabet::Alphabet;
pub use cyclic::{
    conjugate_to_inverse, cyclic_membership, cyclic_reduce, is_conjugate, is_proper_power,
    least_rotation, CyclicWord,
};
pub use parse::{format_word, parse_word, WordParseError};
pub use word::{abelianization, commutator, commutator_power, Letter, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("the trivial word has no root")]
    TrivialWord,
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("alphabet must have at least one generator")]
    EmptyAlphabet,
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("invalid generator name {0:?}")]
    BadName(String),
}
